#include "raduls/verify.hpp"

#include <algorithm>
#include <cstring>

#include "raduls/detail/dispatch.hpp"
#include "raduls/layout.hpp"

namespace raduls {

namespace {

inline uint64_t load_le64(const uint8_t* p) {
    uint64_t v;
    std::memcpy(&v, p, sizeof v);
    return v;
}

inline uint64_t hash_mix(uint64_t x) {
    x = (x ^ (x >> 33)) * 0xff51afd7ed558ccdULL;
    x = (x ^ (x >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    return x ^ (x >> 33);
}

}  // namespace

SortedCheck check_sorted(const uint8_t* base, size_t n, const RecordLayout& layout) {
    return detail::dispatch_layout(layout, [&](auto rb, auto kb) -> SortedCheck {
        constexpr size_t RB = rb();
        constexpr size_t KB = kb();
        for (size_t i = 0; i + 1 < n; ++i)
            if (key_less<KB>(base + (i + 1) * RB, base + i * RB)) return {false, i};
        return {true, 0};
    });
}

Digest128 array_digest(const uint8_t* base, size_t n, const RecordLayout& layout) {
    const uint32_t words = layout.record_size / 8;
    unsigned __int128 acc = 0;
    for (size_t i = 0; i < n; ++i) {
        const uint8_t* rec = base + i * layout.record_size;
        uint64_t h = 0x8824a3d6f1e2c4b9ULL;
        for (uint32_t w = 0; w < words; ++w)
            h = hash_mix(h ^ (load_le64(rec + 8 * w) * 0x9ddfea08eb382d69ULL));
        const uint64_t lo = hash_mix(h ^ 0xc3a5c85c97cb3127ULL);
        const uint64_t hi = hash_mix(h ^ 0xb492b66fbe98f273ULL);
        acc += ((unsigned __int128)hi << 64) | lo;
    }
    return {uint64_t(acc), uint64_t(acc >> 64)};
}

void oracle_sort(uint8_t* base, size_t n, const RecordLayout& layout) {
    detail::dispatch_layout(layout, [&](auto rb, auto kb) {
        constexpr size_t RB = rb();
        constexpr size_t KB = kb();
        struct Rec {
            uint8_t b[RB];
        };
        static_assert(sizeof(Rec) == RB && alignof(Rec) == 1);
        Rec* records = reinterpret_cast<Rec*>(base);
        std::stable_sort(records, records + n,
                         [](const Rec& a, const Rec& b) { return key_less<KB>(a.b, b.b); });
    });
}

VerifyReport build_report(const SortedCheck& sorted, bool multiset_ok,
                          std::optional<std::pair<bool, size_t>> stable, size_t n) {
    VerifyReport r;
    r.sorted_ok = sorted.ok;
    r.multiset_ok = multiset_ok;
    if (stable) r.stable_ok = stable->first;
    if (!r.sorted_ok)
        r.mismatch_index = sorted.first_violation;
    else if (stable && !stable->first)
        r.mismatch_index = stable->second;
    else if (!multiset_ok)
        r.mismatch_index = n;
    return r;
}

}  // namespace raduls
