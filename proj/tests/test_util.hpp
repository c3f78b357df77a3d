// Shared test helpers. The reference routines here are deliberately
// independent of the library's comparison path: keys are folded into
// 128-bit integers and sorted with std::stable_sort over indices.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <random>
#include <vector>

#include "raduls/record_array.hpp"

namespace test_util {

using u128 = unsigned __int128;

// Arbitrary-precision numeric value of a big-endian key (up to 16 bytes).
inline u128 key_value(const uint8_t* rec, const raduls::RecordLayout& l) {
    u128 v = 0;
    for (uint32_t i = 0; i < l.key_size; ++i) v = (v << 8) | rec[i];
    return v;
}

// Random records; payloads carry the record index so stability is visible.
// key_universe 0 means fully random key bytes, otherwise keys are drawn
// from that many distinct values (duplicates guaranteed once n > universe).
inline raduls::RecordArray make_records(const raduls::RecordLayout& l, size_t n, uint64_t seed,
                                        uint64_t key_universe = 0) {
    raduls::RecordArray a(l, n);
    std::mt19937_64 eng(seed);
    const uint32_t key_words = l.key_size / 8;
    const uint32_t record_words = l.record_size / 8;
    for (size_t i = 0; i < n; ++i) {
        uint8_t* rec = a.record(i);
        for (uint32_t w = 0; w < key_words; ++w) {
            uint64_t v = eng();
            if (key_universe) v %= key_universe;
            raduls::store_be64(rec + 8 * w, v);
        }
        for (uint32_t w = key_words; w < record_words; ++w)
            raduls::store_be64(rec + 8 * w, w == key_words ? uint64_t(i) : eng());
    }
    return a;
}

// Stable reference sort by numeric key value.
inline raduls::RecordArray ref_sorted(const raduls::RecordArray& in) {
    const auto& l = in.layout();
    std::vector<size_t> idx(in.size());
    std::iota(idx.begin(), idx.end(), size_t(0));
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return key_value(in.record(a), l) < key_value(in.record(b), l);
    });
    raduls::RecordArray out(l, in.size());
    for (size_t i = 0; i < in.size(); ++i)
        std::memcpy(out.record(i), in.record(idx[i]), l.record_size);
    return out;
}

inline bool bytes_equal(const raduls::RecordArray& a, const raduls::RecordArray& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.byte_size()) == 0;
}

inline std::vector<u128> key_sequence(const raduls::RecordArray& a) {
    std::vector<u128> keys(a.size());
    for (size_t i = 0; i < a.size(); ++i) keys[i] = key_value(a.record(i), a.layout());
    return keys;
}

inline const std::vector<raduls::RecordLayout>& all_layouts() {
    static const std::vector<raduls::RecordLayout> layouts = {
        {8, 8}, {16, 8}, {16, 16}, {24, 8}, {24, 16}, {32, 8}, {32, 16},
    };
    return layouts;
}

}  // namespace test_util
