// Result checkers: sortedness scan, order-independent multiset digest and
// the trusted comparison-sort oracle.
#pragma once

#include <cstdint>
#include <optional>

#include "raduls/layout.hpp"
#include "raduls/record_array.hpp"

namespace raduls {

struct SortedCheck {
    bool ok = true;
    size_t first_violation = 0;  // index i with key(a[i]) > key(a[i+1]); valid when !ok
};

SortedCheck check_sorted(const uint8_t* base, size_t n, const RecordLayout& layout);

inline SortedCheck check_sorted(const RecordArray& a) {
    return check_sorted(a.data(), a.size(), a.layout());
}

// Order-independent 128-bit digest: the sum (mod 2^128) of one 128-bit hash
// per record. Two arrays holding the same record multiset digest equally;
// for distinct multisets of up to 2^32 records a collision needs a 2^-64
// coincidence in the truncated sum, so digest equality is a sound
// permutation check for every practical input.
struct Digest128 {
    uint64_t lo = 0;
    uint64_t hi = 0;
    bool operator==(const Digest128&) const = default;
};

Digest128 array_digest(const uint8_t* base, size_t n, const RecordLayout& layout);

inline Digest128 array_digest(const RecordArray& a) {
    return array_digest(a.data(), a.size(), a.layout());
}

inline bool check_permutation(const Digest128& before, const uint8_t* base, size_t n,
                              const RecordLayout& layout) {
    return array_digest(base, n, layout) == before;
}

// Reference stable comparison sort (std::stable_sort over whole records,
// ordered by key). Ground truth for tests and the CLI's full verification.
void oracle_sort(uint8_t* base, size_t n, const RecordLayout& layout);

inline void oracle_sort(RecordArray& a) { oracle_sort(a.data(), a.size(), a.layout()); }

struct VerifyReport {
    bool sorted_ok = true;
    bool multiset_ok = true;
    std::optional<bool> stable_ok;        // only set when stability was checked
    std::optional<size_t> mismatch_index; // set iff some check failed
};

// Assembles a report honoring the invariant that mismatch_index is present
// exactly when a check failed. A digest mismatch has no location; it is
// reported as index n.
VerifyReport build_report(const SortedCheck& sorted, bool multiset_ok,
                          std::optional<std::pair<bool, size_t>> stable, size_t n);

}  // namespace raduls
