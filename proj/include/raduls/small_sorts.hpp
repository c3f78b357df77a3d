// Comparison sorters for tiny bins and the policy that picks between them.
// All of them order whole records by key; payload bytes ride along.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstring>

#include "raduls/layout.hpp"

namespace raduls {

struct TinyPolicy {
    size_t tiny_threshold = 384;         // bins below this go to a comparison sort
    size_t insertion_threshold = 32;     // plain insertion sort at or below
    size_t narrowing_factor_limit = 16;  // parent/bin ratio that predicts more radix wins
    size_t narrowed_tiny_threshold = 32; // tiny threshold once the ratio exceeds the limit
    size_t intro_vs_shell_override = 0;  // 0: derive from the key size

    size_t intro_vs_shell_threshold(size_t key_size) const {
        if (intro_vs_shell_override) return intro_vs_shell_override;
        return std::clamp<size_t>(100 + 5 * key_size, 100, 180);
    }
};

// A bin is tiny when it is below the effective threshold; a strongly
// narrowing split (parent more than narrowing_factor_limit times larger)
// lowers that threshold since another radix pass likely pays off.
// parent_size 0 means "no parent" (a first-pass bin) and keeps the default.
inline bool is_tiny(size_t bin_size, size_t parent_size, const TinyPolicy& p) {
    assert(parent_size == 0 || parent_size >= bin_size);
    size_t threshold = p.tiny_threshold;
    if (parent_size > 0 && parent_size > p.narrowing_factor_limit * bin_size)
        threshold = p.narrowed_tiny_threshold;
    return bin_size < threshold;
}

enum class SmallSortKind { insertion, shell, introspective };

inline SmallSortKind select_small_sort(size_t n, size_t key_size, const TinyPolicy& p) {
    if (n <= p.insertion_threshold) return SmallSortKind::insertion;
    if (n <= p.intro_vs_shell_threshold(key_size)) return SmallSortKind::shell;
    return SmallSortKind::introspective;
}

// Stable.
template <size_t RecordBytes, size_t KeyBytes>
void insertion_sort(uint8_t* base, size_t n) {
    for (size_t i = 1; i < n; ++i) {
        uint8_t tmp[RecordBytes];
        std::memcpy(tmp, base + i * RecordBytes, RecordBytes);
        size_t j = i;
        while (j > 0 && key_less<KeyBytes>(tmp, base + (j - 1) * RecordBytes)) {
            copy_record<RecordBytes>(base + j * RecordBytes, base + (j - 1) * RecordBytes);
            --j;
        }
        std::memcpy(base + j * RecordBytes, tmp, RecordBytes);
    }
}

// Gap sequence fixed at {8, 1}; the gap-1 pass is a plain insertion sort, so
// inputs of at most 8 records behave exactly like insertion_sort.
template <size_t RecordBytes, size_t KeyBytes>
void shell_sort(uint8_t* base, size_t n) {
    static constexpr size_t gaps[] = {8, 1};
    for (size_t gap : gaps) {
        for (size_t i = gap; i < n; ++i) {
            uint8_t tmp[RecordBytes];
            std::memcpy(tmp, base + i * RecordBytes, RecordBytes);
            size_t j = i;
            while (j >= gap && key_less<KeyBytes>(tmp, base + (j - gap) * RecordBytes)) {
                copy_record<RecordBytes>(base + j * RecordBytes, base + (j - gap) * RecordBytes);
                j -= gap;
            }
            std::memcpy(base + j * RecordBytes, tmp, RecordBytes);
        }
    }
}

namespace detail {

template <size_t RecordBytes, size_t KeyBytes>
void sift_down(uint8_t* base, size_t start, size_t end) {
    size_t root = start;
    for (;;) {
        size_t child = 2 * root + 1;
        if (child >= end) return;
        if (child + 1 < end &&
            key_less<KeyBytes>(base + child * RecordBytes, base + (child + 1) * RecordBytes))
            ++child;
        if (!key_less<KeyBytes>(base + root * RecordBytes, base + child * RecordBytes)) return;
        swap_records<RecordBytes>(base + root * RecordBytes, base + child * RecordBytes);
        root = child;
    }
}

template <size_t RecordBytes, size_t KeyBytes>
void heap_sort(uint8_t* base, size_t n) {
    if (n < 2) return;
    for (size_t i = n / 2; i-- > 0;) sift_down<RecordBytes, KeyBytes>(base, i, n);
    for (size_t i = n - 1; i > 0; --i) {
        swap_records<RecordBytes>(base, base + i * RecordBytes);
        sift_down<RecordBytes, KeyBytes>(base, 0, i);
    }
}

// Moves the median of records {0, n/2, n-1} to position 0, then partitions
// [1, n) around it. Returns the first index of the right half, in [1, n).
template <size_t RecordBytes, size_t KeyBytes>
size_t partition_median3(uint8_t* base, size_t n) {
    auto rec = [&](size_t i) { return base + i * RecordBytes; };
    const size_t mid = n / 2;
    const size_t last = n - 1;
    // order the three candidates, median ends up at position 0
    if (key_less<KeyBytes>(rec(mid), rec(0))) swap_records<RecordBytes>(rec(mid), rec(0));
    if (key_less<KeyBytes>(rec(last), rec(mid))) {
        swap_records<RecordBytes>(rec(last), rec(mid));
        if (key_less<KeyBytes>(rec(mid), rec(0))) swap_records<RecordBytes>(rec(mid), rec(0));
    }
    swap_records<RecordBytes>(rec(0), rec(mid));

    size_t lo = 1;
    size_t hi = n;
    for (;;) {
        while (key_less<KeyBytes>(rec(lo), rec(0))) ++lo;
        --hi;
        while (key_less<KeyBytes>(rec(0), rec(hi))) --hi;
        if (lo >= hi) return lo;
        swap_records<RecordBytes>(rec(lo), rec(hi));
        ++lo;
    }
}

template <size_t RecordBytes, size_t KeyBytes>
void intro_rec(uint8_t* base, size_t n, unsigned depth_left, size_t insertion_limit) {
    while (n > insertion_limit) {
        if (depth_left == 0) {
            heap_sort<RecordBytes, KeyBytes>(base, n);
            return;
        }
        --depth_left;
        const size_t cut = partition_median3<RecordBytes, KeyBytes>(base, n);
        // recurse into the smaller half, iterate on the larger
        if (cut < n - cut) {
            intro_rec<RecordBytes, KeyBytes>(base, cut, depth_left, insertion_limit);
            base += cut * RecordBytes;
            n -= cut;
        } else {
            intro_rec<RecordBytes, KeyBytes>(base + cut * RecordBytes, n - cut, depth_left,
                                             insertion_limit);
            n = cut;
        }
    }
    insertion_sort<RecordBytes, KeyBytes>(base, n);
}

inline unsigned log2_floor(size_t n) {
    unsigned r = 0;
    while (n >>= 1) ++r;
    return r;
}

}  // namespace detail

// Quicksort with median-of-three pivots, depth-limited to 2*floor(log2(n));
// on breach the subrange falls back to heapsort. Not stable.
template <size_t RecordBytes, size_t KeyBytes>
void introspective_sort(uint8_t* base, size_t n, size_t insertion_limit = 32) {
    if (n < 2) return;
    // The partition needs three distinct candidate positions.
    if (insertion_limit < 2) insertion_limit = 2;
    detail::intro_rec<RecordBytes, KeyBytes>(base, n, 2 * detail::log2_floor(n),
                                             insertion_limit);
}

template <size_t RecordBytes, size_t KeyBytes>
void comparison_sort(uint8_t* base, size_t n, const TinyPolicy& p) {
    if (n < 2) return;
    switch (select_small_sort(n, KeyBytes, p)) {
        case SmallSortKind::insertion:
            insertion_sort<RecordBytes, KeyBytes>(base, n);
            break;
        case SmallSortKind::shell:
            shell_sort<RecordBytes, KeyBytes>(base, n);
            break;
        case SmallSortKind::introspective:
            introspective_sort<RecordBytes, KeyBytes>(base, n, p.insertion_threshold);
            break;
    }
}

}  // namespace raduls
