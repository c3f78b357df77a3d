// MSD radix sort entry point and the scheduling policy knobs that drive it:
// big/small bin classification, the big-vs-small thread split and the
// queue-vs-inline recursion cutoff.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "raduls/kernels.hpp"
#include "raduls/record_array.hpp"
#include "raduls/small_sorts.hpp"

namespace raduls {

// A bin is big when size > num * N / (den * T); kept as a fraction so the
// boundary is exact.
struct BigBinFraction {
    uint32_t num = 2;
    uint32_t den = 3;
};

struct SchedulerConfig {
    unsigned threads = 1;
    size_t l2_cache_bytes = 262144;   // plain split while a bin fits half of this
    BigBinFraction big_bin_threshold{};
    size_t queue_cutoff_divisor = 4096;  // recurse inline below N / this
    unsigned chunk_multiplier = 8;       // parallel splits use 8T chunks
    unsigned first_chunk_divisor = 64;   // first chunk holds N/(64T) records
    size_t buffer_bytes = 256;           // staging bytes per digit lane
    TinyPolicy tiny{};
};

bool is_big_bin(size_t bin_size, size_t n, unsigned threads, const BigBinFraction& f = {});

struct BinClassification {
    std::vector<Bin> small;
    std::vector<Bin> big;
    size_t big_records = 0;
};

// Splits bins into small/big against the 2N/3T rule; both lists keep digit order.
BinClassification classify_bins(std::span<const Bin> bins, size_t n, unsigned threads,
                                const BigBinFraction& f = {});

struct ThreadSplit {
    unsigned t_big = 0;
    unsigned t_small = 0;
};

// Portion of the pool assigned to big bins, proportional to their record
// share with a 1.25 overweight: t_big = min(T, ceil(1.25 * T * big/N)),
// at least 1 whenever any big bin exists.
ThreadSplit split_threads(size_t big_records, size_t n, unsigned threads);

// Sorts n records in place, non-decreasing by key. Allocates one auxiliary
// array of equal size; on allocation failure throws resource_error and
// leaves the input untouched. Throws std::invalid_argument for unsupported
// layouts.
void sort(uint8_t* data, size_t n, const RecordLayout& layout,
          const SchedulerConfig& cfg = {});

inline void sort(RecordArray& array, const SchedulerConfig& cfg = {}) {
    sort(array.data(), array.size(), array.layout(), cfg);
}

}  // namespace raduls
