// Deterministic dataset generation and raw record file I/O.
//
// Key material comes from per-shard mt19937_64 streams (shards are fixed
// runs of 2^20 records, each seeded from (seed, shard index)), so the same
// GenSpec always yields byte-identical data, no matter how many threads
// generate it.
//
// Zipf keys: a rank r in [1, universe] is drawn by inverse CDF with
// P(r) ~ r^-theta, then mapped through the fixed 64-bit bijection
// zipf_key_word(r) (and zipf_key_word_lo(r) for the second word of 16-byte
// keys). Heavy ranks therefore repeat as whole keys while every key byte
// still varies.
//
// Payloads encode the global record index (first word verbatim), which
// makes stability violations observable.
#pragma once

#include <cstdint>
#include <string>

#include "raduls/record_array.hpp"

namespace raduls {

enum class Distribution { uniform, zipf };

struct GenSpec {
    size_t n = 0;
    RecordLayout layout{};
    Distribution dist = Distribution::uniform;
    double theta = 0.75;                   // Zipf exponent
    uint64_t universe = uint64_t(1) << 24; // distinct Zipf ranks, at most 2^26
    uint64_t seed = 0;
};

// splitmix64 finalizer; bijective on 64-bit words.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t zipf_key_word(uint64_t rank) { return mix64(rank); }
inline uint64_t zipf_key_word_lo(uint64_t rank) { return mix64(rank ^ 0x6a09e667f3bcc909ULL); }

// Throws std::invalid_argument for bad specs, resource_error if the array
// does not fit in memory. Output depends only on the spec, not on threads.
RecordArray generate(const GenSpec& spec, unsigned threads = 1);

// Raw binary record files: a header-less stream of n * record_size bytes.
// load_file throws format_error when the file length is not a multiple of
// the record size and io_error when the path cannot be read.
RecordArray load_file(const std::string& path, const RecordLayout& layout);
void save_file(const std::string& path, const RecordArray& array);

}  // namespace raduls
