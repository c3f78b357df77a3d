// Buffered LSD radix sort baseline: key_size stable passes from the least
// to the most significant key byte, ping-ponging between the caller's array
// and one auxiliary array.
#pragma once

#include <cstdint>

#include "raduls/record_array.hpp"

namespace raduls {

struct LsdConfig {
    size_t buffer_bytes_per_digit = 64;  // positive multiple of 64
    unsigned threads = 1;
};

// Stable: records with equal keys keep their input order. Throws
// resource_error if the auxiliary array cannot be allocated (input
// untouched) and std::invalid_argument for bad layouts or buffer sizes.
void lsd_sort(uint8_t* data, size_t n, const RecordLayout& layout, const LsdConfig& cfg = {});

inline void lsd_sort(RecordArray& array, const LsdConfig& cfg = {}) {
    lsd_sort(array.data(), array.size(), array.layout(), cfg);
}

}  // namespace raduls
