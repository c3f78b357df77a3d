// Fixed-size record model: supported layouts, digit extraction and key
// comparison. A key occupies the first key_size bytes of its record, most
// significant byte first, so byte-wise (memcmp) order equals numeric order.
#pragma once

#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>

namespace raduls {

inline constexpr size_t kMaxRecordBytes = 32;

struct RecordLayout {
    uint32_t record_size = 16;  // bytes per record: 8, 16, 24 or 32
    uint32_t key_size = 8;      // leading key bytes: 8 or 16

    constexpr uint32_t payload_size() const { return record_size - key_size; }

    constexpr bool valid() const {
        const bool rs_ok = record_size == 8 || record_size == 16 ||
                           record_size == 24 || record_size == 32;
        const bool ks_ok = key_size == 8 || key_size == 16;
        return rs_ok && ks_ok && key_size <= record_size;
    }
};

// Digit d of a key is the key byte with significance d: d = key_size-1 is
// the most significant byte (stored first), d = 0 the least significant.
inline constexpr uint32_t digit_offset(const RecordLayout& l, uint32_t byte_index) {
    return l.key_size - 1 - byte_index;
}

inline uint8_t digit(const uint8_t* record, const RecordLayout& l, uint32_t byte_index) {
    assert(byte_index < l.key_size);
    return record[digit_offset(l, byte_index)];
}

inline uint64_t load_be64(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
    return v;
}

inline void store_be64(uint8_t* p, uint64_t v) {
    for (int i = 7; i >= 0; --i) { p[i] = uint8_t(v); v >>= 8; }
}

// Payload bytes never take part in the ordering.
inline std::strong_ordering compare_keys(const uint8_t* a, const uint8_t* b,
                                         const RecordLayout& l) {
    return std::memcmp(a, b, l.key_size) <=> 0;
}

template <size_t KeyBytes>
inline bool key_less(const uint8_t* a, const uint8_t* b) {
    static_assert(KeyBytes == 8 || KeyBytes == 16, "unsupported key width");
    const uint64_t a0 = load_be64(a);
    const uint64_t b0 = load_be64(b);
    if constexpr (KeyBytes == 8) {
        return a0 < b0;
    } else {
        if (a0 != b0) return a0 < b0;
        return load_be64(a + 8) < load_be64(b + 8);
    }
}

template <size_t RecordBytes>
inline void copy_record(uint8_t* dst, const uint8_t* src) {
    std::memcpy(dst, src, RecordBytes);
}

template <size_t RecordBytes>
inline void swap_records(uint8_t* a, uint8_t* b) {
    uint8_t tmp[RecordBytes];
    std::memcpy(tmp, a, RecordBytes);
    std::memcpy(a, b, RecordBytes);
    std::memcpy(b, tmp, RecordBytes);
}

}  // namespace raduls
