// Owning storage for a dense, header-less run of fixed-size records.
#pragma once

#include <cstdint>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "raduls/errors.hpp"
#include "raduls/layout.hpp"

namespace raduls {

struct AlignedFree {
    void operator()(uint8_t* p) const { ::operator delete[](p, std::align_val_t{64}); }
};

using AlignedBytes = std::unique_ptr<uint8_t[], AlignedFree>;

inline AlignedBytes allocate_record_bytes(size_t bytes) {
    try {
        return AlignedBytes(new (std::align_val_t{64}) uint8_t[bytes ? bytes : 1]);
    } catch (const std::bad_alloc&) {
        throw resource_error("cannot allocate " + std::to_string(bytes) +
                             " bytes of record storage");
    }
}

class RecordArray {
public:
    RecordArray() = default;
    RecordArray(const RecordLayout& layout, size_t n)
        : layout_(layout), n_(n), buf_(allocate_record_bytes(n * layout.record_size)) {}

    RecordArray(RecordArray&&) noexcept = default;
    RecordArray& operator=(RecordArray&&) noexcept = default;
    RecordArray(const RecordArray&) = delete;
    RecordArray& operator=(const RecordArray&) = delete;

    uint8_t* data() { return buf_.get(); }
    const uint8_t* data() const { return buf_.get(); }
    uint8_t* record(size_t i) { return buf_.get() + i * layout_.record_size; }
    const uint8_t* record(size_t i) const { return buf_.get() + i * layout_.record_size; }

    size_t size() const { return n_; }
    size_t byte_size() const { return n_ * layout_.record_size; }
    const RecordLayout& layout() const { return layout_; }
    bool empty() const { return n_ == 0; }

    RecordArray clone() const {
        RecordArray c(layout_, n_);
        std::memcpy(c.data(), data(), byte_size());
        return c;
    }

private:
    RecordLayout layout_{};
    size_t n_ = 0;
    AlignedBytes buf_{};
};

}  // namespace raduls
