#include "raduls/lsd.hpp"

#include <cstring>
#include <stdexcept>
#include <utility>

#include "raduls/detail/dispatch.hpp"
#include "raduls/kernels.hpp"

namespace raduls {

void lsd_sort(uint8_t* data, size_t n, const RecordLayout& layout, const LsdConfig& cfg) {
    if (cfg.buffer_bytes_per_digit == 0 || cfg.buffer_bytes_per_digit % 64 != 0)
        throw std::invalid_argument("LSD buffer size must be a positive multiple of 64 bytes");
    detail::dispatch_layout(layout, [&](auto rb, auto kb) {
        constexpr size_t RB = rb();
        constexpr size_t KB = kb();
        if (n < 2) return;
        const unsigned threads = cfg.threads < 1 ? 1 : cfg.threads;
        AlignedBytes aux = allocate_record_bytes(n * RB);
        const auto bounds = equal_chunks(n, size_t(8) * threads);

        uint8_t* src = data;
        uint8_t* dst = aux.get();
        // Pass p orders by significance byte p; every pass is stable, so
        // after all KB passes the array is ordered by the whole key.
        for (uint32_t pass = 0; pass < KB; ++pass) {
            const uint32_t offset = KB - 1 - pass;
            buffered_radix_split<RB>(src, dst, n, offset, bounds, threads,
                                     cfg.buffer_bytes_per_digit);
            std::swap(src, dst);
        }
        if (src != data) std::memcpy(data, src, n * RB);
    });
}

}  // namespace raduls
