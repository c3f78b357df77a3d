// Radix split kernels. Two variants share one contract: scatter a run of
// records into 256 groups by one key byte, stably, from a source range into
// an equally sized destination range.
//
//   radix_split          - sequential counting-sort split, no staging.
//   buffered_radix_split - chunked parallel split that stages records in
//                          per-digit write-combining lanes and flushes each
//                          lane as one contiguous block.
//
// The buffered kernel assigns every (chunk, digit) pair a disjoint
// destination sub-range, ordered by digit then by chunk index, so threads
// never contend on output and the result is stable and independent of the
// number of threads.
#pragma once

#include <array>
#include <atomic>
#include <barrier>
#include <cassert>
#include <cstdint>
#include <cstring>
#include <span>
#include <thread>
#include <vector>

#include "raduls/layout.hpp"
#include "raduls/record_array.hpp"

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

namespace raduls {

struct Histogram {
    std::array<uint64_t, 256> counts{};

    uint64_t total() const {
        uint64_t t = 0;
        for (uint64_t c : counts) t += c;
        return t;
    }
};

using Offsets = std::array<uint64_t, 256>;

inline Offsets exclusive_prefix_sum(const Histogram& h) {
    Offsets o{};
    uint64_t run = 0;
    for (size_t d = 0; d < 256; ++d) {
        o[d] = run;
        run += h.counts[d];
    }
    return o;
}

// A contiguous sub-range of the working arrays. next_byte is the key digit
// the bin still has to be split on; parity says which of the two working
// arrays currently holds the bin's records (0: caller's, 1: auxiliary).
struct Bin {
    size_t start = 0;
    size_t end = 0;
    int next_byte = 0;
    uint8_t parity = 0;

    size_t size() const { return end - start; }
};

// Counts digit occurrences over [base, base + n) at the given significance
// position. Generic over the layout; the split kernels inline their own.
inline Histogram build_histogram(const uint8_t* base, size_t n, const RecordLayout& l,
                                 uint32_t byte_index) {
    Histogram h;
    const uint32_t off = digit_offset(l, byte_index);
    for (size_t i = 0; i < n; ++i) ++h.counts[base[i * l.record_size + off]];
    return h;
}

// The 256 children produced by splitting `parent` with digit counts `h`.
// Children tile the parent range in ascending digit order, advance to the
// next (less significant) digit and live in the other working array.
inline std::array<Bin, 256> child_bins(const Histogram& h, const Bin& parent) {
    std::array<Bin, 256> out;
    size_t pos = parent.start;
    for (size_t d = 0; d < 256; ++d) {
        out[d].start = pos;
        pos += h.counts[d];
        out[d].end = pos;
        out[d].next_byte = parent.next_byte - 1;
        out[d].parity = uint8_t(1 - parent.parity);
    }
    assert(pos == parent.end);
    return out;
}

// Chunk boundaries for the parallel split's dynamic work claiming.
// linear_growth_chunks yields multiplier*threads chunks whose sizes grow
// linearly from n/(first_divisor*threads); sizes are rounded down and the
// final chunk absorbs the remainder.
inline std::vector<size_t> linear_growth_chunks(size_t n, unsigned threads,
                                                unsigned multiplier = 8,
                                                unsigned first_divisor = 64) {
    if (threads < 1) threads = 1;
    const size_t k = std::max<size_t>(1, size_t(multiplier) * threads);
    std::vector<size_t> bounds;
    bounds.reserve(k + 1);
    bounds.push_back(0);
    const double first = double(n) / (double(first_divisor) * threads);
    const double step =
        k > 1 ? (double(n) - first * double(k)) * 2.0 / (double(k) * double(k - 1)) : 0.0;
    size_t pos = 0;
    for (size_t i = 0; i + 1 < k; ++i) {
        const double sz = first + double(i) * step;
        pos += sz > 0.0 ? size_t(sz) : 0;
        if (pos > n) pos = n;
        bounds.push_back(pos);
    }
    bounds.push_back(n);
    return bounds;
}

inline std::vector<size_t> equal_chunks(size_t n, size_t k) {
    if (k < 1) k = 1;
    std::vector<size_t> bounds(k + 1);
    for (size_t i = 0; i <= k; ++i)
        bounds[i] = size_t((unsigned __int128)n * i / k);
    return bounds;
}

namespace detail {

// Lane flushes go through streaming stores when alignment allows, plain
// block copies otherwise; callers must not depend on which one runs.
inline void flush_block(uint8_t* dst, const uint8_t* src, size_t bytes) {
#if defined(__SSE2__)
    if (((reinterpret_cast<uintptr_t>(dst) | reinterpret_cast<uintptr_t>(src)) & 15u) == 0 &&
        bytes % 16 == 0) {
        for (size_t i = 0; i < bytes; i += 16)
            _mm_stream_si128(reinterpret_cast<__m128i*>(dst + i),
                             _mm_load_si128(reinterpret_cast<const __m128i*>(src + i)));
        return;
    }
#endif
    std::memcpy(dst, src, bytes);
}

inline void flush_fence() {
#if defined(__SSE2__)
    _mm_sfence();
#endif
}

}  // namespace detail

// Sequential counting-sort split: histogram, prefix sum, one stable scatter
// pass. src and dst must not overlap. Returns the digit histogram.
template <size_t RecordBytes>
Histogram radix_split(const uint8_t* src, uint8_t* dst, size_t n, uint32_t key_byte_offset) {
    Histogram h;
    for (size_t i = 0; i < n; ++i) ++h.counts[src[i * RecordBytes + key_byte_offset]];
    Offsets cur = exclusive_prefix_sum(h);
    for (size_t i = 0; i < n; ++i) {
        const uint8_t* rec = src + i * RecordBytes;
        copy_record<RecordBytes>(dst + cur[rec[key_byte_offset]]++ * RecordBytes, rec);
    }
    return h;
}

// Buffered parallel split. chunk_bounds holds k+1 record indices partitioning
// [0, n); the same partition drives both scans. Threads claim chunks through
// a shared counter, first to build per-chunk histograms, then (after a global
// offset table orders destinations by digit, then chunk) to scatter records
// through their staging lanes. lane_bytes is the staging budget per digit;
// lanes hold floor(lane_bytes / RecordBytes) records, at least one.
template <size_t RecordBytes>
Histogram buffered_radix_split(const uint8_t* src, uint8_t* dst, size_t n,
                               uint32_t key_byte_offset,
                               std::span<const size_t> chunk_bounds, unsigned threads,
                               size_t lane_bytes) {
    Histogram total;
    if (n == 0) return total;
    assert(chunk_bounds.size() >= 2 && chunk_bounds.front() == 0 && chunk_bounds.back() == n);
    const size_t n_chunks = chunk_bounds.size() - 1;
    if (threads < 1) threads = 1;

    const size_t lane_records = std::max<size_t>(1, lane_bytes / RecordBytes);
    const size_t lane_stride = (lane_records * RecordBytes + 63) / 64 * 64;

    std::vector<std::array<uint64_t, 256>> chunk_hist(n_chunks);
    std::vector<std::array<uint64_t, 256>> chunk_base(n_chunks);
    std::vector<AlignedBytes> lane_storage(threads);
    for (auto& b : lane_storage) b = allocate_record_bytes(256 * lane_stride);

    std::atomic<size_t> count_cursor{0};
    std::atomic<size_t> scatter_cursor{0};

    // Runs on exactly one thread between the two scans.
    auto compute_offsets = [&]() noexcept {
        uint64_t pos = 0;
        for (size_t d = 0; d < 256; ++d) {
            const uint64_t before = pos;
            for (size_t c = 0; c < n_chunks; ++c) {
                chunk_base[c][d] = pos;
                pos += chunk_hist[c][d];
            }
            total.counts[d] = pos - before;
        }
    };
    std::barrier sync(static_cast<std::ptrdiff_t>(threads), compute_offsets);

    auto worker = [&](unsigned tid) {
        for (;;) {
            const size_t c = count_cursor.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) break;
            auto& h = chunk_hist[c];
            for (size_t i = chunk_bounds[c]; i < chunk_bounds[c + 1]; ++i)
                ++h[src[i * RecordBytes + key_byte_offset]];
        }
        sync.arrive_and_wait();

        uint8_t* lanes = lane_storage[tid].get();
        uint64_t cur[256];
        uint32_t fill[256];
        for (;;) {
            const size_t c = scatter_cursor.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) break;
            std::memcpy(cur, chunk_base[c].data(), sizeof cur);
            std::memset(fill, 0, sizeof fill);
            for (size_t i = chunk_bounds[c]; i < chunk_bounds[c + 1]; ++i) {
                const uint8_t* rec = src + i * RecordBytes;
                const unsigned d = rec[key_byte_offset];
                copy_record<RecordBytes>(lanes + d * lane_stride + fill[d] * RecordBytes, rec);
                if (++fill[d] == lane_records) {
                    detail::flush_block(dst + cur[d] * RecordBytes, lanes + d * lane_stride,
                                        lane_records * RecordBytes);
                    cur[d] += lane_records;
                    fill[d] = 0;
                }
            }
            for (unsigned d = 0; d < 256; ++d)
                if (fill[d])
                    detail::flush_block(dst + cur[d] * RecordBytes, lanes + d * lane_stride,
                                        fill[d] * RecordBytes);
        }
        detail::flush_fence();
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads - 1);
        for (unsigned t = 1; t < threads; ++t) {
            try {
                pool.emplace_back(worker, t);
            } catch (const std::system_error&) {
                sync.arrive_and_drop();  // run with the threads we got
            }
        }
        worker(0);
        for (auto& th : pool) th.join();
    }
    return total;
}

}  // namespace raduls
