// MSD pass orchestration. One sort proceeds as:
//
//   1. First pass: the whole array is split by the most significant key
//      byte with the buffered kernel across all T threads, over 8T chunks
//      growing linearly from N/(64T). Children are classified against the
//      2N/3T threshold; small ones feed a priority queue served by T_small
//      workers while big ones are split recursively with T_big threads.
//      Small bins produced by the big-bin recursion go to a second queue;
//      once the recursion finishes, the big-bin threads turn into workers
//      on it. Every worker drains whichever queue still holds work before
//      shutting down.
//
//   2. Workers pop the largest pending bin and split it one digit further:
//      with the plain counting split while the bin fits half of L2, with
//      the single-threaded buffered split otherwise. Tiny children go to a
//      comparison sorter, children below N/4096 recurse on the worker's own
//      stack and the rest are re-queued.
//
// Splits ping-pong between the caller's array and one auxiliary array; a
// bin that reaches final order in the auxiliary array is copied back, so
// the sorted result always ends up in the caller's array.
#pragma once

#include <atomic>
#include <cstdint>
#include <cstring>
#include <exception>
#include <mutex>
#include <system_error>
#include <thread>
#include <vector>

#include "raduls/kernels.hpp"
#include "raduls/record_array.hpp"
#include "raduls/scheduler.hpp"
#include "raduls/small_sorts.hpp"
#include "raduls/task_queue.hpp"

namespace raduls::detail {

template <size_t RecordBytes, size_t KeyBytes>
class MsdSorter {
public:
    MsdSorter(uint8_t* data, size_t n, const SchedulerConfig& cfg)
        : primary_(data), n_(n), cfg_(cfg) {
        if (cfg_.threads < 1) cfg_.threads = 1;
        if (cfg_.queue_cutoff_divisor < 1) cfg_.queue_cutoff_divisor = 4096;
    }

    void run() {
        if (n_ < 2) return;
        aux_ = allocate_record_bytes(n_ * RecordBytes);
        std::vector<std::thread> workers;
        try {
            first_pass(workers);
        } catch (...) {
            // Unblock everything, let the remaining tasks drain as no-ops.
            record_failure(std::current_exception());
            small_queue_.close();
            big_queue_.close();
        }
        drain(big_queue_);
        drain(small_queue_);
        for (auto& w : workers) w.join();
        if (failed_.load(std::memory_order_acquire)) std::rethrow_exception(failure_);
    }

private:
    static uint32_t offset_of(int byte_index) {
        return uint32_t(KeyBytes) - 1 - uint32_t(byte_index);
    }

    uint8_t* array_for(uint8_t parity) { return parity ? aux_.get() : primary_; }

    // A finished bin living in the auxiliary array moves home.
    void finalize(const Bin& bin) {
        if (bin.parity && bin.size())
            std::memcpy(primary_ + bin.start * RecordBytes, aux_.get() + bin.start * RecordBytes,
                        bin.size() * RecordBytes);
    }

    Histogram split_buffered(const Bin& bin, std::span<const size_t> bounds, unsigned threads) {
        return buffered_radix_split<RecordBytes>(
            array_for(bin.parity) + bin.start * RecordBytes,
            array_for(uint8_t(1 - bin.parity)) + bin.start * RecordBytes, bin.size(),
            offset_of(bin.next_byte), bounds, threads, cfg_.buffer_bytes);
    }

    void first_pass(std::vector<std::thread>& workers) {
        const Bin whole{0, n_, int(KeyBytes) - 1, 0};
        const auto bounds = linear_growth_chunks(n_, cfg_.threads, cfg_.chunk_multiplier,
                                                 cfg_.first_chunk_divisor);
        const Histogram h = split_buffered(whole, bounds, cfg_.threads);
        const auto children = child_bins(h, whole);
        if (whole.next_byte == 0) {  // single-digit keys: children are final
            finalize(Bin{0, n_, 0, 1});
            small_queue_.close();
            big_queue_.close();
            return;
        }

        const auto cls = classify_bins(children, n_, cfg_.threads, cfg_.big_bin_threshold);
        const auto split = split_threads(cls.big_records, n_, cfg_.threads);

        for (const Bin& b : cls.small) {
            if (b.size() == 0) continue;
            if (b.size() == 1) {
                finalize(b);
                continue;
            }
            small_queue_.push(Task{b});
        }
        small_queue_.close();

        // The calling thread is one of the T and later drains the queues
        // itself, hence one spawned worker less on whichever side it joins.
        const unsigned small_workers =
            split.t_big > 0 ? split.t_small : (split.t_small > 0 ? split.t_small - 1 : 0);
        spawn_workers(workers, small_workers, /*big_first=*/false);

        for (const Bin& b : cls.big) big_partition_pass(b, split.t_big);
        big_queue_.close();

        const unsigned big_workers = split.t_big > 0 ? split.t_big - 1 : 0;
        spawn_workers(workers, big_workers, /*big_first=*/true);
    }

    void spawn_workers(std::vector<std::thread>& workers, unsigned count, bool big_first) {
        for (unsigned i = 0; i < count; ++i) {
            try {
                workers.emplace_back([this, big_first] {
                    drain(big_first ? big_queue_ : small_queue_);
                    drain(big_first ? small_queue_ : big_queue_);
                });
            } catch (const std::system_error&) {
                return;  // degraded but correct: the caller drains both queues
            }
        }
    }

    // Recursive handling of a big bin: split with t threads, recurse into
    // big children immediately, queue the rest. At byte 0 the split itself
    // completes the order.
    void big_partition_pass(const Bin& bin, unsigned t) {
        if (t < 1) t = 1;
        const auto bounds = linear_growth_chunks(bin.size(), t, cfg_.chunk_multiplier,
                                                 cfg_.first_chunk_divisor);
        const Histogram h = split_buffered(bin, bounds, t);
        const auto children = child_bins(h, bin);
        if (bin.next_byte == 0) {
            finalize(Bin{bin.start, bin.end, 0, uint8_t(1 - bin.parity)});
            return;
        }
        for (const Bin& c : children) {
            if (c.size() == 0) continue;
            if (c.size() == 1) {
                finalize(c);
                continue;
            }
            if (is_big_bin(c.size(), n_, cfg_.threads, cfg_.big_bin_threshold))
                big_partition_pass(c, t);
            else
                big_queue_.push(Task{c});
        }
    }

    void drain(TaskQueue& q) {
        while (auto task = q.pop()) {
            if (!failed_.load(std::memory_order_relaxed)) {
                try {
                    msd_radix_bins(task->bin, q);
                } catch (...) {
                    record_failure(std::current_exception());
                }
            }
            q.task_done();
        }
    }

    void msd_radix_bins(const Bin& bin, TaskQueue& q) {
        const size_t size = bin.size();
        if (size <= 1) {
            finalize(bin);
            return;
        }
        const uint8_t* src = array_for(bin.parity) + bin.start * RecordBytes;
        uint8_t* dst = array_for(uint8_t(1 - bin.parity)) + bin.start * RecordBytes;

        Histogram h;
        if (size * RecordBytes <= cfg_.l2_cache_bytes / 2) {
            h = radix_split<RecordBytes>(src, dst, size, offset_of(bin.next_byte));
        } else {
            const std::array<size_t, 2> whole{0, size};
            h = buffered_radix_split<RecordBytes>(src, dst, size, offset_of(bin.next_byte),
                                                  whole, 1, cfg_.buffer_bytes);
        }
        const auto children = child_bins(h, bin);
        if (bin.next_byte == 0) {
            finalize(Bin{bin.start, bin.end, 0, uint8_t(1 - bin.parity)});
            return;
        }
        for (const Bin& c : children) {
            if (c.size() == 0) continue;
            if (is_tiny(c.size(), size, cfg_.tiny)) {
                comparison_sort<RecordBytes, KeyBytes>(
                    array_for(c.parity) + c.start * RecordBytes, c.size(), cfg_.tiny);
                finalize(c);
            } else if (c.size() * cfg_.queue_cutoff_divisor < n_) {
                msd_radix_bins(c, q);
            } else {
                q.push(Task{c});
            }
        }
    }

    void record_failure(std::exception_ptr e) {
        std::lock_guard lk(failure_mu_);
        if (!failed_.load(std::memory_order_relaxed)) {
            failure_ = e;
            failed_.store(true, std::memory_order_release);
        }
    }

    uint8_t* primary_;
    size_t n_;
    SchedulerConfig cfg_;
    AlignedBytes aux_;
    TaskQueue small_queue_;
    TaskQueue big_queue_;
    std::mutex failure_mu_;
    std::exception_ptr failure_;
    std::atomic<bool> failed_{false};
};

}  // namespace raduls::detail
