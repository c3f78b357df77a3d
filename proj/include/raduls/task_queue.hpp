// Shared priority queue of bins awaiting a worker. Largest bins come out
// first. A queue is closed once no external producer remains; workers that
// popped a task may still push follow-up tasks, so pop() only reports
// exhaustion when the queue is closed, empty and no popped task is in
// flight (every pop must be balanced by task_done()).
#pragma once

#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <optional>
#include <queue>
#include <vector>

#include "raduls/kernels.hpp"

namespace raduls {

struct Task {
    Bin bin{};
    size_t priority = 0;

    Task() = default;
    explicit Task(const Bin& b) : bin(b), priority(b.size()) {}
};

class TaskQueue {
public:
    void push(const Task& t) {
        {
            std::lock_guard lk(mu_);
            heap_.push(t);
            ++pushed_;
        }
        cv_.notify_one();
    }

    // Blocks until a task is available or the queue is drained for good.
    std::optional<Task> pop() {
        std::unique_lock lk(mu_);
        cv_.wait(lk, [&] { return !heap_.empty() || (closed_ && active_ == 0); });
        if (heap_.empty()) return std::nullopt;
        Task t = heap_.top();
        heap_.pop();
        ++active_;
        ++popped_;
        return t;
    }

    void task_done() {
        std::unique_lock lk(mu_);
        --active_;
        if (closed_ && active_ == 0 && heap_.empty()) {
            lk.unlock();
            cv_.notify_all();
        }
    }

    void close() {
        {
            std::lock_guard lk(mu_);
            closed_ = true;
        }
        cv_.notify_all();
    }

    uint64_t pushed() const {
        std::lock_guard lk(mu_);
        return pushed_;
    }
    uint64_t popped() const {
        std::lock_guard lk(mu_);
        return popped_;
    }
    size_t size() const {
        std::lock_guard lk(mu_);
        return heap_.size();
    }

private:
    struct LowerPriority {
        bool operator()(const Task& a, const Task& b) const { return a.priority < b.priority; }
    };

    mutable std::mutex mu_;
    std::condition_variable cv_;
    std::priority_queue<Task, std::vector<Task>, LowerPriority> heap_;
    size_t active_ = 0;
    bool closed_ = false;
    uint64_t pushed_ = 0;
    uint64_t popped_ = 0;
};

}  // namespace raduls
