// Benchmark harness: generates or loads one dataset, runs each requested
// (algorithm x thread-count x repeat) combination on a fresh copy, times the
// sort call alone and emits one CSV row per run.
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "raduls/datagen.hpp"
#include "raduls/record_array.hpp"

namespace raduls {

enum class VerifyMode { none, digest, full };

struct BenchRequest {
    std::vector<std::string> algos{"raduls"};  // raduls | lsd1 | lsd4 | oracle
    size_t n = 0;
    RecordLayout layout{};
    Distribution dist = Distribution::uniform;
    double theta = 0.75;
    uint64_t universe = uint64_t(1) << 24;
    uint64_t seed = 0;
    std::vector<unsigned> threads{1};
    unsigned repeats = 3;
    std::string input_path;  // when set, load records instead of generating
    VerifyMode verify = VerifyMode::none;
    size_t l2_bytes = 262144;
    size_t buffer_bytes = 256;
};

struct RunResult {
    std::string algo;
    size_t n = 0;
    uint32_t record_size = 0;
    uint32_t key_size = 0;
    std::string distribution;
    unsigned threads = 0;
    double wall_time = 0.0;  // seconds, sort call only
    bool verified = true;
    unsigned repeat_index = 0;
};

std::string csv_header();
void write_csv_row(std::ostream& out, const RunResult& r);

// Monotonic time source; injectable so tests can pin down exactly what the
// wall_time bracket covers.
using MonotonicClock = std::function<std::chrono::nanoseconds()>;

// Runs all combinations in order (algos outermost, then threads, then
// repeats), writing rows to csv and progress to log. Returns 0 when every
// requested verification passed, 1 otherwise. Resource and I/O problems
// propagate as exceptions.
int run_bench(const BenchRequest& req, std::ostream& csv, std::ostream& log,
              MonotonicClock now = {});

// Reads a results CSV and prints per-algorithm median times and relative
// speedups (median at T=1 over median at T). Algorithms without a T=1
// baseline are reported on log and skipped.
int speedup_report(std::istream& csv_in, std::ostream& out, std::ostream& log);

}  // namespace raduls
