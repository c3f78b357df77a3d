#include "raduls/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "raduls/errors.hpp"
#include "raduls/lsd.hpp"
#include "raduls/scheduler.hpp"
#include "raduls/verify.hpp"

namespace raduls {

namespace {

const char* kCsvHeader = "algo,n,record_size,key_size,distribution,threads,wall_time,verified,repeat_index";

bool known_algo(const std::string& a) {
    return a == "raduls" || a == "lsd1" || a == "lsd4" || a == "oracle";
}

bool stable_algo(const std::string& a) { return a == "lsd1" || a == "lsd4" || a == "oracle"; }

void run_algo(const std::string& algo, uint8_t* data, size_t n, const RecordLayout& layout,
              unsigned threads, const BenchRequest& req) {
    if (algo == "raduls") {
        SchedulerConfig cfg;
        cfg.threads = threads;
        cfg.l2_cache_bytes = req.l2_bytes;
        cfg.buffer_bytes = req.buffer_bytes;
        sort(data, n, layout, cfg);
    } else if (algo == "lsd1") {
        lsd_sort(data, n, layout, LsdConfig{64, threads});
    } else if (algo == "lsd4") {
        lsd_sort(data, n, layout, LsdConfig{256, threads});
    } else if (algo == "oracle") {
        oracle_sort(data, n, layout);
    } else {
        throw std::invalid_argument("unknown algorithm: " + algo);
    }
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t m = v.size() / 2;
    if (v.empty()) return 0.0;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

std::string csv_header() { return kCsvHeader; }

void write_csv_row(std::ostream& out, const RunResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", r.wall_time);
    out << r.algo << ',' << r.n << ',' << r.record_size << ',' << r.key_size << ','
        << r.distribution << ',' << r.threads << ',' << buf << ','
        << (r.verified ? "true" : "false") << ',' << r.repeat_index << '\n';
}

int run_bench(const BenchRequest& req, std::ostream& csv, std::ostream& log,
              MonotonicClock now) {
    for (const auto& a : req.algos)
        if (!known_algo(a)) throw std::invalid_argument("unknown algorithm: " + a);
    if (!now)
        now = [] { return std::chrono::steady_clock::now().time_since_epoch(); };

    const unsigned gen_threads = std::max(1u, std::thread::hardware_concurrency());
    RecordArray dataset;
    std::string dist_name;
    if (!req.input_path.empty()) {
        dataset = load_file(req.input_path, req.layout);
        dist_name = "file";
        log << "loaded " << dataset.size() << " records from " << req.input_path << "\n";
    } else {
        GenSpec spec;
        spec.n = req.n;
        spec.layout = req.layout;
        spec.dist = req.dist;
        spec.theta = req.theta;
        spec.universe = req.universe;
        spec.seed = req.seed;
        dataset = generate(spec, gen_threads);
        dist_name = req.dist == Distribution::uniform ? "uniform" : "zipf";
        log << "generated " << dataset.size() << " " << dist_name << " records (seed "
            << req.seed << ")\n";
    }
    const size_t n = dataset.size();
    const RecordLayout layout = dataset.layout();

    Digest128 input_digest;
    RecordArray oracle_copy;
    if (req.verify != VerifyMode::none) input_digest = array_digest(dataset);
    if (req.verify == VerifyMode::full) {
        oracle_copy = dataset.clone();
        oracle_sort(oracle_copy);
    }

    RecordArray work(layout, n);
    csv << csv_header() << '\n';
    bool all_verified = true;

    for (const auto& algo : req.algos) {
        for (unsigned t : req.threads) {
            for (unsigned rep = 0; rep < req.repeats; ++rep) {
                std::memcpy(work.data(), dataset.data(), dataset.byte_size());

                const auto t0 = now();
                run_algo(algo, work.data(), n, layout, t, req);
                const auto t1 = now();

                RunResult row;
                row.algo = algo;
                row.n = n;
                row.record_size = layout.record_size;
                row.key_size = layout.key_size;
                row.distribution = dist_name;
                row.threads = t;
                row.wall_time = std::chrono::duration<double>(t1 - t0).count();
                row.repeat_index = rep;

                if (req.verify != VerifyMode::none) {
                    bool ok = check_sorted(work).ok;
                    ok = check_permutation(input_digest, work.data(), n, layout) && ok;
                    if (req.verify == VerifyMode::full) {
                        for (size_t i = 0; ok && i < n; ++i)
                            ok = std::memcmp(work.record(i), oracle_copy.record(i),
                                             layout.key_size) == 0;
                        if (ok && stable_algo(algo))
                            ok = std::memcmp(work.data(), oracle_copy.data(),
                                             work.byte_size()) == 0;
                    }
                    row.verified = ok;
                    if (!ok) {
                        all_verified = false;
                        log << "verification FAILED: algo=" << algo << " threads=" << t
                            << " repeat=" << rep << "\n";
                    }
                }
                write_csv_row(csv, row);
            }
        }
    }
    return all_verified ? 0 : 1;
}

int speedup_report(std::istream& csv_in, std::ostream& out, std::ostream& log) {
    std::string line;
    if (!std::getline(csv_in, line)) {
        log << "empty CSV input\n";
        return 0;
    }
    const auto header = split_csv_line(line);
    int algo_col = -1, threads_col = -1, time_col = -1;
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "algo") algo_col = int(i);
        if (header[i] == "threads") threads_col = int(i);
        if (header[i] == "wall_time") time_col = int(i);
    }
    if (algo_col < 0 || threads_col < 0 || time_col < 0) {
        log << "CSV is missing algo/threads/wall_time columns\n";
        return 0;
    }

    std::vector<std::string> algo_order;
    std::map<std::string, std::map<unsigned, std::vector<double>>> samples;
    while (std::getline(csv_in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        const size_t needed = size_t(std::max({algo_col, threads_col, time_col})) + 1;
        if (fields.size() < needed) continue;
        const std::string& algo = fields[algo_col];
        if (!samples.count(algo)) algo_order.push_back(algo);
        samples[algo][unsigned(std::stoul(fields[threads_col]))].push_back(
            std::stod(fields[time_col]));
    }

    out << "algo,threads,median_wall_time,speedup\n";
    for (const auto& algo : algo_order) {
        const auto& by_threads = samples[algo];
        const auto base_it = by_threads.find(1);
        if (base_it == by_threads.end()) {
            log << "no threads=1 baseline for " << algo << ", skipped\n";
            continue;
        }
        const double base = median(base_it->second);
        for (const auto& [t, times] : by_threads) {
            const double m = median(times);
            char tbuf[64], sbuf[64];
            std::snprintf(tbuf, sizeof tbuf, "%.9f", m);
            std::snprintf(sbuf, sizeof sbuf, "%.4f", m > 0.0 ? base / m : 0.0);
            out << algo << ',' << t << ',' << tbuf << ',' << sbuf << '\n';
        }
    }
    return 0;
}

}  // namespace raduls
