#include "raduls/datagen.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "raduls/errors.hpp"

namespace raduls {

namespace {

constexpr size_t kShardRecords = size_t(1) << 20;
constexpr uint64_t kMaxUniverse = uint64_t(1) << 26;

// Fully deterministic canonical double in [0, 1): mt19937_64 output is
// pinned by the standard, unlike uniform_real_distribution.
inline double canonical(std::mt19937_64& eng) {
    return double(eng() >> 11) * 0x1.0p-53;
}

struct ZipfTable {
    std::vector<double> cdf;  // cdf[i] = sum of r^-theta for r = 1..i+1

    uint64_t sample(double u) const {
        const double x = u * cdf.back();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
        const size_t idx = size_t(it - cdf.begin());
        return std::min<uint64_t>(idx + 1, cdf.size());
    }
};

ZipfTable build_zipf_table(uint64_t universe, double theta) {
    ZipfTable t;
    t.cdf.resize(universe);
    double run = 0.0;
    for (uint64_t r = 1; r <= universe; ++r) {
        run += std::pow(double(r), -theta);
        t.cdf[r - 1] = run;
    }
    return t;
}

void validate(const GenSpec& spec) {
    if (!spec.layout.valid()) throw std::invalid_argument("unsupported record layout");
    if (spec.dist == Distribution::zipf) {
        if (!(spec.theta > 0.0)) throw std::invalid_argument("Zipf theta must be positive");
        if (spec.universe < 1 || spec.universe > kMaxUniverse)
            throw std::invalid_argument("Zipf universe must be in [1, 2^26]");
    }
}

void fill_shard(RecordArray& out, const GenSpec& spec, const ZipfTable* zipf, size_t shard) {
    const size_t begin = shard * kShardRecords;
    const size_t end = std::min(out.size(), begin + kShardRecords);
    std::mt19937_64 eng(mix64(spec.seed + 0x9e3779b97f4a7c15ULL * (shard + 1)));

    const uint32_t key_words = spec.layout.key_size / 8;
    const uint32_t record_words = spec.layout.record_size / 8;
    for (size_t i = begin; i < end; ++i) {
        uint8_t* rec = out.record(i);
        if (spec.dist == Distribution::uniform) {
            for (uint32_t w = 0; w < key_words; ++w) store_be64(rec + 8 * w, eng());
        } else {
            const uint64_t rank = zipf->sample(canonical(eng));
            store_be64(rec, zipf_key_word(rank));
            if (key_words == 2) store_be64(rec + 8, zipf_key_word_lo(rank));
        }
        for (uint32_t w = key_words; w < record_words; ++w) {
            if (w == key_words)
                store_be64(rec + 8 * w, uint64_t(i));
            else
                store_be64(rec + 8 * w, mix64(uint64_t(i) ^ (0xa5a5a5a5a5a5a5a5ULL + w)));
        }
    }
}

}  // namespace

RecordArray generate(const GenSpec& spec, unsigned threads) {
    validate(spec);
    RecordArray out(spec.layout, spec.n);
    if (spec.n == 0) return out;

    ZipfTable zipf;
    if (spec.dist == Distribution::zipf) zipf = build_zipf_table(spec.universe, spec.theta);
    const ZipfTable* zp = spec.dist == Distribution::zipf ? &zipf : nullptr;

    const size_t n_shards = (spec.n + kShardRecords - 1) / kShardRecords;
    if (threads < 1) threads = 1;
    threads = unsigned(std::min<size_t>(threads, n_shards));

    if (threads == 1) {
        for (size_t s = 0; s < n_shards; ++s) fill_shard(out, spec, zp, s);
        return out;
    }

    std::atomic<size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            const size_t s = cursor.fetch_add(1, std::memory_order_relaxed);
            if (s >= n_shards) return;
            fill_shard(out, spec, zp, s);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

RecordArray load_file(const std::string& path, const RecordLayout& layout) {
    if (!layout.valid()) throw std::invalid_argument("unsupported record layout");
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw io_error("cannot open " + path);
    const auto bytes = in.tellg();
    if (bytes < 0) throw io_error("cannot determine size of " + path);
    if (uint64_t(bytes) % layout.record_size != 0)
        throw format_error(path + ": size " + std::to_string(bytes) +
                           " is not a multiple of record_size " +
                           std::to_string(layout.record_size));
    RecordArray out(layout, size_t(bytes) / layout.record_size);
    in.seekg(0);
    if (!out.empty() && !in.read(reinterpret_cast<char*>(out.data()), bytes))
        throw io_error("short read from " + path);
    return out;
}

void save_file(const std::string& path, const RecordArray& array) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path + " for writing");
    if (!array.empty() &&
        !out.write(reinterpret_cast<const char*>(array.data()),
                   std::streamsize(array.byte_size())))
        throw io_error("short write to " + path);
}

}  // namespace raduls
