#include "raduls/scheduler.hpp"

#include "raduls/detail/dispatch.hpp"
#include "raduls/detail/msd_sorter.hpp"

namespace raduls {

bool is_big_bin(size_t bin_size, size_t n, unsigned threads, const BigBinFraction& f) {
    if (threads < 1) threads = 1;
    // size > num * N / (den * T), kept exact in integers
    return (unsigned __int128)bin_size * f.den * threads > (unsigned __int128)f.num * n;
}

BinClassification classify_bins(std::span<const Bin> bins, size_t n, unsigned threads,
                                const BigBinFraction& f) {
    BinClassification out;
    for (const Bin& b : bins) {
        if (is_big_bin(b.size(), n, threads, f)) {
            out.big.push_back(b);
            out.big_records += b.size();
        } else {
            out.small.push_back(b);
        }
    }
    return out;
}

ThreadSplit split_threads(size_t big_records, size_t n, unsigned threads) {
    if (threads < 1) threads = 1;
    if (big_records == 0 || n == 0) return {0, threads};
    // ceil(1.25 * T * big / N) as ceil(5 * T * big / (4 * N))
    const unsigned __int128 num = (unsigned __int128)5 * threads * big_records;
    const unsigned __int128 den = (unsigned __int128)4 * n;
    auto t_big = unsigned((num + den - 1) / den);
    if (t_big < 1) t_big = 1;
    if (t_big > threads) t_big = threads;
    return {t_big, threads - t_big};
}

void sort(uint8_t* data, size_t n, const RecordLayout& layout, const SchedulerConfig& cfg) {
    detail::dispatch_layout(layout, [&](auto rb, auto kb) {
        detail::MsdSorter<rb(), kb()> sorter(data, n, cfg);
        sorter.run();
    });
}

}  // namespace raduls
