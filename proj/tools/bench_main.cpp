// Benchmark and verification CLI for the record sorters.
//
//   raduls_bench --algo raduls,lsd1 --n 1000000 --threads 1,2,4 --verify
//   raduls_bench speedup results.csv
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
// or I/O error.
#include <exception>
#include <fstream>
#include <iostream>
#include <new>

#include <CLI11.hpp>

#include "raduls/bench.hpp"
#include "raduls/errors.hpp"

namespace {

int run_speedup(const std::string& path) {
    if (path == "-") return raduls::speedup_report(std::cin, std::cout, std::cerr);
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        return 3;
    }
    return raduls::speedup_report(in, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"benchmark harness for fixed-size record sorting"};

    raduls::BenchRequest req;
    std::string dist = "uniform";
    std::string verify_val;
    std::string csv_out = "stdout";

    app.add_option("--algo", req.algos, "algorithms to run: raduls, lsd1, lsd4, oracle")
        ->delimiter(',')
        ->check(CLI::IsMember({"raduls", "lsd1", "lsd4", "oracle"}));
    app.add_option("--n", req.n, "number of records to generate");
    app.add_option("--record-size", req.layout.record_size, "record size in bytes")
        ->check(CLI::IsMember({8, 16, 24, 32}));
    app.add_option("--key-size", req.layout.key_size, "key size in bytes")
        ->check(CLI::IsMember({8, 16}));
    app.add_option("--dist", dist, "key distribution")
        ->check(CLI::IsMember({"uniform", "zipf"}));
    app.add_option("--theta", req.theta, "Zipf exponent");
    app.add_option("--universe", req.universe, "distinct Zipf ranks");
    app.add_option("--seed", req.seed, "random seed");
    app.add_option("--threads", req.threads, "thread counts to sweep")
        ->delimiter(',')
        ->check(CLI::Range(1u, 1024u));
    app.add_option("--repeats", req.repeats, "repetitions per combination")
        ->check(CLI::Range(1u, 1000u));
    app.add_option("--input", req.input_path, "read records from a raw binary file");
    auto* vopt = app.add_option("--verify", verify_val,
                                "check each run: digest (sortedness + permutation digest) "
                                "or full (oracle comparison)")
                     ->expected(0, 1);
    app.add_option("--l2-bytes", req.l2_bytes, "assumed L2 cache size");
    app.add_option("--buffer-bytes", req.buffer_bytes, "staging bytes per digit lane")
        ->check(CLI::Range(size_t(8), size_t(1) << 20));
    app.add_option("--csv", csv_out, "CSV destination path, or 'stdout'");

    auto* speedup_cmd =
        app.add_subcommand("speedup", "relative speedup table from a results CSV");
    std::string speedup_csv;
    speedup_cmd->add_option("csv", speedup_csv, "results CSV path, or '-' for stdin")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*speedup_cmd) return run_speedup(speedup_csv);

        if (vopt->count() > 0) {
            if (verify_val.empty() || verify_val == "digest") {
                req.verify = raduls::VerifyMode::digest;
            } else if (verify_val == "full") {
                req.verify = raduls::VerifyMode::full;
            } else {
                std::cerr << "--verify accepts 'digest' or 'full'\n";
                return 2;
            }
        }
        if (!req.layout.valid()) {
            std::cerr << "invalid layout: key_size must not exceed record_size\n";
            return 2;
        }
        if (req.verify == raduls::VerifyMode::full && req.n > 100000000ULL) {
            std::cerr << "--verify=full supports at most 10^8 records\n";
            return 2;
        }
        req.dist = dist == "zipf" ? raduls::Distribution::zipf
                                  : raduls::Distribution::uniform;

        if (csv_out == "stdout") return raduls::run_bench(req, std::cout, std::cerr);
        std::ofstream out(csv_out);
        if (!out) throw raduls::io_error("cannot open " + csv_out + " for writing");
        return raduls::run_bench(req, out, std::cerr);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const raduls::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const raduls::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const raduls::format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return 3;
    }
}
