#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "raduls/bench.hpp"

using namespace raduls;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    return out;
}

// Fake clock: every call advances exactly one second. The harness reads the
// clock exactly twice per run, right around the sort call, so every row must
// report 1.0 seconds no matter how long generation, input copying or
// verification take.
MonotonicClock counting_clock(std::shared_ptr<int> calls) {
    return [calls]() {
        ++*calls;
        return std::chrono::nanoseconds(int64_t(*calls) * 1000000000);
    };
}

int run_cli(const std::string& args, std::string* out = nullptr) {
    const std::string cmd = std::string(RADULS_BENCH_BIN) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::string captured;
    while (size_t got = fread(buf, 1, sizeof buf, p)) captured.append(buf, got);
    const int status = pclose(p);
    if (out) *out = captured;
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("wall_time covers the sort call and nothing else") {
    BenchRequest req;
    req.algos = {"oracle", "raduls"};
    req.n = 5000;
    req.layout = {16, 8};
    req.threads = {1, 2};
    req.repeats = 2;
    req.verify = VerifyMode::full;  // verification work must not leak into the bracket

    auto calls = std::make_shared<int>(0);
    std::ostringstream csv, log;
    const int rc = run_bench(req, csv, log, counting_clock(calls));
    CHECK(rc == 0);

    const auto rows = lines_of(csv.str());
    REQUIRE(rows.size() == 9);  // header + 2 algos * 2 thread counts * 2 repeats
    CHECK(rows[0] == csv_header());
    CHECK(rows[0] ==
          "algo,n,record_size,key_size,distribution,threads,wall_time,verified,repeat_index");

    // Cartesian order: algos outermost, then threads, then repeats
    const std::vector<std::string> want_algo = {"oracle", "oracle", "oracle", "oracle",
                                                "raduls", "raduls", "raduls", "raduls"};
    const std::vector<std::string> want_threads = {"1", "1", "2", "2", "1", "1", "2", "2"};
    const std::vector<std::string> want_rep = {"0", "1", "0", "1", "0", "1", "0", "1"};
    for (size_t i = 0; i < 8; ++i) {
        const auto f = fields_of(rows[i + 1]);
        REQUIRE(f.size() == 9);
        CHECK(f[0] == want_algo[i]);
        CHECK(f[1] == "5000");
        CHECK(f[2] == "16");
        CHECK(f[3] == "8");
        CHECK(f[4] == "uniform");
        CHECK(f[5] == want_threads[i]);
        CHECK(std::stod(f[6]) == doctest::Approx(1.0));  // exactly two clock reads per run
        CHECK(f[7] == "true");
        CHECK(f[8] == want_rep[i]);
    }
    CHECK(*calls == 16);  // two reads per run, nothing more
}

TEST_CASE("identical requests produce identical data and rows under a fake clock") {
    BenchRequest req;
    req.algos = {"lsd1"};
    req.n = 2000;
    req.layout = {24, 8};
    req.dist = Distribution::zipf;
    req.universe = 1 << 12;
    req.seed = 99;
    req.threads = {2};
    req.repeats = 1;
    req.verify = VerifyMode::digest;

    std::ostringstream a, b, log;
    run_bench(req, a, log, counting_clock(std::make_shared<int>(0)));
    run_bench(req, b, log, counting_clock(std::make_shared<int>(0)));
    CHECK(a.str() == b.str());
}

TEST_CASE("zero records still emit a verified row") {
    BenchRequest req;
    req.algos = {"raduls"};
    req.n = 0;
    req.repeats = 1;
    req.verify = VerifyMode::digest;

    std::ostringstream csv, log;
    CHECK(run_bench(req, csv, log) == 0);
    const auto rows = lines_of(csv.str());
    REQUIRE(rows.size() == 2);
    const auto f = fields_of(rows[1]);
    CHECK(f[1] == "0");
    CHECK(f[7] == "true");
}

TEST_CASE("speedup report computes medians and flags missing baselines") {
    std::stringstream csv;
    csv << csv_header() << "\n";
    csv << "fast,100,16,8,uniform,1,10.0,true,0\n";
    csv << "fast,100,16,8,uniform,1,10.0,true,1\n";
    csv << "fast,100,16,8,uniform,2,5.0,true,0\n";
    csv << "fast,100,16,8,uniform,2,20.0,true,1\n";  // median of {5, 20} = 12.5
    csv << "nobase,100,16,8,uniform,2,1.0,true,0\n";

    std::ostringstream out, log;
    CHECK(speedup_report(csv, out, log) == 0);
    const auto rows = lines_of(out.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "algo,threads,median_wall_time,speedup");
    auto f1 = fields_of(rows[1]);
    CHECK(f1[0] == "fast");
    CHECK(f1[1] == "1");
    CHECK(std::stod(f1[3]) == doctest::Approx(1.0));
    auto f2 = fields_of(rows[2]);
    CHECK(f2[1] == "2");
    CHECK(std::stod(f2[2]) == doctest::Approx(12.5));
    CHECK(std::stod(f2[3]) == doctest::Approx(0.8));
    CHECK(log.str().find("nobase") != std::string::npos);
}

TEST_CASE("cli end to end") {
    std::string out;

    // verified run over two algorithms
    int rc = run_cli("--algo raduls,lsd1 --n 20000 --record-size 16 --key-size 8 "
                     "--threads 1,2 --repeats 1 --seed 7 --verify", &out);
    CHECK(rc == 0);
    auto rows = lines_of(out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == csv_header());

    // full verification spelled with '='
    rc = run_cli("--algo raduls --n 5000 --verify=full --repeats 1 --seed 3", &out);
    CHECK(rc == 0);

    // unknown algorithm is a usage error
    rc = run_cli("--algo bogus --n 10");
    CHECK(rc == 2);

    // key larger than record is a usage error
    rc = run_cli("--algo raduls --n 10 --record-size 8 --key-size 16");
    CHECK(rc == 2);

    // unreadable input file is a resource error
    rc = run_cli("--algo raduls --input /nonexistent/file.bin");
    CHECK(rc == 3);

    // malformed input file (size not a record multiple) is a resource error
    namespace fs = std::filesystem;
    const auto bad = fs::temp_directory_path() / "raduls_cli_bad.bin";
    {
        std::ofstream f(bad, std::ios::binary);
        f.write("12345", 5);
    }
    rc = run_cli("--algo raduls --input " + bad.string());
    CHECK(rc == 3);
    fs::remove(bad);

    // speedup subcommand over a real run
    const auto csv_path = fs::temp_directory_path() / "raduls_cli_run.csv";
    rc = run_cli("--algo raduls --n 10000 --threads 1,2 --repeats 3 --seed 1 --csv " +
                 csv_path.string());
    CHECK(rc == 0);
    rc = run_cli("speedup " + csv_path.string(), &out);
    CHECK(rc == 0);
    rows = lines_of(out);
    REQUIRE(rows.size() >= 3);
    CHECK(rows[0] == "algo,threads,median_wall_time,speedup");
    CHECK(fields_of(rows[1])[0] == "raduls");
    fs::remove(csv_path);
}
