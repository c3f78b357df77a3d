#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "raduls/lsd.hpp"
#include "raduls/verify.hpp"
#include "test_util.hpp"

using namespace raduls;
using test_util::make_records;

TEST_CASE("check_sorted") {
    const RecordLayout l{16, 8};

    auto empty = make_records(l, 0, 1);
    CHECK(check_sorted(empty).ok);
    auto one = make_records(l, 1, 1);
    CHECK(check_sorted(one).ok);

    // keys [2, 1]: violation at index 0
    RecordArray two(l, 2);
    store_be64(two.record(0), 2);
    store_be64(two.record(0) + 8, 0);
    store_be64(two.record(1), 1);
    store_be64(two.record(1) + 8, 1);
    const auto r = check_sorted(two);
    CHECK_FALSE(r.ok);
    CHECK(r.first_violation == 0);

    // equal keys do not violate sortedness
    store_be64(two.record(0), 1);
    CHECK(check_sorted(two).ok);

    for (const auto& layout : test_util::all_layouts()) {
        auto sorted = test_util::ref_sorted(make_records(layout, 5000, 3, 100));
        CHECK(check_sorted(sorted).ok);
    }
}

TEST_CASE("digest is order independent and content sensitive") {
    const RecordLayout l{24, 8};
    auto a = make_records(l, 10000, 42, 50);
    const auto d = array_digest(a);

    // unchanged array
    CHECK(check_permutation(d, a.data(), a.size(), l));

    // any permutation digests equally
    auto shuffled = a.clone();
    std::mt19937_64 eng(1);
    for (size_t i = shuffled.size(); i > 1; --i) {
        const size_t j = eng() % i;
        for (uint32_t b = 0; b < l.record_size; ++b)
            std::swap(shuffled.record(i - 1)[b], shuffled.record(j)[b]);
    }
    CHECK(array_digest(shuffled) == d);

    // sorted permutation of the input
    CHECK(array_digest(test_util::ref_sorted(a)) == d);

    // a single flipped payload byte changes the digest
    auto tampered = a.clone();
    tampered.record(1234)[20] ^= 0x01;
    CHECK_FALSE(check_permutation(d, tampered.data(), tampered.size(), l));

    // losing a record changes the digest
    CHECK_FALSE(check_permutation(d, a.data(), a.size() - 1, l));

    // empty arrays digest equally
    CHECK(array_digest(RecordArray(l, 0)) == Digest128{});
}

TEST_CASE("oracle_sort is the stable reference") {
    const RecordLayout l{16, 8};

    auto empty = make_records(l, 0, 1);
    oracle_sort(empty);
    CHECK(empty.size() == 0);

    auto one = make_records(l, 1, 2);
    auto one_copy = one.clone();
    oracle_sort(one);
    CHECK(test_util::bytes_equal(one, one_copy));

    for (const auto& layout : test_util::all_layouts()) {
        auto a = make_records(layout, 20000, 99, 64);
        auto want = test_util::ref_sorted(a);
        oracle_sort(a);
        CHECK(test_util::bytes_equal(a, want));  // stable, so byte-identical
    }
}

TEST_CASE("oracle and lsd agree byte for byte") {
    const RecordLayout l{16, 8};
    auto input = make_records(l, 1000000, 17, 256);
    auto via_oracle = input.clone();
    oracle_sort(via_oracle);
    auto via_lsd = input.clone();
    lsd_sort(via_lsd, LsdConfig{64, 4});
    CHECK(test_util::bytes_equal(via_oracle, via_lsd));
}

TEST_CASE("verify report carries a mismatch index exactly on failure") {
    const SortedCheck ok{true, 0};
    const SortedCheck bad{false, 17};

    auto r = build_report(ok, true, std::nullopt, 100);
    CHECK(r.sorted_ok);
    CHECK(r.multiset_ok);
    CHECK_FALSE(r.stable_ok.has_value());
    CHECK_FALSE(r.mismatch_index.has_value());

    r = build_report(bad, true, std::nullopt, 100);
    CHECK_FALSE(r.sorted_ok);
    REQUIRE(r.mismatch_index.has_value());
    CHECK(*r.mismatch_index == 17);

    r = build_report(ok, false, std::nullopt, 100);
    CHECK_FALSE(r.multiset_ok);
    REQUIRE(r.mismatch_index.has_value());
    CHECK(*r.mismatch_index == 100);  // digest failures carry no location

    r = build_report(ok, true, std::make_pair(false, size_t(5)), 100);
    REQUIRE(r.stable_ok.has_value());
    CHECK_FALSE(*r.stable_ok);
    REQUIRE(r.mismatch_index.has_value());
    CHECK(*r.mismatch_index == 5);

    r = build_report(ok, true, std::make_pair(true, size_t(0)), 100);
    CHECK(*r.stable_ok);
    CHECK_FALSE(r.mismatch_index.has_value());
}
