#include <doctest.h>

#include "localinv/perm.hpp"
#include "localinv/trace_monomial.hpp"
#include "oracles.hpp"

using namespace localinv;

namespace {

Permutation P(std::vector<int> v) { return Permutation::from_one_line(v); }

}  // namespace

TEST_CASE("cycle decomposition examples") {
    CHECK(cycle_decomposition(Permutation::identity(3)).to_string() == "(1)(2)(3)");
    CHECK(cycle_decomposition(P({2, 1, 3})).to_string() == "(1 2)(3)");
    CHECK(cycle_decomposition(P({2, 3, 1})).to_string() == "(1 2 3)");
    CHECK(cycle_decomposition(P({2, 3, 1})).to_compact_string() == "(123)");
    CHECK(cycle_decomposition(Permutation::identity(2)).to_compact_string() == "id");
}

TEST_CASE("malformed one-line notation is rejected") {
    CHECK_THROWS_AS(P({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(P({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(P({1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::parse_cycles("(1 4)", 3), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::parse_cycles("(1 2)(2 3)", 3), std::invalid_argument);
}

TEST_CASE("compose and inverse") {
    CHECK(compose(P({2, 1}), P({2, 1})) == Permutation::identity(2));
    CHECK(inverse(P({2, 3, 1})) == P({3, 1, 2}));
    const auto p = P({3, 1, 4, 2});
    CHECK(compose(p, Permutation::identity(4)) == p);
    CHECK_THROWS_AS(compose(p, Permutation::identity(3)), std::invalid_argument);
    // (p o q)(x) = p(q(x))
    const auto q = P({2, 4, 1, 3});
    const auto pq = compose(p, q);
    for (std::size_t x = 0; x < 4; ++x) CHECK(pq(x) == p(q(x)));
}

TEST_CASE("every permutation of S_5 round-trips") {
    for (const auto& p : all_permutations(5)) {
        CHECK(compose(p, inverse(p)) == Permutation::identity(5));
        const auto c = cycle_decomposition(p);
        CHECK(Permutation::from_cycles(c.cycles, 5) == p);
        CHECK(Permutation::parse_cycles(c.to_string(), 5) == p);
        std::size_t covered = 0;
        for (const auto& cyc : c.cycles) {
            covered += cyc.size();
            CHECK(cyc.front() == *std::min_element(cyc.begin(), cyc.end()));
        }
        CHECK(covered == 5);
        for (std::size_t i = 1; i < c.cycles.size(); ++i) CHECK(c.cycles[i - 1].front() < c.cycles[i].front());
    }
}

TEST_CASE("cycle parsing shorthands") {
    CHECK(Permutation::parse_cycles("id", 3) == Permutation::identity(3));
    CHECK(Permutation::parse_cycles("()", 2) == Permutation::identity(2));
    CHECK(Permutation::parse_cycles("(1 3)", 3) == P({3, 2, 1}));
}

TEST_CASE("euler totient") {
    CHECK(euler_totient(1) == 1);
    CHECK(euler_totient(2) == 1);
    CHECK(euler_totient(12) == 4);
    for (std::uint64_t n = 1; n <= 200; ++n) CHECK(euler_totient(n) == oracle::totient_by_gcd(n));
}

TEST_CASE("necklace counts against rotation orbits") {
    for (std::uint64_t k = 1; k <= 10; ++k) CHECK(necklace_count(1, k) == 1);
    CHECK(necklace_count(2, 2) == 3);
    CHECK(necklace_count(2, 3) == 4);
    for (int m = 1; m <= 3; ++m) {
        for (int k = 1; k <= 6; ++k) {
            const auto brute = oracle::necklaces_by_rotation(m, k);
            CHECK(necklace_count(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k)) == brute);
            CHECK(enumerate_necklaces(m, k).size() == brute);
        }
    }
}

TEST_CASE("necklace representatives") {
    CHECK(enumerate_necklaces(1, 3) == std::vector<std::vector<int>>{{1, 1, 1}});
    CHECK(enumerate_necklaces(2, 2) == std::vector<std::vector<int>>{{1, 1}, {1, 2}, {2, 2}});
    const auto four = enumerate_necklaces(2, 4);
    CHECK(std::is_sorted(four.begin(), four.end()));
    for (const auto& w : four) {
        auto r = w;
        for (std::size_t s = 0; s < w.size(); ++s) {
            std::rotate(r.begin(), r.begin() + 1, r.end());
            CHECK(w <= r);
        }
    }
}

TEST_CASE("totient sum is divisible by k") {
    for (std::uint64_t m = 1; m <= 5; ++m) {
        for (std::uint64_t k = 1; k <= 12; ++k) CHECK_NOTHROW(necklace_count(m, k));
    }
}

TEST_CASE("multisets, multidegrees and dimension vectors") {
    OrderedMultiset M{{1, 2, 1, 3}, 3};
    CHECK_NOTHROW(M.validate());
    CHECK(multidegree_of(M).degrees == std::vector<int>{2, 1, 1});
    CHECK(multidegree_of(M).total() == 4);
    CHECK_THROWS_AS((OrderedMultiset{{1, 4}, 3}.validate()), std::invalid_argument);
    CHECK(DimensionVector({2, 3}).total() == 6);
    CHECK_THROWS_AS(DimensionVector({2, 0}), std::invalid_argument);
    CHECK(parse_int_list("2, 3 ,4") == std::vector<int>{2, 3, 4});
    CHECK_THROWS_AS(parse_int_list("2,,3"), std::invalid_argument);
}
