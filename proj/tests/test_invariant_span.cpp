#include <doctest.h>

#include <algorithm>

#include "localinv/errors.hpp"
#include "localinv/invariant_span.hpp"
#include "oracles.hpp"

using namespace localinv;

namespace {

std::vector<Permutation> all_perms(std::size_t m) {
    std::vector<int> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = static_cast<int>(i) + 1;
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_one_line(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

// Permutations of S_m with no decreasing subsequence longer than d: the
// dimension of the image of C[S_m] on (C^d)^{(x)m}.
std::size_t bounded_decreasing(std::size_t m, std::size_t d) {
    std::size_t count = 0;
    for (const auto& p : all_perms(m)) {
        const auto w = p.one_line();
        std::vector<std::size_t> best(m, 1);
        std::size_t longest = 0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (w[j] > w[i]) best[i] = std::max(best[i], best[j] + 1);
            }
            longest = std::max(longest, best[i]);
        }
        if (longest <= d) ++count;
    }
    return count;
}

// Number of monomials of bidegree (a,b) in five free generators of
// bidegrees (1,0),(0,1),(2,0),(1,1),(0,2).
std::size_t free_pair_invariants(int a, int b) {
    std::size_t count = 0;
    for (int x2 = 0; 2 * x2 <= a; ++x2) {
        for (int xy = 0; 2 * x2 + xy <= a && xy <= b; ++xy) {
            for (int y2 = 0; 2 * y2 + xy <= b; ++y2) ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("rho is a homomorphism and commutes with mu") {
    const DimensionVector d({2, 2});
    const auto perms = all_perms(3);
    for (const auto& p : perms) {
        for (const auto& q : perms) {
            const auto lhs = rho_matrix({compose(p, q), q}, d, 3);
            const auto rhs = rho_matrix({p, q}, d, 3) * rho_matrix({q, Permutation::identity(3)}, d, 3);
            CHECK(lhs == rhs);
        }
    }
    const auto g = random_group_element(d, 5);
    const auto mu = mu_matrix(g, 2);
    for (const auto& p : all_perms(2)) {
        const auto r = rho_matrix({p, Permutation::identity(2)}, d, 2);
        CHECK(r * mu == mu * r);
    }
}

TEST_CASE("rho of a transposition on C^2 (x) C^2 is the swap") {
    const auto r = rho_matrix({Permutation::parse_cycles("(1 2)", 2)}, DimensionVector({2}), 2);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t u = 0; u < 4; ++u) CHECK(r(u, a * 2 + b) == (u == b * 2 + a ? 1 : 0));
        }
    }
}

TEST_CASE("mu is a homomorphism") {
    const DimensionVector d({2, 3});
    const auto g = random_group_element(d, 1);
    const auto h = random_group_element(d, 2);
    LocalGroupElement gh;
    for (std::size_t i = 0; i < 2; ++i) gh.factors.push_back(g.factors[i] * h.factors[i]);
    CHECK(mu_matrix(gh, 2) == mu_matrix(g, 2) * mu_matrix(h, 2));
}

TEST_CASE("one factor: span and commutant match the RSK count") {
    for (std::size_t dd = 1; dd <= 3; ++dd) {
        for (int m = 1; m <= 4; ++m) {
            if (dd == 3 && m == 4) continue;
            const DimensionVector d({static_cast<int>(dd)});
            const auto expected = bounded_decreasing(static_cast<std::size_t>(m), dd);
            CHECK(span_dimension_rho(d, m) == expected);
            if (m <= 3) CHECK(commutant_dimension_mu(d, m) == expected);
        }
    }
}

TEST_CASE("span and commutant factor over tensor factors") {
    for (const auto& dims : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {3, 2}}) {
        const DimensionVector d(dims);
        for (int m = 1; m <= 2; ++m) {
            const auto product = bounded_decreasing(m, dims[0]) * bounded_decreasing(m, dims[1]);
            CHECK(span_dimension_rho(d, m) == product);
            CHECK(commutant_dimension_mu(d, m) == product);
        }
    }
    CHECK(span_dimension_rho(DimensionVector({2, 2}), 3) == 25);
}

TEST_CASE("one matrix: invariants are polynomials in Tr(A^i), i <= d") {
    for (int dd = 1; dd <= 3; ++dd) {
        const DimensionVector d({dd});
        for (int k = 0; k <= 4; ++k) {
            if (dd == 3 && k == 4) continue;
            const MultiDegree alpha{{k}};
            const auto expected = oracle::partitions_bounded(k, dd);
            CHECK(invariant_space_dimension(alpha, d, 1) == expected);
            CHECK(trace_span_dimension(alpha, d, 1) == expected);
        }
    }
}

TEST_CASE("two 2x2 matrices: five free generators") {
    const DimensionVector d({2});
    for (int a = 0; a <= 3; ++a) {
        for (int b = 0; b <= 3 - a; ++b) {
            const MultiDegree alpha{{a, b}};
            CHECK(invariant_space_dimension(alpha, d, 2) == free_pair_invariants(a, b));
            CHECK(trace_span_dimension(alpha, d, 2) == free_pair_invariants(a, b));
        }
    }
}

TEST_CASE("small local cases") {
    const DimensionVector d({2, 2});
    CHECK(invariant_space_dimension(MultiDegree{{0}}, d, 1) == 1);
    CHECK(invariant_space_dimension(MultiDegree{{1}}, d, 1) == 1);
    CHECK(invariant_space_dimension(MultiDegree{{2}}, d, 1) == 4);
    CHECK(invariant_space_dimension(MultiDegree{{1, 1}}, d, 2) == 4);
    const auto report = verify_generation(MultiDegree{{2, 1}}, d, 2);
    CHECK(report.oracle_dim == 13);
    CHECK(report.span_dim == 13);
    CHECK(report.match);
    CHECK(report.seed == kDefaultSeed);
    CHECK(report.samples >= report.span_dim);
}

TEST_CASE("trace span is deterministic and seed independent") {
    const DimensionVector d({2, 2});
    const MultiDegree alpha{{3}};
    const auto a = trace_span(alpha, d, 1, 7);
    const auto b = trace_span(alpha, d, 1, 7);
    CHECK(a.dimension == b.dimension);
    CHECK(a.samples == b.samples);
    CHECK(trace_span(alpha, d, 1, 8).dimension == a.dimension);
}

TEST_CASE("evaluation rank of explicit lists") {
    const DimensionVector d({2, 2});
    const auto gens = enumerate_generators(MultiDegree{{2}}, d);
    std::vector<TraceMonomial> doubled = gens;
    doubled.insert(doubled.end(), gens.begin(), gens.end());
    CHECK(evaluation_rank(doubled, d, 1, 3, 32) == evaluation_rank(gens, d, 1, 3, 32));
    CHECK(evaluation_rank({}, d, 1, 3, 4) == 0);
}

TEST_CASE("guard refuses large systems") {
    const DimensionVector d({3, 3});
    const MultiDegree alpha{{3, 3}};
    REQUIRE(invariant_system_size(alpha, d).weight_zero > kMonomialGuard);
    CHECK_THROWS_AS(invariant_space_dimension(alpha, d, 2), GuardError);
    CHECK_THROWS_AS(span_dimension_rho(DimensionVector({4, 4}), 3), GuardError);
}
