#include <doctest.h>

#include "localinv/tensor_eval.hpp"
#include "oracles.hpp"

using namespace localinv;

namespace {

TraceMonomial T(std::vector<int> M, std::vector<std::string> sigma) {
    TraceMonomial t;
    t.M.entries = std::move(M);
    t.M.m = *std::max_element(t.M.entries.begin(), t.M.entries.end());
    for (const auto& s : sigma) t.sigma.push_back(Permutation::parse_cycles(s, t.M.entries.size()));
    return t;
}

Matrix M2(std::vector<std::vector<int>> rows) {
    Matrix out(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) out(r, c) = rows[r][c];
    }
    return out;
}

const DimensionVector d22({2, 2});

}  // namespace

TEST_CASE("evaluate_simple on a single matrix") {
    const std::vector<SimpleEndo> a{SimpleEndo{{M2({{1, 2}, {3, 4}})}}};
    CHECK(evaluate_simple(T({1}, {"id"}), a) == 5);
    CHECK(evaluate_simple(T({1, 1}, {"(1 2)"}), a) == trace(oracle::power(a[0].factors[0], 2)));
    CHECK(evaluate_simple(T({1, 1}, {"id"}), a) == 25);
}

TEST_CASE("identity inputs give prod d_i^cycles") {
    const DimensionVector d23({2, 3});
    for (const auto& alpha : std::vector<std::vector<int>>{{3}, {2, 1}, {4}}) {
        for (const auto& t : enumerate_generators(MultiDegree{alpha}, d23)) {
            const auto e = identity_endotuple(d23, static_cast<int>(alpha.size()));
            Integer expected = 1;
            for (std::size_t i = 0; i < 2; ++i) {
                for (std::size_t c = 0; c < t.sigma[i].cycle_count(); ++c) expected *= d23[i];
            }
            CHECK(evaluate(t, e) == Scalar(expected));
            CHECK(identity_value(t, d23) == expected);
        }
    }
}

TEST_CASE("n = 1 reduces to classical traces") {
    const DimensionVector d3({3});
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto e = random_endotuple(d3, 2, s);
        const auto& A = e.members[0].entries;
        const auto& B = e.members[1].entries;
        CHECK(evaluate(T({1, 1}, {"(1 2)"}), e) == trace(A * A));
        CHECK(evaluate(T({1, 2, 1}, {"(1 2 3)"}), e) == trace(A * B * A));
        CHECK(evaluate(T({1, 1, 2}, {"(1 2)(3)"}), e) == trace(A * A) * trace(B));
        // cyclic rotation of the word
        CHECK(evaluate(T({1, 2, 2}, {"(1 2 3)"}), e) == evaluate(T({2, 2, 1}, {"(1 2 3)"}), e));
    }
}

TEST_CASE("factoring pair on dense inputs via partial traces") {
    const auto t = T({1, 2, 1}, {"(1 2)", "(2 3)"});
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto e = random_endotuple(d22, 2, 40 + s);
        const auto& A1 = e.members[0].entries;
        const auto& A2 = e.members[1].entries;
        const auto P = oracle::partial_trace(A1, 2, 2, 0);
        const auto Q = oracle::partial_trace(A1, 2, 2, 1);
        CHECK(evaluate(t, e) == trace(A2 * kron(P, Q)));
    }
}

TEST_CASE("evaluate agrees with evaluate_simple on Kronecker inputs") {
    for (const auto& alpha : std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 1}, {2, 1}}) {
        const int m = static_cast<int>(alpha.size());
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto simple = random_simple_endos(d22, m, 500 + s);
            const auto dense = kron_expand(std::span<const SimpleEndo>(simple));
            for (const auto& t : enumerate_generators(MultiDegree{alpha}, d22)) {
                CHECK(evaluate(t, dense) == evaluate_simple(t, simple));
            }
        }
    }
}

TEST_CASE("kron_expand") {
    const SimpleEndo ii{{Matrix::identity(2), Matrix::identity(2)}};
    CHECK(kron_expand(ii).entries == Matrix::identity(4));
    const SimpleEndo ab{{M2({{1, 2}, {3, 4}}), M2({{0, 1}, {1, 0}})}};
    const auto e = kron_expand(ab).entries;
    // row (r0, r1), column (c0, c1), factor 1 outermost
    CHECK(e(0 * 2 + 1, 1 * 2 + 0) == 2 * 1);
    CHECK(e(1 * 2 + 0, 0 * 2 + 0) == 3 * 0);
    CHECK(e(1 * 2 + 1, 0 * 2 + 0) == 3 * 1);
}

TEST_CASE("random generators are deterministic") {
    CHECK(random_endotuple(d22, 2, 9).members[1].entries == random_endotuple(d22, 2, 9).members[1].entries);
    CHECK(random_endotuple(d22, 1, 9).members[0].entries != random_endotuple(d22, 1, 10).members[0].entries);
    const auto g = random_group_element(d22, 4);
    for (const auto& f : g.factors) CHECK(determinant(f) != 0);
    CHECK(random_group_element(d22, 4).factors == g.factors);
}

TEST_CASE("local conjugation") {
    const auto e = random_endotuple(d22, 2, 1);
    const LocalGroupElement id{{Matrix::identity(2), Matrix::identity(2)}};
    CHECK(local_conjugate(e, id).members[0].entries == e.members[0].entries);
    const LocalGroupElement central{{Matrix::scalar(2, Scalar(3)), Matrix::scalar(2, Scalar(-1, 2))}};
    CHECK(local_conjugate(e, central).members[1].entries == e.members[1].entries);
    const LocalGroupElement singular{{M2({{1, 2}, {2, 4}}), Matrix::identity(2)}};
    CHECK_THROWS_AS(local_conjugate(e, singular), std::domain_error);
}

TEST_CASE("twenty random invariance checks") {
    const auto pool = enumerate_generators(MultiDegree{{2, 1}}, d22);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto& t = pool[s % pool.size()];
        const auto e = random_endotuple(d22, 2, 1000 + s);
        const auto g = random_group_element(d22, 2000 + s);
        CHECK(evaluate(t, local_conjugate(e, g)) == evaluate(t, e));
    }
}

TEST_CASE("a non-local conjugation breaks some invariants") {
    // the swap of the two tensor factors is in GL(V) but not GL_2 x GL_2
    Matrix swap(4, 4);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) swap(a * 2 + b, b * 2 + a) = 1;
    }
    const auto t = T({1, 1}, {"(1 2)", "id"});
    const auto e = random_endotuple(d22, 1, 77);
    Endomorphism moved{d22, swap * e.members[0].entries * swap};
    EndoTuple f{d22, {moved}};
    CHECK(evaluate(t, f) != evaluate(t, e));
}

TEST_CASE("multilinearity in a degree-one argument") {
    const auto t = T({1, 2, 1}, {"(1 2 3)", "(2 3)"});
    const auto e = random_endotuple(d22, 2, 5);
    const auto f = random_endotuple(d22, 2, 6);
    const Scalar a(3, 2);
    const Scalar b(-2);
    EndoTuple mixed = e;
    mixed.members[1].entries = a * e.members[1].entries + b * f.members[1].entries;
    EndoTuple other = e;
    other.members[1] = f.members[1];
    CHECK(evaluate(t, mixed) == a * evaluate(t, e) + b * evaluate(t, other));
}

TEST_CASE("homogeneity") {
    const auto t = T({1, 2, 1}, {"(1 2)", "(2 3)"});
    const auto e = random_endotuple(d22, 2, 8);
    EndoTuple scaled = e;
    scaled.members[0].entries = Scalar(2) * e.members[0].entries;
    scaled.members[1].entries = Scalar(3) * e.members[1].entries;
    CHECK(evaluate(t, scaled) == Scalar(2 * 2 * 3) * evaluate(t, e));
}

TEST_CASE("empty monomial and input errors") {
    const auto e = random_endotuple(d22, 1, 2);
    CHECK(evaluate(empty_monomial(2, 1), e) == 1);
    CHECK_THROWS_AS(evaluate(T({1, 2}, {"id", "id"}), e), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(T({1}, {"id"}), e), std::invalid_argument);
}
