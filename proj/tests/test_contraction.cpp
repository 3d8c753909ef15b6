#include <doctest.h>

#include <cmath>

#include "localinv/contraction.hpp"
#include "localinv/simd.hpp"

using namespace localinv;

namespace {

TraceMonomial T(std::vector<int> M, std::vector<std::string> sigma) {
    TraceMonomial t;
    t.M.entries = std::move(M);
    t.M.m = *std::max_element(t.M.entries.begin(), t.M.entries.end());
    for (const auto& s : sigma) t.sigma.push_back(Permutation::parse_cycles(s, t.M.entries.size()));
    return t;
}

const DimensionVector d22({2, 2});

}  // namespace

TEST_CASE("single position is one trace step") {
    const auto plan = plan_contraction(T({1}, {"id", "id"}), d22);
    REQUIRE(plan.steps.size() == 1);
    CHECK(plan.steps[0].right == ContractionStep::kNone);
    CHECK(plan.steps[0].result_size == 1);
}

TEST_CASE("a k-cycle on one factor is a left-to-right chain") {
    for (int d = 2; d <= 3; ++d) {
        const DimensionVector dv({d});
        for (std::size_t k = 2; k <= 4; ++k) {
            TraceMonomial t;
            t.M.entries.assign(k, 1);
            t.M.m = 1;
            std::vector<int> images(k);
            for (std::size_t p = 0; p < k; ++p) images[p] = static_cast<int>((p + 1) % k) + 1;
            t.sigma.push_back(Permutation::from_one_line(images));
            const auto plan = plan_contraction(t, dv);
            // with two positions the only step already closes the trace
            CHECK(plan.peak_size == (k == 2 ? 1u : static_cast<std::uint64_t>(d * d)));
            REQUIRE(plan.steps.size() == k - 1);
            CHECK(plan.steps[0].cover == std::vector<std::size_t>{0, 1});
            for (std::size_t s = 1; s < plan.steps.size(); ++s) {
                CHECK(plan.steps[s].left == plan.steps[s - 1].result);
                CHECK(plan.steps[s].right == s + 1);
            }
            CHECK(plan.total_cost == optimal_plan(t, dv).total_cost);
        }
    }
}

TEST_CASE("plans are valid, no worse than naive, and bounded below by the optimum") {
    bool strictly_better = false;
    for (const auto& alpha : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}}) {
        for (const auto& t : enumerate_generators(MultiDegree{alpha}, d22)) {
            const auto plan = plan_contraction(t, d22);
            CHECK_NOTHROW(check_plan(plan, t, d22));
            CHECK(plan.total_cost <= naive_cost(t, d22));
            strictly_better = strictly_better || plan.total_cost < naive_cost(t, d22);
            const auto best = optimal_plan(t, d22);
            CHECK_NOTHROW(check_plan(best, t, d22));
            CHECK(best.total_cost <= plan.total_cost);
        }
    }
    CHECK(strictly_better);
}

TEST_CASE("planned evaluation equals the naive sum") {
    for (const auto& alpha : std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 1}, {2, 1}, {1, 1, 1}}) {
        const int m = static_cast<int>(alpha.size());
        const auto e = random_endotuple(d22, m, 17);
        const auto id = identity_endotuple(d22, m);
        const auto simple = random_simple_endos(d22, m, 18);
        const auto dense = kron_expand(std::span<const SimpleEndo>(simple));
        for (const auto& t : enumerate_generators(MultiDegree{alpha}, d22)) {
            const auto plan = plan_contraction(t, d22);
            CHECK(evaluate_with_plan(t, e, plan) == evaluate(t, e));
            CHECK(evaluate_with_plan(t, id, plan) == Scalar(identity_value(t, d22)));
            CHECK(evaluate_with_plan(t, dense, plan) == evaluate_simple(t, simple));
            CHECK(evaluate_with_plan(t, e, optimal_plan(t, d22)) == evaluate(t, e));
        }
    }
}

TEST_CASE("uneven dimensions") {
    const DimensionVector d23({2, 3});
    const auto e = random_endotuple(d23, 2, 4);
    for (const auto& t : enumerate_generators(MultiDegree{{2, 1}}, d23)) {
        CHECK(evaluate_with_plan(t, e, plan_contraction(t, d23)) == evaluate(t, e));
    }
}

TEST_CASE("plan mismatch is rejected") {
    const auto a = T({1, 1}, {"(1 2)", "id"});
    const auto b = T({1, 1}, {"id", "(1 2)"});
    const auto plan = plan_contraction(a, d22);
    CHECK_THROWS_AS(evaluate_with_plan(b, random_endotuple(d22, 1, 1), plan), std::invalid_argument);
    CHECK_THROWS_AS(check_plan(plan, a, DimensionVector({2, 3})), std::invalid_argument);
    auto broken = plan;
    broken.steps.pop_back();
    CHECK_THROWS_AS(check_plan(broken, a, d22), std::invalid_argument);
}

TEST_CASE("double-precision path tracks the exact value") {
    const auto e = random_endotuple(d22, 2, 99);
    for (const auto& t : enumerate_generators(MultiDegree{{2, 2}}, d22)) {
        const auto plan = plan_contraction(t, d22);
        const double exact = evaluate(t, e).get_d();
        CHECK(evaluate_with_plan_f64(t, e, plan) == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("SIMD GEMM matches the scalar kernel") {
    if (!simd::isa_available(simd::Isa::avx2)) {
        MESSAGE("AVX2 not available; scalar kernel only");
        return;
    }
    SeededRng rng(3);
    for (std::size_t m : {1, 3, 4, 7}) {
        for (std::size_t n : {1, 2, 4, 5, 8, 13}) {
            for (std::size_t k : {1, 4, 9}) {
                std::vector<double> a(m * k);
                std::vector<double> b(k * n);
                for (auto& x : a) x = static_cast<double>(rng.uniform(-8, 8));
                for (auto& x : b) x = static_cast<double>(rng.uniform(-8, 8));
                std::vector<double> c1(m * n, 1.0);
                std::vector<double> c2(m * n, 1.0);
                simd::gemm_f64_scalar(m, n, k, a.data(), b.data(), c1.data());
                simd::gemm_f64_avx2(m, n, k, a.data(), b.data(), c2.data());
                // small integers: both kernels are exact, so bitwise equal
                CHECK(c1 == c2);
                for (auto& x : a) x = static_cast<double>(rng.uniform(-1000, 1000)) / 7.0;
                std::fill(c1.begin(), c1.end(), 0.0);
                std::fill(c2.begin(), c2.end(), 0.0);
                simd::gemm_f64_scalar(m, n, k, a.data(), b.data(), c1.data());
                simd::gemm_f64_avx2(m, n, k, a.data(), b.data(), c2.data());
                for (std::size_t i = 0; i < c1.size(); ++i) CHECK(c2[i] == doctest::Approx(c1[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("dispatch honours the override") {
    CHECK(simd::isa_available(simd::Isa::scalar));
    CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
    CHECK(simd::isa_name(simd::Isa::avx2) == "avx2");
}
