#pragma once

#include <cstdint>
#include <vector>

#include "localinv/tensor_eval.hpp"

namespace localinv {

/// One pairwise merge (or, for a lone tensor, a full trace). Tensor ids
/// 0..|M|-1 are the positions; each step creates id |M| + step index.
struct ContractionStep {
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    std::size_t left = 0;
    std::size_t right = kNone;
    std::size_t result = 0;
    /// Positions absorbed into the result, ascending.
    std::vector<std::size_t> cover;
    /// Open edges of the result (edge id = factor * |M| + position).
    std::vector<std::size_t> open_edges;
    /// Product of the dimensions of every edge touched by the step.
    std::uint64_t cost = 0;
    std::uint64_t result_size = 0;
};

/// Wiring graph of Tr^M_sigma: the column leg of position p on factor i
/// and the row leg of sigma_i(p) share edge i*|M| + p of dimension d_i.
struct ContractionPlan {
    std::vector<int> monomial_key;
    std::vector<int> dims;
    std::size_t leaves = 0;
    std::vector<ContractionStep> steps;
    std::uint64_t total_cost = 0;
    std::uint64_t peak_size = 0;
};

/// Greedy: repeatedly merge the pair whose result is smallest, ties broken
/// by the lexicographically smaller cover.
ContractionPlan plan_contraction(const TraceMonomial& t, const DimensionVector& d);

/// Subset dynamic program over all merge trees; limited to |M| <= 8.
ContractionPlan optimal_plan(const TraceMonomial& t, const DimensionVector& d);

/// |M| * (dim V)^{|M|}: multiplications of the direct index sum.
std::uint64_t naive_cost(const TraceMonomial& t, const DimensionVector& d);

/// Throws std::invalid_argument when the plan was made for another
/// monomial or dimension vector, or does not reduce to a scalar.
void check_plan(const ContractionPlan& plan, const TraceMonomial& t, const DimensionVector& d);

/// Exact; equal to evaluate(t, inputs).
Scalar evaluate_with_plan(const TraceMonomial& t, const EndoTuple& inputs, const ContractionPlan& plan);

/// Double-precision fast path through the SIMD GEMM kernel. Not exact.
double evaluate_with_plan_f64(const TraceMonomial& t, const EndoTuple& inputs, const ContractionPlan& plan);

}  // namespace localinv
