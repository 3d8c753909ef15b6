#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "localinv/matrix.hpp"
#include "localinv/perm.hpp"
#include "localinv/trace_monomial.hpp"

namespace localinv {

/// Element of End(V_1 (x) ... (x) V_n) as a (dim V) x (dim V) matrix whose
/// rows and columns are multi-indices, row-major, factor 1 outermost.
struct Endomorphism {
    DimensionVector dims;
    Matrix entries;

    void validate() const;
};

struct EndoTuple {
    DimensionVector dims;
    std::vector<Endomorphism> members;

    std::size_t size() const { return members.size(); }
    /// Throws std::invalid_argument when members disagree on dims or shape.
    void validate() const;
};

/// A_1 (x) ... (x) A_n with factor i of size d_i x d_i.
struct SimpleEndo {
    std::vector<Matrix> factors;

    DimensionVector dims() const;
};

/// (g_1, ..., g_n) in GL(V_1) x ... x GL(V_n).
struct LocalGroupElement {
    std::vector<Matrix> factors;

    DimensionVector dims() const;
};

Endomorphism kron_expand(const SimpleEndo& s);
EndoTuple kron_expand(std::span<const SimpleEndo> tuple);

EndoTuple identity_endotuple(const DimensionVector& d, int m);

/// Seeded generators; entries are k/2^e with k in [-3,3], e in {0,1}.
EndoTuple random_endotuple(const DimensionVector& d, int m, std::uint64_t seed);
std::vector<SimpleEndo> random_simple_endos(const DimensionVector& d, int m, std::uint64_t seed);
/// Redraws until every factor is invertible; throws std::runtime_error
/// after 64 failed draws.
LocalGroupElement random_group_element(const DimensionVector& d, std::uint64_t seed);

/// Each A_j -> (g_1 (x) ... (x) g_n) A_j (g_1 (x) ... (x) g_n)^{-1}.
/// Throws std::domain_error for a singular factor.
EndoTuple local_conjugate(const EndoTuple& inputs, const LocalGroupElement& g);

/// prod_i prod_{cycles c of sigma_i} Tr(A_{i,M[c_1]} ... A_{i,M[c_k]}).
Scalar evaluate_simple(const TraceMonomial& t, std::span<const SimpleEndo> inputs);

/// Full index sum over every leg assignment (the multilinear extension,
/// restituted). Cost (dim V)^{|M|}.
Scalar evaluate(const TraceMonomial& t, const EndoTuple& inputs);

/// Member j as integers: entries[j] = denominators[j] * A_j, row-major.
struct ScaledTuple {
    std::vector<std::vector<Integer>> entries;
    std::vector<Integer> denominators;
};

ScaledTuple clear_denominators(const EndoTuple& inputs);

/// prod_i d_i^{#cycles(sigma_i)}: the value at identity inputs.
Integer identity_value(const TraceMonomial& t, const DimensionVector& d);

}  // namespace localinv
