#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "localinv/errors.hpp"
#include "localinv/matrix.hpp"
#include "localinv/tensor_eval.hpp"

namespace localinv {

// Basis of V^{(x)m}: digits u[i][j] (factor i, copy j) laid out factor-major,
// so the flat index reads the digits (i=0,j=0), (0,1), ..., (1,0), ...

inline constexpr std::size_t kRhoColumnGuard = 100000;
inline constexpr std::size_t kMonomialGuard = 10000;
inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Permutation matrix of rho(sigma): the (i,j) tensor slot moves to
/// (i, sigma_i(j)).
Matrix rho_matrix(const std::vector<Permutation>& sigma, const DimensionVector& d, int m);

/// mu(g) = (g_1 (x) ... (x) g_n)^{(x)m} in the same basis.
Matrix mu_matrix(const LocalGroupElement& g, int m);

/// Rank over Q of the flattened rho(sigma), sigma in S_m^n.
std::size_t span_dimension_rho(const DimensionVector& d, int m);

/// Dimension of {X : [L, X] = 0} with L over the action of every E_ab on
/// every factor, summed over the m copies.
std::size_t commutant_dimension_mu(const DimensionVector& d, int m);

struct InvariantSystemSize {
    std::size_t monomials = 0;
    std::size_t weight_zero = 0;
};

/// Counts without solving; used for guard messages.
InvariantSystemSize invariant_system_size(const MultiDegree& alpha, const DimensionVector& d);

/// Dimension of the degree-alpha polynomials in the entries of
/// (A_1, ..., A_m) killed by every derivation D_X, X = E_ab on some factor.
/// Diagonal X act on a monomial by its torus weight, so only weight-zero
/// monomials are unknowns; the guard applies to their number.
std::size_t invariant_space_dimension(const MultiDegree& alpha, const DimensionVector& d, int m);

struct TraceSpan {
    std::size_t dimension = 0;
    std::size_t candidates = 0;
    /// Sample points in the final (certifying) round.
    std::size_t samples = 0;
};

/// Evaluation rank of every canonical Tr^M_sigma of multidegree alpha
/// (girth filtered) at seeded random points. Starts with
/// max(candidates, 1) points and doubles until the rank repeats.
TraceSpan trace_span(const MultiDegree& alpha, const DimensionVector& d, int m, std::uint64_t seed = kDefaultSeed);
std::size_t trace_span_dimension(const MultiDegree& alpha, const DimensionVector& d, int m,
                                 std::uint64_t seed = kDefaultSeed);

/// Evaluation rank of a fixed list of monomials at sample points
/// derive_seed(seed, 0..samples-1).
std::size_t evaluation_rank(const std::vector<TraceMonomial>& monomials, const DimensionVector& d, int m,
                            std::uint64_t seed, std::size_t samples);

struct GenerationReport {
    MultiDegree alpha;
    DimensionVector dims;
    int m = 0;
    std::size_t oracle_dim = 0;
    std::size_t span_dim = 0;
    bool match = false;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::size_t candidates = 0;
};

GenerationReport verify_generation(const MultiDegree& alpha, const DimensionVector& d, int m,
                                   std::uint64_t seed = kDefaultSeed);

struct DimensionReport {
    std::optional<std::size_t> span_rho;
    std::optional<std::size_t> commutant_mu;
    std::optional<std::size_t> invariant_dim;
    std::optional<std::size_t> trace_span_dim;
};

}  // namespace localinv
