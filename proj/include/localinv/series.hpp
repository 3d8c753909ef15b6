#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "localinv/perm.hpp"
#include "localinv/rational.hpp"

namespace localinv {

/// c_0 + c_1 t + ... + c_N t^N, known exactly up to order N.
struct PowerSeries {
    std::vector<Scalar> coeffs;

    std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;
};

/// Coefficients, constant term first, no trailing zeros (zero is {}).
using Polynomial = std::vector<Scalar>;

Polynomial trim(Polynomial p);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
/// Quotient and remainder; throws std::domain_error for a zero divisor.
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd (zero when both are zero).
Polynomial poly_gcd(Polynomial a, Polynomial b);
/// n-th cyclotomic polynomial.
Polynomial cyclotomic(std::size_t n);
/// "1 - t - t^2".
std::string poly_to_string(const Polynomial& p);

/// num / den with den(0) = 1 and gcd(num, den) = 1.
struct RationalFunction {
    Polynomial num;
    Polynomial den;

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;
};

/// Reduces and normalizes; throws std::domain_error when den(0) = 0.
RationalFunction make_rational(Polynomial num, Polynomial den);
PowerSeries expand(const RationalFunction& f, std::size_t N);

/// N = 4 (dim V)^2 + 8.
std::size_t default_truncation(const DimensionVector& d);

/// prod_{k=1}^{d^2} (1 - t^k)^{-n_m(k)} to order N.
PowerSeries hs_single(int m, int d, std::size_t N);
/// Termwise product, truncated to the shorter order.
PowerSeries hadamard(const PowerSeries& a, const PowerSeries& b);
PowerSeries hs_local(int m, const DimensionVector& d, std::size_t N);

struct Reconstruction {
    bool conclusive = false;
    RationalFunction function;
    /// Order of the minimal recurrence found.
    std::size_t recurrence_order = 0;
    std::string reason;
};

/// Minimal linear recurrence by Berlekamp-Massey over Q. Inconclusive
/// unless the N+1 coefficients determine it (2L <= N+1) and L <= cap.
/// cap = 0 means (N+1)/2.
Reconstruction reconstruct_rational(const PowerSeries& s, std::size_t cap = 0);

struct GrownReconstruction {
    PowerSeries series;
    Reconstruction reconstruction;
};

/// hs_local with N doubled from start_N until reconstruction is conclusive
/// or N would exceed max_N (the last attempt is returned either way).
GrownReconstruction reconstruct_hs_local(int m, const DimensionVector& d, std::size_t start_N, std::size_t max_N);

struct PoleCheck {
    bool ok = false;
    /// e_1..e_bound with den | prod (1 - t^a)^{e_a}; empty unless ok.
    std::vector<std::size_t> exponents;
    /// Multiplicity of Phi_o in the denominator, o = 1..bound.
    std::vector<std::size_t> cyclotomic_multiplicity;
    /// Denominator part with no root of unity of order <= bound.
    Polynomial residual;
};

PoleCheck check_pole_orders(const RationalFunction& f, std::size_t bound);

struct BoundReport {
    std::uint64_t segre = 0;
    std::optional<std::uint64_t> final_m1;
    std::optional<std::uint64_t> small_dim;
    std::vector<std::uint64_t> girth;
    std::optional<std::vector<std::uint64_t>> girth_small_dim;
};

/// segre = m (dim V)^2; final_m1 = (dim V)^2 and small_dim = prod C(d_i+1,2)
/// only for m = 1, the latter only with all d_i <= 3; girth = (d_i^2),
/// girth_small_dim = (C(d_i+1,2)) when all d_i <= 3.
BoundReport degree_bounds(int m, const DimensionVector& d);

struct DegreeStep {
    std::size_t degree = 0;
    std::size_t candidates = 0;
    std::size_t decomposable = 0;
    std::size_t span_rank = 0;
    std::size_t product_rank = 0;
    std::size_t samples = 0;
    bool new_generators = false;
};

struct EmpiricalBound {
    DimensionVector dims;
    std::uint64_t seed = 0;
    std::vector<DegreeStep> steps;
    /// Largest degree at which products of lower degrees fall short.
    std::optional<std::size_t> largest_new_degree;
};

/// m = 1. At each degree k compares the evaluation rank of all degree-k
/// Tr^M_sigma with that of the position-disconnected ones (the products of
/// lower-degree monomials), on shared sample points, doubling the points
/// until both ranks repeat.
EmpiricalBound verify_bound_empirically(const DimensionVector& d, std::size_t max_degree,
                                        std::uint64_t seed = 20240601);

}  // namespace localinv
