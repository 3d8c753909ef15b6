#pragma once

#include <string>
#include <vector>

#include "localinv/perm.hpp"

namespace localinv {

/// Tr^M_sigma. Positions 1..|M| carry labels M; sigma[i] wires the column
/// leg of position p on tensor factor i to the row leg of position
/// sigma[i](p). Cycles therefore read as matrix products in the order
/// p -> sigma(p) -> ...
struct TraceMonomial {
    OrderedMultiset M;
    std::vector<Permutation> sigma;

    std::size_t degree() const { return M.size(); }
    std::size_t factors() const { return sigma.size(); }

    /// Throws std::invalid_argument when a permutation has the wrong size
    /// or a label is out of range.
    void validate() const;

    /// Lexicographic key: M entries, then each sigma one-line.
    std::vector<int> encoding() const;

    /// "Tr^{(1,1,2)}_{(12),(23)}".
    std::string to_text() const;

    friend bool operator==(const TraceMonomial&, const TraceMonomial&) = default;
};

/// The unit: |M| = 0.
TraceMonomial empty_monomial(std::size_t factors, int m);

MultiDegree multidegree(const TraceMonomial& t);

struct GirthTuple {
    std::vector<std::size_t> sizes;
    friend bool operator==(const GirthTuple&, const GirthTuple&) = default;
};

GirthTuple girth(const TraceMonomial& t);

/// sizes[i] <= d_i^2, or <= C(d_i+1, 2) with use_small_dim. The small-dim
/// variant is only claimed for d_i <= 3; larger d_i throws.
bool girth_filter(const TraceMonomial& t, const DimensionVector& d, bool use_small_dim);

/// Representative with lexicographically minimal encoding among the
/// simultaneous position relabelings that sort M.
TraceMonomial canonicalize(const TraceMonomial& t);

/// Canonical form under independent label-preserving relabelings on each
/// tensor factor. Two monomials with equal Segre forms agree on every
/// tuple of Kronecker-product endomorphisms.
TraceMonomial segre_canonicalize(const TraceMonomial& t);

/// Connected components of the position graph (p ~ sigma_i(p)). The
/// product of the components equals t as a function on all of End(V).
std::vector<TraceMonomial> split_components(const TraceMonomial& t);

/// Finest factorization over all per-factor label-preserving relabelings.
/// Exact on Kronecker-product inputs; this is the factorization notion in
/// which Tr^{(1,2,1)}_{(12),(23)} = Tr^{(1,2)}_{(12),(12)} Tr^{(1)}_{id,id}.
/// Factors are canonicalized and ordered by their first position.
std::vector<TraceMonomial> factor(const TraceMonomial& t);

bool is_position_connected(const TraceMonomial& t);

/// Tr^{M u M'}_{sigma u sigma'}. Throws on factor-count or label-count
/// mismatch.
TraceMonomial product(const TraceMonomial& a, const TraceMonomial& b);

/// M = (1^alpha_1, 2^alpha_2, ...), sigma unchanged.
TraceMonomial restitution(const std::vector<Permutation>& sigma, const MultiDegree& alpha);

struct EnumerateOptions {
    bool connected_only = false;
    bool apply_girth = false;
    bool small_dim = false;
};

/// All canonical monomials of multidegree alpha over d.factors() tensor
/// factors, deduplicated, sorted by encoding.
std::vector<TraceMonomial> enumerate_generators(const MultiDegree& alpha, const DimensionVector& d,
                                                const EnumerateOptions& options = {});

/// Every permutation of {1..k} in lexicographic one-line order.
std::vector<Permutation> all_permutations(std::size_t k);

}  // namespace localinv
