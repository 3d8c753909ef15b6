#include "localinv/invariant_span.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "localinv/linalg.hpp"
#include "localinv/parallel.hpp"

namespace localinv {

namespace {

/// Mixed-radix layout of V^{(x)m}, factor-major.
struct TensorPowerBasis {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::size_t> radix;   // per slot s = i*m + j
    std::vector<std::size_t> stride;  // per slot
    std::size_t size = 1;

    TensorPowerBasis(const DimensionVector& d, int copies) : n(d.factors()), m(static_cast<std::size_t>(copies)) {
        if (copies < 1) throw std::invalid_argument("m must be at least 1");
        radix.resize(n * m);
        stride.resize(n * m);
        for (std::size_t s = n * m; s-- > 0;) {
            radix[s] = static_cast<std::size_t>(d[s / m]);
            stride[s] = size;
            size *= radix[s];
        }
    }

    std::size_t digit(std::size_t index, std::size_t slot) const { return (index / stride[slot]) % radix[slot]; }
};

std::size_t checked_square(std::size_t x, std::size_t guard, const std::string& what) {
    if (x > guard || x * x > guard) {
        throw GuardError(what + ": (dim V)^(2m) = " + (x > guard ? std::string("more than ") + std::to_string(guard)
                                                               : std::to_string(x * x)) +
                         " columns exceeds the limit of " + std::to_string(guard) +
                         "; use smaller local dimensions or fewer copies");
    }
    return x * x;
}

std::size_t power_size(const DimensionVector& d, int m, std::size_t guard, const std::string& what) {
    std::size_t out = 1;
    for (int j = 0; j < m; ++j) {
        if (out > guard / std::max<std::size_t>(d.total(), 1)) {
            throw GuardError(what + ": (dim V)^m exceeds " + std::to_string(guard) +
                             "; use smaller local dimensions or fewer copies");
        }
        out *= d.total();
    }
    return out;
}

SparseVector from_map(const std::map<std::size_t, Integer>& acc) {
    SparseVector out;
    for (const auto& [col, v] : acc) {
        if (v != 0) out.emplace_back(col, v);
    }
    return out;
}

}  // namespace

Matrix rho_matrix(const std::vector<Permutation>& sigma, const DimensionVector& d, int m) {
    const TensorPowerBasis basis(d, m);
    if (sigma.size() != basis.n) throw std::invalid_argument("rho_matrix: need one permutation per tensor factor");
    for (const auto& s : sigma) {
        if (s.size() != basis.m) throw std::invalid_argument("rho_matrix: permutation size differs from m");
    }
    Matrix out(basis.size, basis.size);
    for (std::size_t v = 0; v < basis.size; ++v) {
        std::size_t u = 0;
        for (std::size_t i = 0; i < basis.n; ++i) {
            for (std::size_t j = 0; j < basis.m; ++j) {
                const std::size_t target = i * basis.m + sigma[i](j);
                u += basis.digit(v, i * basis.m + j) * basis.stride[target];
            }
        }
        out(u, v) = 1;
    }
    return out;
}

Matrix mu_matrix(const LocalGroupElement& g, int m) {
    const auto d = g.dims();
    const TensorPowerBasis basis(d, m);
    Matrix out(basis.size, basis.size);
    for (std::size_t u = 0; u < basis.size; ++u) {
        for (std::size_t v = 0; v < basis.size; ++v) {
            Scalar x = 1;
            for (std::size_t s = 0; s < basis.n * basis.m && x != 0; ++s) {
                x *= g.factors[s / basis.m](basis.digit(u, s), basis.digit(v, s));
            }
            out(u, v) = x;
        }
    }
    return out;
}

std::size_t span_dimension_rho(const DimensionVector& d, int m) {
    const std::size_t size = power_size(d, m, kRhoColumnGuard, "span_dimension_rho");
    checked_square(size, kRhoColumnGuard, "span_dimension_rho");
    const auto perms = all_permutations(static_cast<std::size_t>(m));
    std::vector<std::size_t> choice(d.factors(), 0);
    SparseEchelon echelon;
    while (true) {
        std::vector<Permutation> sigma;
        for (auto c : choice) sigma.push_back(perms[c]);
        const Matrix r = rho_matrix(sigma, d, m);
        SparseVector flat;
        for (std::size_t a = 0; a < size; ++a) {
            for (std::size_t b = 0; b < size; ++b) {
                if (r(a, b) != 0) flat.emplace_back(a * size + b, Integer(1));
            }
        }
        echelon.insert(std::move(flat));
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == perms.size()) choice[i++] = 0;
        if (i == choice.size()) break;
    }
    return echelon.rank();
}

std::size_t commutant_dimension_mu(const DimensionVector& d, int m) {
    const TensorPowerBasis basis(d, m);
    const std::size_t size = power_size(d, m, kRhoColumnGuard, "commutant_dimension_mu");
    const std::size_t unknowns = checked_square(size, kRhoColumnGuard, "commutant_dimension_mu");
    struct Op {
        std::size_t factor;
        std::size_t a;
        std::size_t b;
    };
    std::vector<Op> ops;
    for (std::size_t i = 0; i < d.factors(); ++i) {
        for (std::size_t a = 0; a < static_cast<std::size_t>(d[i]); ++a) {
            for (std::size_t b = 0; b < static_cast<std::size_t>(d[i]); ++b) ops.push_back({i, a, b});
        }
    }
    SparseEchelon echelon;
    for (std::size_t u = 0; u < size; ++u) {
        for (std::size_t v = 0; v < size; ++v) {
            // [L, E_uv] for each L, stacked
            std::map<std::size_t, Integer> acc;
            for (std::size_t l = 0; l < ops.size(); ++l) {
                const auto& op = ops[l];
                const std::size_t base = l * unknowns;
                for (std::size_t j = 0; j < basis.m; ++j) {
                    const std::size_t s = op.factor * basis.m + j;
                    // L e_u: slot s holding b becomes a
                    if (basis.digit(u, s) == op.b) {
                        const std::size_t u2 = u + (op.a - op.b) * basis.stride[s];
                        acc[base + u2 * size + v] += 1;
                    }
                    // E_uv L: row v of L, v's slot s holding a came from b
                    if (basis.digit(v, s) == op.a) {
                        const std::size_t v2 = v + (op.b - op.a) * basis.stride[s];
                        acc[base + u * size + v2] -= 1;
                    }
                }
            }
            echelon.insert(from_map(acc));
        }
    }
    return unknowns - echelon.rank();
}

namespace {

using Monomial = std::vector<std::uint32_t>;

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto x : m) h = (h ^ x) * 0x100000001b3ULL;
        return h;
    }
};

struct EntryVariables {
    std::size_t dim;
    std::size_t n;
    std::vector<std::size_t> stride;  // per factor, over a multi-index of V
    std::vector<std::size_t> radix;

    explicit EntryVariables(const DimensionVector& d) : dim(d.total()), n(d.factors()) {
        stride.resize(n);
        radix.resize(n);
        std::size_t s = 1;
        for (std::size_t i = n; i-- > 0;) {
            radix[i] = static_cast<std::size_t>(d[i]);
            stride[i] = s;
            s *= radix[i];
        }
    }

    std::uint32_t id(std::size_t label, std::size_t r, std::size_t c) const {
        return static_cast<std::uint32_t>((label * dim + r) * dim + c);
    }
    std::size_t label(std::uint32_t v) const { return v / (dim * dim); }
    std::size_t row(std::uint32_t v) const { return (v / dim) % dim; }
    std::size_t col(std::uint32_t v) const { return v % dim; }
    std::size_t digit(std::size_t index, std::size_t i) const { return (index / stride[i]) % radix[i]; }
};

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
    unsigned __int128 out = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
        if (out > UINT64_MAX / 2) return UINT64_MAX / 2;
    }
    return static_cast<std::uint64_t>(out);
}

void check_alpha(const MultiDegree& alpha, int m) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (alpha.degrees.size() != static_cast<std::size_t>(m)) {
        throw std::invalid_argument("multidegree has " + std::to_string(alpha.degrees.size()) +
                                    " entries but m = " + std::to_string(m));
    }
    for (int a : alpha.degrees) {
        if (a < 0) throw std::invalid_argument("multidegree entries must be non-negative");
    }
}

std::uint64_t monomial_count(const MultiDegree& alpha, const DimensionVector& d) {
    const std::uint64_t vars = static_cast<std::uint64_t>(d.total()) * d.total();
    std::uint64_t out = 1;
    for (int a : alpha.degrees) {
        const auto c = binomial_saturating(vars + static_cast<std::uint64_t>(a) - 1, static_cast<std::uint64_t>(a));
        if (c != 0 && out > UINT64_MAX / 4 / c) return UINT64_MAX / 4;
        out *= c;
    }
    return out;
}

/// Weight-zero monomials of multidegree alpha, each a sorted variable list.
std::vector<Monomial> weight_zero_monomials(const MultiDegree& alpha, const EntryVariables& ev,
                                            const DimensionVector& d) {
    std::vector<std::vector<int>> weight(ev.n);
    for (std::size_t i = 0; i < ev.n; ++i) weight[i].assign(static_cast<std::size_t>(d[i]), 0);
    std::vector<Monomial> out;
    Monomial current;
    const std::uint32_t per_label = static_cast<std::uint32_t>(ev.dim * ev.dim);
    auto shift = [&](std::uint32_t v, int sign) {
        const auto r = ev.row(v);
        const auto c = ev.col(v);
        for (std::size_t i = 0; i < ev.n; ++i) {
            weight[i][ev.digit(r, i)] += sign;
            weight[i][ev.digit(c, i)] -= sign;
        }
    };
    // label-by-label nondecreasing choices
    auto rec = [&](auto&& self, std::size_t label, int left, std::uint32_t from) -> void {
        if (label == alpha.degrees.size()) {
            for (const auto& w : weight) {
                for (int x : w) {
                    if (x != 0) return;
                }
            }
            out.push_back(current);
            if (out.size() > kMonomialGuard) {
                throw GuardError("invariant_space_dimension: more than " + std::to_string(kMonomialGuard) +
                                 " weight-zero monomials; lower the degree or the local dimensions");
            }
            return;
        }
        if (left == 0) {
            const std::size_t next = label + 1;
            const int deg = next < alpha.degrees.size() ? alpha.degrees[next] : 0;
            self(self, next, deg, static_cast<std::uint32_t>(next * per_label));
            return;
        }
        const std::uint32_t end = static_cast<std::uint32_t>((label + 1) * per_label);
        for (std::uint32_t v = from; v < end; ++v) {
            current.push_back(v);
            shift(v, +1);
            self(self, label, left - 1, v);
            shift(v, -1);
            current.pop_back();
        }
    };
    if (alpha.degrees.empty()) {
        out.push_back({});
        return out;
    }
    rec(rec, 0, alpha.degrees[0], 0);
    return out;
}

}  // namespace

InvariantSystemSize invariant_system_size(const MultiDegree& alpha, const DimensionVector& d) {
    InvariantSystemSize out;
    out.monomials = monomial_count(alpha, d);
    const EntryVariables ev(d);
    try {
        out.weight_zero = weight_zero_monomials(alpha, ev, d).size();
    } catch (const GuardError&) {
        out.weight_zero = kMonomialGuard + 1;
    }
    return out;
}

std::size_t invariant_space_dimension(const MultiDegree& alpha, const DimensionVector& d, int m) {
    check_alpha(alpha, m);
    // enumeration itself is bounded by the full monomial count
    if (monomial_count(alpha, d) > 200 * kMonomialGuard) {
        throw GuardError("invariant_space_dimension: " + std::to_string(monomial_count(alpha, d)) +
                         " degree-alpha monomials to scan (limit " + std::to_string(200 * kMonomialGuard) +
                         "); lower the degree or the local dimensions");
    }
    const EntryVariables ev(d);
    const auto unknowns = weight_zero_monomials(alpha, ev, d);

    struct Op {
        std::size_t factor;
        std::size_t a;
        std::size_t b;
    };
    std::vector<Op> ops;
    for (std::size_t i = 0; i < d.factors(); ++i) {
        for (std::size_t a = 0; a < static_cast<std::size_t>(d[i]); ++a) {
            for (std::size_t b = 0; b < static_cast<std::size_t>(d[i]); ++b) {
                if (a != b) ops.push_back({i, a, b});
            }
        }
    }

    std::unordered_map<Monomial, std::size_t, MonomialHash> target_index;
    SparseEchelon echelon;
    Monomial key;
    for (const auto& u : unknowns) {
        std::map<std::size_t, Integer> acc;
        for (std::size_t l = 0; l < ops.size(); ++l) {
            const auto& op = ops[l];
            for (std::size_t p = 0; p < u.size(); ++p) {
                if (p > 0 && u[p] == u[p - 1]) continue;
                std::size_t mult = 1;
                while (p + mult < u.size() && u[p + mult] == u[p]) ++mult;
                const auto x = u[p];
                const auto label = ev.label(x);
                const auto r = ev.row(x);
                const auto c = ev.col(x);
                // D(x_{rc}) = [r_i = a] x_{r[i<-b], c} - [c_i = b] x_{r, c[i<-a]}
                auto emit = [&](std::uint32_t y, long coef) {
                    key.assign(1, static_cast<std::uint32_t>(l));
                    key.insert(key.end(), u.begin(), u.end());
                    key.erase(key.begin() + 1 + static_cast<std::ptrdiff_t>(p));
                    key.insert(std::upper_bound(key.begin() + 1, key.end(), y), y);
                    const auto [it, fresh] = target_index.try_emplace(key, target_index.size());
                    acc[it->second] += coef * static_cast<long>(mult);
                };
                if (ev.digit(r, op.factor) == op.a) {
                    const std::size_t r2 = r + (op.b - op.a) * ev.stride[op.factor];
                    emit(ev.id(label, r2, c), +1);
                }
                if (ev.digit(c, op.factor) == op.b) {
                    const std::size_t c2 = c + (op.a - op.b) * ev.stride[op.factor];
                    emit(ev.id(label, r, c2), -1);
                }
            }
        }
        echelon.insert(from_map(acc));
    }
    return unknowns.size() - echelon.rank();
}

std::size_t evaluation_rank(const std::vector<TraceMonomial>& monomials, const DimensionVector& d, int m,
                            std::uint64_t seed, std::size_t samples) {
    std::vector<std::vector<Scalar>> rows(monomials.size(), std::vector<Scalar>(samples));
    parallel_for(samples, [&](std::size_t s) {
        const auto point = random_endotuple(d, m, derive_seed(seed, s));
        for (std::size_t c = 0; c < monomials.size(); ++c) rows[c][s] = evaluate(monomials[c], point);
    });
    return rank(rows);
}

TraceSpan trace_span(const MultiDegree& alpha, const DimensionVector& d, int m, std::uint64_t seed) {
    check_alpha(alpha, m);
    EnumerateOptions options;
    options.apply_girth = true;
    const auto candidates = enumerate_generators(alpha, d, options);
    if (candidates.size() > kMonomialGuard) {
        throw GuardError("trace_span_dimension: " + std::to_string(candidates.size()) + " candidates exceed " +
                         std::to_string(kMonomialGuard));
    }
    TraceSpan out;
    out.candidates = candidates.size();
    std::size_t samples = std::max<std::size_t>(candidates.size(), 1);
    std::size_t previous = evaluation_rank(candidates, d, m, seed, samples);
    for (int round = 0; round < 8; ++round) {
        const std::size_t next = evaluation_rank(candidates, d, m, seed, 2 * samples);
        samples *= 2;
        if (next == previous) {
            out.dimension = next;
            out.samples = samples;
            return out;
        }
        previous = next;
    }
    throw std::runtime_error("trace_span_dimension: evaluation rank did not stabilize under doubling");
}

std::size_t trace_span_dimension(const MultiDegree& alpha, const DimensionVector& d, int m, std::uint64_t seed) {
    return trace_span(alpha, d, m, seed).dimension;
}

GenerationReport verify_generation(const MultiDegree& alpha, const DimensionVector& d, int m, std::uint64_t seed) {
    GenerationReport out;
    out.alpha = alpha;
    out.dims = d;
    out.m = m;
    out.seed = seed;
    out.oracle_dim = invariant_space_dimension(alpha, d, m);
    const auto span = trace_span(alpha, d, m, seed);
    out.span_dim = span.dimension;
    out.samples = span.samples;
    out.candidates = span.candidates;
    out.match = out.oracle_dim == out.span_dim;
    return out;
}

}  // namespace localinv
