#include "localinv/series.hpp"

#include <algorithm>
#include <stdexcept>

#include "localinv/invariant_span.hpp"
#include "localinv/trace_monomial.hpp"

namespace localinv {

Polynomial trim(Polynomial p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return {};
    Polynomial out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return trim(std::move(out));
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    Polynomial out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return trim(std::move(out));
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b) {
    const auto divisor = trim(b);
    if (divisor.empty()) throw std::domain_error("polynomial division by zero");
    auto rem = trim(a);
    if (rem.size() < divisor.size()) return {{}, rem};
    Polynomial quot(rem.size() - divisor.size() + 1);
    const Scalar lead = divisor.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Scalar q = rem[k + divisor.size() - 1] / lead;
        quot[k] = q;
        if (q == 0) continue;
        for (std::size_t j = 0; j < divisor.size(); ++j) rem[k + j] -= q * divisor[j];
    }
    return {trim(std::move(quot)), trim(std::move(rem))};
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        auto r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Scalar lead = a.back();
        for (auto& x : a) x /= lead;
    }
    return a;
}

Polynomial cyclotomic(std::size_t n) {
    if (n == 0) throw std::invalid_argument("cyclotomic: order must be positive");
    Polynomial p(n + 1);
    p[0] = -1;
    p[n] = 1;
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d == 0) p = poly_divmod(p, cyclotomic(d)).first;
    }
    return p;
}

std::string poly_to_string(const Polynomial& p) {
    std::string out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0) continue;
        Scalar c = p[k];
        const bool negative = c < 0;
        if (negative) c = -c;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        const bool unit = c == 1;
        if (!unit || k == 0) out += to_string(c);
        if (k > 0) {
            if (!unit) out += "*";
            out += "t";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out.empty() ? "0" : out;
}

RationalFunction make_rational(Polynomial num, Polynomial den) {
    num = trim(std::move(num));
    den = trim(std::move(den));
    if (den.empty() || den[0] == 0) throw std::domain_error("rational function: denominator must not vanish at 0");
    const auto g = poly_gcd(num, den);
    if (g.size() > 1) {
        num = poly_divmod(num, g).first;
        den = poly_divmod(den, g).first;
    }
    const Scalar c = den[0];
    for (auto& x : num) x /= c;
    for (auto& x : den) x /= c;
    return {std::move(num), std::move(den)};
}

PowerSeries expand(const RationalFunction& f, std::size_t N) {
    if (f.den.empty() || f.den[0] == 0) throw std::domain_error("expand: denominator must not vanish at 0");
    PowerSeries out;
    out.coeffs.assign(N + 1, Scalar(0));
    for (std::size_t k = 0; k <= N; ++k) {
        Scalar v = k < f.num.size() ? f.num[k] : Scalar(0);
        for (std::size_t i = 1; i < f.den.size() && i <= k; ++i) v -= f.den[i] * out.coeffs[k - i];
        out.coeffs[k] = v / f.den[0];
    }
    return out;
}

std::size_t default_truncation(const DimensionVector& d) {
    return 4 * d.total() * d.total() + 8;
}

PowerSeries hs_single(int m, int d, std::size_t N) {
    if (m < 1 || d < 1) throw std::invalid_argument("hs_single: m and d must be positive");
    std::vector<Integer> c(N + 1, 0);
    c[0] = 1;
    const auto top = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
    for (std::size_t k = 1; k <= top && k <= N; ++k) {
        const auto copies = necklace_count(static_cast<std::uint64_t>(m), k);
        for (std::uint64_t r = 0; r < copies; ++r) {
            for (std::size_t j = k; j <= N; ++j) c[j] += c[j - k];
        }
    }
    PowerSeries out;
    for (auto& x : c) out.coeffs.emplace_back(x);
    return out;
}

PowerSeries hadamard(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out;
    const std::size_t len = std::min(a.coeffs.size(), b.coeffs.size());
    for (std::size_t j = 0; j < len; ++j) out.coeffs.push_back(a.coeffs[j] * b.coeffs[j]);
    return out;
}

PowerSeries hs_local(int m, const DimensionVector& d, std::size_t N) {
    if (d.factors() == 0) throw std::invalid_argument("hs_local: empty dimension vector");
    PowerSeries out = hs_single(m, d[0], N);
    for (std::size_t i = 1; i < d.factors(); ++i) out = hadamard(out, hs_single(m, d[i], N));
    return out;
}

namespace {

using u64 = std::uint64_t;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }

u64 pow_mod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    for (; e != 0; e >>= 1U, a = mul_mod(a, a, p)) {
        if (e & 1U) r = mul_mod(r, a, p);
    }
    return r;
}

/// Berlekamp-Massey over Z/p; returns the connection polynomial (size L+1).
std::vector<u64> berlekamp_massey_mod(const std::vector<u64>& x, u64 p) {
    std::vector<u64> c{1};
    std::vector<u64> b{1};
    std::size_t L = 0;
    std::size_t shift = 1;
    u64 last = 1;
    for (std::size_t n = 0; n < x.size(); ++n) {
        u64 disc = x[n];
        for (std::size_t i = 1; i <= L && i < c.size(); ++i) disc = (disc + mul_mod(c[i], x[n - i], p)) % p;
        if (disc == 0) {
            ++shift;
            continue;
        }
        const u64 f = mul_mod(disc, pow_mod(last, p - 2, p), p);
        auto next = c;
        if (next.size() < b.size() + shift) next.resize(b.size() + shift, 0);
        for (std::size_t i = 0; i < b.size(); ++i) next[i + shift] = (next[i + shift] + p - mul_mod(f, b[i], p)) % p;
        if (2 * L <= n) {
            b = std::move(c);
            L = n + 1 - L;
            last = disc;
            shift = 1;
        } else {
            ++shift;
        }
        c = std::move(next);
    }
    c.resize(L + 1, 0);
    return c;
}

/// Berlekamp-Massey over Q; returns the connection polynomial (size L+1).
Polynomial berlekamp_massey_exact(const std::vector<Scalar>& x) {
    Polynomial c{1};
    Polynomial b{1};
    std::size_t L = 0;
    std::size_t shift = 1;
    Scalar last = 1;
    for (std::size_t n = 0; n < x.size(); ++n) {
        Scalar disc = x[n];
        for (std::size_t i = 1; i <= L && i < c.size(); ++i) disc += c[i] * x[n - i];
        if (disc == 0) {
            ++shift;
            continue;
        }
        const Scalar f = disc / last;
        Polynomial next = c;
        if (next.size() < b.size() + shift) next.resize(b.size() + shift);
        for (std::size_t i = 0; i < b.size(); ++i) next[i + shift] -= f * b[i];
        if (2 * L <= n) {
            b = std::move(c);
            L = n + 1 - L;
            last = disc;
            shift = 1;
        } else {
            ++shift;
        }
        c = std::move(next);
    }
    c.resize(L + 1);
    return c;
}

/// True when c (c_0 = 1) annihilates x from index deg c.size()-1 on.
bool annihilates(const Polynomial& c, const std::vector<Scalar>& x) {
    const std::size_t L = c.size() - 1;
    for (std::size_t n = L; n < x.size(); ++n) {
        Scalar v = 0;
        for (std::size_t i = 0; i <= L; ++i) v += c[i] * x[n - i];
        if (v != 0) return false;
    }
    return true;
}

/// Integer sequences: the reduced denominator with constant term 1 has
/// integer coefficients, so it can be lifted from images mod large primes
/// (Chinese remaindering, symmetric range) and then checked exactly.
struct ModularResult {
    /// Largest order seen over the primes tried: a lower bound for the
    /// order over Q.
    std::size_t order = 0;
    std::optional<Polynomial> connection;
};

ModularResult modular_connection(const std::vector<Scalar>& x) {
    ModularResult out;
    std::vector<Integer> xs;
    for (const auto& v : x) xs.push_back(v.get_num());
    Integer prime = Integer(1) << 61;
    Integer modulus = 1;
    std::vector<Integer> lifted;
    std::size_t L = 0;
    Polynomial previous;
    for (int round = 0; round < 64; ++round) {
        mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
        const u64 p = prime.get_ui();
        std::vector<u64> xp;
        xp.reserve(xs.size());
        Integer r;
        for (const auto& v : xs) {
            mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
            xp.push_back(r.get_ui());
        }
        const auto c = berlekamp_massey_mod(xp, p);
        const std::size_t Lp = c.size() - 1;
        if (Lp < L) continue;  // unlucky prime
        if (Lp > L || lifted.empty()) {
            L = Lp;
            out.order = L;
            if (2 * L > x.size()) return out;
            modulus = 1;
            lifted.assign(L + 1, 0);
        }
        // CRT: lifted = lifted + modulus * ((c - lifted) / modulus mod p)
        const u64 inv = pow_mod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p - 2, p);
        for (std::size_t i = 0; i <= L; ++i) {
            const u64 have = mpz_fdiv_ui(lifted[i].get_mpz_t(), p);
            const u64 delta = mul_mod((c[i] + p - have) % p, inv, p);
            lifted[i] += modulus * Integer(std::to_string(delta));
        }
        modulus *= Integer(std::to_string(p));
        Polynomial candidate;
        const Integer half = modulus / 2;
        for (const auto& v : lifted) candidate.emplace_back(v > half ? Integer(v - modulus) : v);
        if (candidate == previous && annihilates(candidate, x)) {
            out.connection = std::move(candidate);
            return out;
        }
        previous = std::move(candidate);
    }
    return out;
}

}  // namespace

Reconstruction reconstruct_rational(const PowerSeries& s, std::size_t cap) {
    const auto& x = s.coeffs;
    const std::size_t terms = x.size();
    if (cap == 0) cap = terms / 2;
    const bool integral = std::all_of(x.begin(), x.end(), [](const Scalar& v) { return v.get_den() == 1; });
    Reconstruction out;
    Polynomial c;
    if (integral) {
        auto modular = modular_connection(x);
        if (!modular.connection) {
            out.recurrence_order = modular.order;
            out.reason = 2 * modular.order > terms
                             ? "recurrence order at least " + std::to_string(modular.order) + " needs at least " +
                                   std::to_string(2 * modular.order) + " coefficients, have " +
                                   std::to_string(terms) + "; raise N"
                             : "recurrence coefficients did not lift from modular images";
            return out;
        }
        c = std::move(*modular.connection);
    } else {
        c = berlekamp_massey_exact(x);
    }
    const std::size_t L = c.size() - 1;
    out.recurrence_order = L;
    if (2 * L > terms) {
        out.reason = "recurrence order " + std::to_string(L) + " needs at least " + std::to_string(2 * L) +
                     " coefficients, have " + std::to_string(terms) + "; raise N";
        return out;
    }
    if (L > cap) {
        out.reason = "recurrence order " + std::to_string(L) + " exceeds cap " + std::to_string(cap);
        return out;
    }
    // numerator: (S * C) mod t^L
    Polynomial num(L);
    for (std::size_t k = 0; k < L; ++k) {
        for (std::size_t i = 0; i <= k; ++i) num[k] += c[i] * x[k - i];
    }
    // a common factor would give a shorter recurrence, so num/c is reduced
    out.function = {trim(std::move(num)), trim(std::move(c))};
    if (expand(out.function, s.order()) != s) {
        out.reason = "recurrence does not reproduce the series";
        return out;
    }
    out.conclusive = true;
    return out;
}

GrownReconstruction reconstruct_hs_local(int m, const DimensionVector& d, std::size_t start_N, std::size_t max_N) {
    std::size_t N = std::max<std::size_t>(start_N, 1);
    while (true) {
        GrownReconstruction out;
        out.series = hs_local(m, d, N);
        out.reconstruction = reconstruct_rational(out.series);
        if (out.reconstruction.conclusive || 2 * N > max_N) return out;
        N *= 2;
    }
}

PoleCheck check_pole_orders(const RationalFunction& f, std::size_t bound) {
    PoleCheck out;
    Polynomial rest = trim(f.den);
    if (rest.empty()) throw std::domain_error("check_pole_orders: zero denominator");
    out.cyclotomic_multiplicity.assign(bound, 0);
    for (std::size_t o = 1; o <= bound && rest.size() > 1; ++o) {
        const auto phi = cyclotomic(o);
        while (rest.size() >= phi.size()) {
            auto [q, r] = poly_divmod(rest, phi);
            if (!r.empty()) break;
            rest = std::move(q);
            ++out.cyclotomic_multiplicity[o - 1];
        }
    }
    if (rest.size() <= 1) {
        out.ok = true;
        // Phi_a divides 1 - t^a, so e_a = mult(Phi_a) suffices
        out.exponents = out.cyclotomic_multiplicity;
    } else {
        out.residual = rest;
    }
    return out;
}

namespace {

std::uint64_t choose2(std::uint64_t d) { return d * (d + 1) / 2; }

}  // namespace

BoundReport degree_bounds(int m, const DimensionVector& d) {
    if (m < 1) throw std::invalid_argument("degree_bounds: m must be at least 1");
    BoundReport out;
    const std::uint64_t dim = d.total();
    out.segre = static_cast<std::uint64_t>(m) * dim * dim;
    bool small = true;
    std::vector<std::uint64_t> girth_small;
    std::uint64_t small_product = 1;
    for (int di : d.dims()) {
        const auto x = static_cast<std::uint64_t>(di);
        out.girth.push_back(x * x);
        girth_small.push_back(choose2(x));
        small_product *= choose2(x);
        if (di > 3) small = false;
    }
    if (small) out.girth_small_dim = girth_small;
    if (m == 1) {
        out.final_m1 = dim * dim;
        if (small) out.small_dim = small_product;
    }
    return out;
}

EmpiricalBound verify_bound_empirically(const DimensionVector& d, std::size_t max_degree, std::uint64_t seed) {
    EmpiricalBound out;
    out.dims = d;
    out.seed = seed;
    for (std::size_t k = 1; k <= max_degree; ++k) {
        const MultiDegree alpha{{static_cast<int>(k)}};
        EnumerateOptions options;
        options.apply_girth = true;
        const auto all = enumerate_generators(alpha, d, options);
        if (all.size() > kMonomialGuard) {
            throw GuardError("verify_bound_empirically: " + std::to_string(all.size()) +
                             " monomials at degree " + std::to_string(k) + " exceed " +
                             std::to_string(kMonomialGuard));
        }
        std::vector<TraceMonomial> products;
        for (const auto& t : all) {
            if (!is_position_connected(t)) products.push_back(t);
        }
        DegreeStep step;
        step.degree = k;
        step.candidates = all.size();
        step.decomposable = products.size();
        std::size_t samples = all.size();
        std::size_t span = evaluation_rank(all, d, 1, seed, samples);
        std::size_t prod = evaluation_rank(products, d, 1, seed, samples);
        for (int round = 0;; ++round) {
            if (round == 8) throw std::runtime_error("verify_bound_empirically: ranks did not stabilize");
            const std::size_t span2 = evaluation_rank(all, d, 1, seed, 2 * samples);
            const std::size_t prod2 = evaluation_rank(products, d, 1, seed, 2 * samples);
            samples *= 2;
            const bool stable = span2 == span && prod2 == prod;
            span = span2;
            prod = prod2;
            if (stable) break;
        }
        step.span_rank = span;
        step.product_rank = prod;
        step.samples = samples;
        step.new_generators = span > prod;
        if (step.new_generators) out.largest_new_degree = k;
        out.steps.push_back(step);
    }
    return out;
}

}  // namespace localinv
