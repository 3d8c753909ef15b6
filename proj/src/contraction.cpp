#include "localinv/contraction.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>
#include <tuple>

#include "localinv/simd.hpp"

namespace localinv {

namespace {

using Mask = std::uint64_t;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) return UINT64_MAX;
    return out;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) return UINT64_MAX;
    return out;
}

struct Wiring {
    std::size_t k = 0;
    std::size_t n = 0;
    std::vector<std::uint64_t> edge_dim;
    /// (column-leg position, row-leg position) per edge.
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    std::vector<std::vector<std::size_t>> leaf_edges;

    Wiring(const TraceMonomial& t, const DimensionVector& d) : k(t.degree()), n(t.factors()) {
        if (d.factors() != n) throw std::invalid_argument("plan: monomial and dimension vector disagree on factors");
        if (k > 64) throw std::invalid_argument("plan: at most 64 positions supported");
        edge_dim.resize(n * k);
        ends.resize(n * k);
        leaf_edges.resize(k);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t p = 0; p < k; ++p) {
                const auto e = i * k + p;
                edge_dim[e] = static_cast<std::uint64_t>(d[i]);
                ends[e] = {p, t.sigma[i](p)};
                leaf_edges[p].push_back(e);
                leaf_edges[t.sigma[i](p)].push_back(e);
            }
        }
        for (auto& legs : leaf_edges) {
            std::sort(legs.begin(), legs.end());
            legs.erase(std::unique(legs.begin(), legs.end()), legs.end());
        }
    }

    std::vector<std::size_t> open(Mask s) const {
        std::vector<std::size_t> out;
        for (std::size_t e = 0; e < ends.size(); ++e) {
            const bool a = (s >> ends[e].first) & 1U;
            const bool b = (s >> ends[e].second) & 1U;
            if (a != b) out.push_back(e);
        }
        return out;
    }

    /// Indices a tensor carries into its next step: all legs for a leaf
    /// (self-loops are summed then), open edges otherwise.
    std::vector<std::size_t> held(Mask s) const {
        if (std::popcount(s) == 1) return leaf_edges[static_cast<std::size_t>(std::countr_zero(s))];
        return open(s);
    }

    std::uint64_t volume(const std::vector<std::size_t>& edges) const {
        std::uint64_t out = 1;
        for (auto e : edges) out = saturating_mul(out, edge_dim[e]);
        return out;
    }
};

std::vector<std::size_t> merge_sets(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

std::vector<std::size_t> bits_of(Mask s) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; s != 0; ++p, s >>= 1U) {
        if (s & 1U) out.push_back(p);
    }
    return out;
}

void finish(ContractionPlan& plan) {
    plan.total_cost = 0;
    plan.peak_size = 0;
    for (const auto& step : plan.steps) {
        plan.total_cost = saturating_add(plan.total_cost, step.cost);
        plan.peak_size = std::max(plan.peak_size, step.result_size);
    }
}

ContractionPlan empty_plan(const TraceMonomial& t, const DimensionVector& d) {
    ContractionPlan plan;
    plan.monomial_key = t.encoding();
    plan.dims = d.dims();
    plan.leaves = t.degree();
    return plan;
}

ContractionStep lone_trace(const Wiring& w) {
    ContractionStep step;
    step.left = 0;
    step.result = 1;
    step.cover = {0};
    step.cost = w.volume(w.leaf_edges[0]);
    step.result_size = 1;
    return step;
}

}  // namespace

std::uint64_t naive_cost(const TraceMonomial& t, const DimensionVector& d) {
    std::uint64_t out = t.degree();
    for (std::size_t p = 0; p < t.degree(); ++p) out = saturating_mul(out, d.total());
    return out;
}

ContractionPlan plan_contraction(const TraceMonomial& t, const DimensionVector& d) {
    t.validate();
    const Wiring w(t, d);
    ContractionPlan plan = empty_plan(t, d);
    if (w.k == 0) return plan;
    if (w.k == 1) {
        plan.steps.push_back(lone_trace(w));
        finish(plan);
        return plan;
    }
    struct Node {
        std::size_t id;
        Mask mask;
    };
    std::vector<Node> active;
    for (std::size_t p = 0; p < w.k; ++p) active.push_back({p, Mask{1} << p});
    std::size_t next_id = w.k;
    while (active.size() > 1) {
        std::size_t best_a = 0;
        std::size_t best_b = 1;
        std::tuple<std::uint64_t, std::vector<std::size_t>> best_key;
        bool have = false;
        for (std::size_t a = 0; a < active.size(); ++a) {
            for (std::size_t b = a + 1; b < active.size(); ++b) {
                const Mask s = active[a].mask | active[b].mask;
                auto key = std::make_tuple(w.volume(w.open(s)), bits_of(s));
                if (!have || key < best_key) {
                    best_key = std::move(key);
                    best_a = a;
                    best_b = b;
                    have = true;
                }
            }
        }
        const Mask s = active[best_a].mask | active[best_b].mask;
        ContractionStep step;
        step.left = active[best_a].id;
        step.right = active[best_b].id;
        step.result = next_id++;
        step.cover = bits_of(s);
        step.open_edges = w.open(s);
        step.cost = w.volume(merge_sets(w.held(active[best_a].mask), w.held(active[best_b].mask)));
        step.result_size = w.volume(step.open_edges);
        plan.steps.push_back(std::move(step));
        active[best_a] = {plan.steps.back().result, s};
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
    }
    finish(plan);
    return plan;
}

ContractionPlan optimal_plan(const TraceMonomial& t, const DimensionVector& d) {
    t.validate();
    const Wiring w(t, d);
    if (w.k > 8) throw std::invalid_argument("optimal_plan: exhaustive search limited to 8 positions");
    ContractionPlan plan = empty_plan(t, d);
    if (w.k == 0) return plan;
    if (w.k == 1) {
        plan.steps.push_back(lone_trace(w));
        finish(plan);
        return plan;
    }
    const Mask full = (Mask{1} << w.k) - 1;
    std::vector<std::uint64_t> best(full + 1, UINT64_MAX);
    std::vector<Mask> split(full + 1, 0);
    for (Mask s = 1; s <= full; ++s) {
        if (std::popcount(s) == 1) {
            best[s] = 0;
            continue;
        }
        const Mask low = s & (~s + 1);
        // proper subsets of s containing its lowest position
        for (Mask a = (s - 1) & s; a != 0; a = (a - 1) & s) {
            if ((a & low) == 0) continue;
            const Mask b = s & ~a;
            const auto c = saturating_add(saturating_add(best[a], best[b]),
                                          w.volume(merge_sets(w.held(a), w.held(b))));
            if (c < best[s] || (c == best[s] && a < split[s])) {
                best[s] = c;
                split[s] = a;
            }
        }
    }
    std::size_t next_id = w.k;
    std::function<std::size_t(Mask)> emit = [&](Mask s) -> std::size_t {
        if (std::popcount(s) == 1) return static_cast<std::size_t>(std::countr_zero(s));
        const Mask a = split[s];
        const Mask b = s & ~a;
        const auto left = emit(a);
        const auto right = emit(b);
        ContractionStep step;
        step.left = left;
        step.right = right;
        step.result = next_id++;
        step.cover = bits_of(s);
        step.open_edges = w.open(s);
        step.cost = w.volume(merge_sets(w.held(a), w.held(b)));
        step.result_size = w.volume(step.open_edges);
        plan.steps.push_back(std::move(step));
        return plan.steps.back().result;
    };
    emit(full);
    finish(plan);
    return plan;
}

void check_plan(const ContractionPlan& plan, const TraceMonomial& t, const DimensionVector& d) {
    if (plan.monomial_key != t.encoding() || plan.dims != d.dims() || plan.leaves != t.degree()) {
        throw std::invalid_argument("contraction plan was built for a different monomial or dimension vector");
    }
    const Wiring w(t, d);
    std::vector<Mask> covered(w.k + plan.steps.size(), 0);
    std::vector<bool> alive(w.k + plan.steps.size(), false);
    for (std::size_t p = 0; p < w.k; ++p) {
        covered[p] = Mask{1} << p;
        alive[p] = true;
    }
    for (std::size_t s = 0; s < plan.steps.size(); ++s) {
        const auto& step = plan.steps[s];
        if (step.result != w.k + s) throw std::invalid_argument("contraction plan: unexpected result id");
        auto take = [&](std::size_t id) {
            if (id >= w.k + s || !alive[id]) throw std::invalid_argument("contraction plan: operand not available");
            alive[id] = false;
            return covered[id];
        };
        Mask m = take(step.left);
        if (step.right != ContractionStep::kNone) m |= take(step.right);
        covered[step.result] = m;
        alive[step.result] = true;
        if (step.open_edges != w.open(m)) throw std::invalid_argument("contraction plan: open edges inconsistent");
    }
    if (w.k > 0) {
        const Mask full = w.k == 64 ? ~Mask{0} : (Mask{1} << w.k) - 1;
        if (plan.steps.empty() || covered[plan.steps.back().result] != full) {
            throw std::invalid_argument("contraction plan does not reduce to a scalar");
        }
    }
}

namespace {

template <typename T>
struct DenseTensor {
    std::vector<std::size_t> legs;
    std::vector<std::size_t> dims;
    std::vector<T> data;
};

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> out(dims.size());
    std::size_t s = 1;
    for (std::size_t i = dims.size(); i-- > 0;) {
        out[i] = s;
        s *= dims[i];
    }
    return out;
}

/// Odometer over a mixed-radix index; returns false after the last one.
bool advance(std::vector<std::size_t>& x, const std::vector<std::size_t>& dims) {
    for (std::size_t i = dims.size(); i-- > 0;) {
        if (++x[i] < dims[i]) return true;
        x[i] = 0;
    }
    return false;
}

template <typename T>
void add_product(T& acc, const T& a, const T& b) {
    acc += a * b;
}

template <>
void add_product<Integer>(Integer& acc, const Integer& a, const Integer& b) {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

template <typename T>
DenseTensor<T> sum_out(const DenseTensor<T>& t, const std::vector<std::size_t>& drop) {
    if (drop.empty()) return t;
    DenseTensor<T> out;
    std::vector<std::size_t> keep_pos;
    for (std::size_t a = 0; a < t.legs.size(); ++a) {
        if (std::find(drop.begin(), drop.end(), t.legs[a]) == drop.end()) {
            keep_pos.push_back(a);
            out.legs.push_back(t.legs[a]);
            out.dims.push_back(t.dims[a]);
        }
    }
    std::size_t size = 1;
    for (auto v : out.dims) size *= v;
    out.data.assign(size, T(0));
    const auto out_strides = strides_of(out.dims);
    std::vector<std::size_t> x(t.legs.size(), 0);
    std::size_t flat = 0;
    do {
        std::size_t target = 0;
        for (std::size_t j = 0; j < keep_pos.size(); ++j) target += x[keep_pos[j]] * out_strides[j];
        out.data[target] += t.data[flat++];
    } while (advance(x, t.dims));
    return out;
}

template <typename T>
std::vector<T> permuted(const DenseTensor<T>& t, const std::vector<std::size_t>& order) {
    std::vector<std::size_t> src_pos;
    std::vector<std::size_t> dims;
    for (auto leg : order) {
        const auto it = std::find(t.legs.begin(), t.legs.end(), leg);
        src_pos.push_back(static_cast<std::size_t>(it - t.legs.begin()));
        dims.push_back(t.dims[src_pos.back()]);
    }
    const auto src_strides = strides_of(t.dims);
    std::vector<T> out;
    out.reserve(t.data.size());
    std::vector<std::size_t> x(order.size(), 0);
    if (order.empty()) return t.data;
    do {
        std::size_t src = 0;
        for (std::size_t j = 0; j < order.size(); ++j) src += x[j] * src_strides[src_pos[j]];
        out.push_back(t.data[src]);
    } while (advance(x, dims));
    return out;
}

template <typename T>
void gemm(std::size_t m, std::size_t n, std::size_t k, const std::vector<T>& a, const std::vector<T>& b,
          std::vector<T>& c) {
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            const T& ail = a[i * k + l];
            if (ail == 0) continue;
            for (std::size_t j = 0; j < n; ++j) add_product(c[i * n + j], ail, b[l * n + j]);
        }
    }
}

template <>
void gemm<double>(std::size_t m, std::size_t n, std::size_t k, const std::vector<double>& a,
                  const std::vector<double>& b, std::vector<double>& c) {
    simd::gemm_f64(m, n, k, a.data(), b.data(), c.data());
}

template <typename T>
DenseTensor<T> merge(DenseTensor<T> a, DenseTensor<T> b, const std::vector<std::size_t>& open) {
    auto in = [](const std::vector<std::size_t>& v, std::size_t e) { return std::find(v.begin(), v.end(), e) != v.end(); };
    // legs private to one operand and not open are self-loops: sum them first
    std::vector<std::size_t> drop_a;
    for (auto e : a.legs) {
        if (!in(b.legs, e) && !in(open, e)) drop_a.push_back(e);
    }
    std::vector<std::size_t> drop_b;
    for (auto e : b.legs) {
        if (!in(a.legs, e) && !in(open, e)) drop_b.push_back(e);
    }
    a = sum_out(a, drop_a);
    b = sum_out(b, drop_b);
    std::vector<std::size_t> shared;
    std::vector<std::size_t> free_a;
    std::vector<std::size_t> free_b;
    std::size_t rows = 1;
    std::size_t inner = 1;
    std::size_t cols = 1;
    DenseTensor<T> out;
    for (std::size_t j = 0; j < a.legs.size(); ++j) {
        if (in(b.legs, a.legs[j])) {
            shared.push_back(a.legs[j]);
            inner *= a.dims[j];
        } else {
            free_a.push_back(a.legs[j]);
            out.legs.push_back(a.legs[j]);
            out.dims.push_back(a.dims[j]);
            rows *= a.dims[j];
        }
    }
    for (std::size_t j = 0; j < b.legs.size(); ++j) {
        if (!in(a.legs, b.legs[j])) {
            free_b.push_back(b.legs[j]);
            out.legs.push_back(b.legs[j]);
            out.dims.push_back(b.dims[j]);
            cols *= b.dims[j];
        }
    }
    auto order_a = free_a;
    order_a.insert(order_a.end(), shared.begin(), shared.end());
    auto order_b = shared;
    order_b.insert(order_b.end(), free_b.begin(), free_b.end());
    const auto lhs = permuted(a, order_a);
    const auto rhs = permuted(b, order_b);
    out.data.assign(rows * cols, T(0));
    gemm(rows, cols, inner, lhs, rhs, out.data);
    return out;
}

/// Leaf tensor of position p over its distinct legs (ascending edge id).
template <typename T>
DenseTensor<T> leaf_tensor(const TraceMonomial& t, const DimensionVector& d, std::size_t p,
                           const std::vector<T>& member) {
    const std::size_t k = t.degree();
    const std::size_t n = t.factors();
    const std::size_t dim = d.total();
    std::vector<std::size_t> row_edge(n);
    std::vector<std::size_t> col_edge(n);
    DenseTensor<T> out;
    for (std::size_t i = 0; i < n; ++i) {
        col_edge[i] = i * k + p;
        row_edge[i] = i * k + inverse(t.sigma[i])(p);
        out.legs.push_back(col_edge[i]);
        out.legs.push_back(row_edge[i]);
    }
    std::sort(out.legs.begin(), out.legs.end());
    out.legs.erase(std::unique(out.legs.begin(), out.legs.end()), out.legs.end());
    for (auto e : out.legs) out.dims.push_back(static_cast<std::size_t>(d[e / k]));
    const auto vstride = strides_of(std::vector<std::size_t>(d.dims().begin(), d.dims().end()));
    std::vector<std::size_t> row_slot(n);
    std::vector<std::size_t> col_slot(n);
    for (std::size_t i = 0; i < n; ++i) {
        row_slot[i] = static_cast<std::size_t>(std::find(out.legs.begin(), out.legs.end(), row_edge[i]) - out.legs.begin());
        col_slot[i] = static_cast<std::size_t>(std::find(out.legs.begin(), out.legs.end(), col_edge[i]) - out.legs.begin());
    }
    std::vector<std::size_t> x(out.legs.size(), 0);
    do {
        std::size_t r = 0;
        std::size_t c = 0;
        for (std::size_t i = 0; i < n; ++i) {
            r += x[row_slot[i]] * vstride[i];
            c += x[col_slot[i]] * vstride[i];
        }
        out.data.push_back(member[r * dim + c]);
    } while (advance(x, out.dims));
    return out;
}

template <typename T>
T run_plan(const TraceMonomial& t, const DimensionVector& d, const std::vector<std::vector<T>>& members,
           const ContractionPlan& plan) {
    const std::size_t k = t.degree();
    if (k == 0) return T(1);
    std::vector<DenseTensor<T>> pool(k + plan.steps.size());
    for (std::size_t p = 0; p < k; ++p) pool[p] = leaf_tensor(t, d, p, members[t.M.entries[p] - 1]);
    for (const auto& step : plan.steps) {
        if (step.right == ContractionStep::kNone) {
            pool[step.result] = sum_out(pool[step.left], pool[step.left].legs);
        } else {
            pool[step.result] = merge(std::move(pool[step.left]), std::move(pool[step.right]), step.open_edges);
        }
        pool[step.left] = {};
        if (step.right != ContractionStep::kNone) pool[step.right] = {};
    }
    const auto& last = pool[plan.steps.back().result];
    if (!last.legs.empty() || last.data.size() != 1) throw std::logic_error("contraction did not end in a scalar");
    return last.data[0];
}

void check_inputs(const TraceMonomial& t, const EndoTuple& inputs) {
    inputs.validate();
    if (inputs.dims.factors() != t.factors()) throw std::invalid_argument("evaluate_with_plan: factor count mismatch");
    for (int label : t.M.entries) {
        if (static_cast<std::size_t>(label) > inputs.size()) {
            throw std::invalid_argument("evaluate_with_plan: label " + std::to_string(label) + " but only " +
                                        std::to_string(inputs.size()) + " inputs");
        }
    }
}

}  // namespace

Scalar evaluate_with_plan(const TraceMonomial& t, const EndoTuple& inputs, const ContractionPlan& plan) {
    t.validate();
    check_inputs(t, inputs);
    check_plan(plan, t, inputs.dims);
    const auto scaled = clear_denominators(inputs);
    const Integer total = run_plan(t, inputs.dims, scaled.entries, plan);
    Integer den = 1;
    for (int label : t.M.entries) den *= scaled.denominators[label - 1];
    Scalar out(total, den);
    out.canonicalize();
    return out;
}

double evaluate_with_plan_f64(const TraceMonomial& t, const EndoTuple& inputs, const ContractionPlan& plan) {
    t.validate();
    check_inputs(t, inputs);
    check_plan(plan, t, inputs.dims);
    std::vector<std::vector<double>> members;
    for (const auto& a : inputs.members) {
        std::vector<double> row;
        row.reserve(a.entries.data().size());
        for (const auto& x : a.entries.data()) row.push_back(x.get_d());
        members.push_back(std::move(row));
    }
    return run_plan(t, inputs.dims, members, plan);
}

}  // namespace localinv
