#include "localinv/trace_monomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace localinv {

namespace {

/// Label-preserving relabelings pi (new position x = old position pi(x))
/// such that M o pi is weakly increasing.
class SortingRelabelings {
public:
    explicit SortingRelabelings(const OrderedMultiset& M) {
        std::map<int, std::vector<std::size_t>> by_label;
        for (std::size_t p = 0; p < M.size(); ++p) by_label[M.entries[p]].push_back(p);
        for (auto& [label, positions] : by_label) blocks_.push_back(std::move(positions));
        current_ = blocks_;
    }

    std::vector<int> sorted_labels(const OrderedMultiset& M) const {
        std::vector<int> out;
        for (const auto& block : blocks_) {
            for (auto p : block) out.push_back(M.entries[p]);
        }
        return out;
    }

    Permutation current() const {
        std::vector<int> images;
        for (const auto& block : current_) {
            for (auto p : block) images.push_back(static_cast<int>(p) + 1);
        }
        return Permutation::from_one_line(images);
    }

    /// Odometer over the product of per-block permutations.
    bool advance() {
        for (std::size_t b = current_.size(); b-- > 0;) {
            if (std::next_permutation(current_[b].begin(), current_[b].end())) return true;
            // next_permutation wrapped around to sorted order; carry
        }
        return false;
    }

private:
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::vector<std::size_t>> current_;
};

/// Permutations of {0..k-1} that preserve the labels of M, as an explicit
/// list (used for per-factor relabeling).
std::vector<Permutation> label_preserving_group(const OrderedMultiset& M) {
    std::map<int, std::vector<std::size_t>> by_label;
    for (std::size_t p = 0; p < M.size(); ++p) by_label[M.entries[p]].push_back(p);
    std::vector<std::vector<std::size_t>> blocks;
    for (auto& [label, positions] : by_label) blocks.push_back(positions);
    auto current = blocks;
    std::vector<Permutation> out;
    while (true) {
        std::vector<int> images(M.size());
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            for (std::size_t j = 0; j < blocks[b].size(); ++j) {
                images[blocks[b][j]] = static_cast<int>(current[b][j]) + 1;
            }
        }
        out.push_back(Permutation::from_one_line(images));
        bool advanced = false;
        for (std::size_t b = current.size(); b-- > 0;) {
            if (std::next_permutation(current[b].begin(), current[b].end())) {
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

std::vector<std::vector<std::size_t>> position_components(const TraceMonomial& t) {
    const std::size_t k = t.degree();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& s : t.sigma) {
        for (std::size_t p = 0; p < k; ++p) {
            const auto a = find(p);
            const auto b = find(s(p));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t p = 0; p < k; ++p) groups[find(p)].push_back(p);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

TraceMonomial sub_monomial(const TraceMonomial& t, const std::vector<std::size_t>& positions) {
    TraceMonomial out;
    out.M.m = t.M.m;
    for (auto p : positions) out.M.entries.push_back(t.M.entries[p]);
    for (const auto& s : t.sigma) out.sigma.push_back(restrict_to(s, positions));
    return out;
}

}  // namespace

void TraceMonomial::validate() const {
    M.validate();
    for (const auto& s : sigma) {
        if (s.size() != M.size()) {
            throw std::invalid_argument("trace monomial: permutation on " + std::to_string(s.size()) +
                                        " points but |M| = " + std::to_string(M.size()));
        }
    }
}

std::vector<int> TraceMonomial::encoding() const {
    std::vector<int> out = M.entries;
    for (const auto& s : sigma) {
        const auto line = s.one_line();
        out.insert(out.end(), line.begin(), line.end());
    }
    return out;
}

std::string TraceMonomial::to_text() const {
    if (M.size() == 0) return "1";
    std::ostringstream os;
    os << "Tr^{(";
    for (std::size_t p = 0; p < M.size(); ++p) os << (p ? "," : "") << M.entries[p];
    os << ")}_{";
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        os << (i ? "," : "") << cycle_decomposition(sigma[i]).to_compact_string();
    }
    os << "}";
    return os.str();
}

TraceMonomial empty_monomial(std::size_t factors, int m) {
    TraceMonomial out;
    out.M.m = m;
    out.sigma.assign(factors, Permutation::identity(0));
    return out;
}

MultiDegree multidegree(const TraceMonomial& t) { return multidegree_of(t.M); }

GirthTuple girth(const TraceMonomial& t) {
    GirthTuple out;
    for (const auto& s : t.sigma) out.sizes.push_back(s.largest_cycle());
    return out;
}

bool girth_filter(const TraceMonomial& t, const DimensionVector& d, bool use_small_dim) {
    if (d.factors() != t.factors()) throw std::invalid_argument("girth_filter: factor count mismatch");
    const auto g = girth(t);
    for (std::size_t i = 0; i < d.factors(); ++i) {
        const auto di = static_cast<std::size_t>(d[i]);
        std::size_t bound = di * di;
        if (use_small_dim) {
            if (di > 3) {
                throw std::invalid_argument("small-dimension girth bound only holds for d_i <= 3, got d_" +
                                            std::to_string(i + 1) + " = " + std::to_string(di));
            }
            bound = di * (di + 1) / 2;
        }
        if (g.sizes[i] > bound) return false;
    }
    return true;
}

TraceMonomial canonicalize(const TraceMonomial& t) {
    SortingRelabelings relabel(t.M);
    TraceMonomial best;
    std::vector<int> best_key;
    bool first = true;
    const auto labels = relabel.sorted_labels(t.M);
    do {
        const auto pi = relabel.current();
        TraceMonomial candidate;
        candidate.M = OrderedMultiset{labels, t.M.m};
        candidate.sigma.reserve(t.sigma.size());
        for (const auto& s : t.sigma) candidate.sigma.push_back(conjugate_by(s, pi));
        auto key = candidate.encoding();
        if (first || key < best_key) {
            best = std::move(candidate);
            best_key = std::move(key);
            first = false;
        }
    } while (relabel.advance());
    return best;
}

TraceMonomial segre_canonicalize(const TraceMonomial& t) {
    SortingRelabelings relabel(t.M);
    const auto pi = relabel.current();
    TraceMonomial sorted;
    sorted.M = OrderedMultiset{relabel.sorted_labels(t.M), t.M.m};
    for (const auto& s : t.sigma) sorted.sigma.push_back(conjugate_by(s, pi));
    const auto group = label_preserving_group(sorted.M);
    // per-factor choices are independent, so the lexicographic minimum of
    // the concatenation is the concatenation of per-factor minima
    for (auto& s : sorted.sigma) {
        Permutation best = s;
        for (const auto& g : group) best = std::min(best, conjugate_by(s, g));
        s = best;
    }
    return sorted;
}

std::vector<TraceMonomial> split_components(const TraceMonomial& t) {
    std::vector<TraceMonomial> out;
    for (const auto& comp : position_components(t)) out.push_back(canonicalize(sub_monomial(t, comp)));
    return out;
}

bool is_position_connected(const TraceMonomial& t) { return position_components(t).size() == 1; }

std::vector<TraceMonomial> factor(const TraceMonomial& t) {
    if (t.degree() == 0) return {};
    const auto group = label_preserving_group(t.M);
    const std::size_t free_factors = t.factors() > 0 ? t.factors() - 1 : 0;
    double search = 1;
    for (std::size_t i = 0; i < free_factors; ++i) search *= static_cast<double>(group.size());
    if (search > 2e6) {
        throw std::invalid_argument("factor: relabeling search too large (" + std::to_string(search) + " cases)");
    }
    // factor 1 stays fixed: a simultaneous relabeling never changes the components
    std::vector<std::size_t> choice(free_factors, 0);
    TraceMonomial best = t;
    std::size_t best_count = position_components(t).size();
    std::vector<int> best_key = t.encoding();
    while (true) {
        TraceMonomial candidate = t;
        for (std::size_t i = 0; i < free_factors; ++i) {
            candidate.sigma[i + 1] = conjugate_by(t.sigma[i + 1], group[choice[i]]);
        }
        const auto count = position_components(candidate).size();
        auto key = candidate.encoding();
        if (count > best_count || (count == best_count && key < best_key)) {
            best = std::move(candidate);
            best_count = count;
            best_key = std::move(key);
        }
        std::size_t i = 0;
        while (i < free_factors && ++choice[i] == group.size()) choice[i++] = 0;
        if (i == free_factors) break;
    }
    std::vector<TraceMonomial> out;
    for (const auto& comp : position_components(best)) out.push_back(canonicalize(sub_monomial(best, comp)));
    return out;
}

TraceMonomial product(const TraceMonomial& a, const TraceMonomial& b) {
    if (a.factors() != b.factors()) {
        throw std::invalid_argument("product: tensor factor counts differ (" + std::to_string(a.factors()) + " vs " +
                                    std::to_string(b.factors()) + ")");
    }
    if (a.M.m != b.M.m) {
        throw std::invalid_argument("product: label counts differ (" + std::to_string(a.M.m) + " vs " +
                                    std::to_string(b.M.m) + ")");
    }
    TraceMonomial out;
    out.M.m = a.M.m;
    out.M.entries = a.M.entries;
    out.M.entries.insert(out.M.entries.end(), b.M.entries.begin(), b.M.entries.end());
    for (std::size_t i = 0; i < a.factors(); ++i) out.sigma.push_back(shifted_union(a.sigma[i], b.sigma[i]));
    return out;
}

TraceMonomial restitution(const std::vector<Permutation>& sigma, const MultiDegree& alpha) {
    const auto k = static_cast<std::size_t>(alpha.total());
    TraceMonomial out;
    out.M.m = static_cast<int>(alpha.degrees.size());
    for (std::size_t label = 0; label < alpha.degrees.size(); ++label) {
        if (alpha.degrees[label] < 0) throw std::invalid_argument("restitution: negative degree");
        out.M.entries.insert(out.M.entries.end(), static_cast<std::size_t>(alpha.degrees[label]),
                             static_cast<int>(label) + 1);
    }
    for (const auto& s : sigma) {
        if (s.size() != k) {
            throw std::invalid_argument("restitution: permutation on " + std::to_string(s.size()) +
                                        " points but |alpha| = " + std::to_string(k));
        }
    }
    out.sigma = sigma;
    return out;
}

std::vector<Permutation> all_permutations(std::size_t k) {
    std::vector<int> line(k);
    std::iota(line.begin(), line.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_one_line(line));
    } while (std::next_permutation(line.begin(), line.end()));
    return out;
}

std::vector<TraceMonomial> enumerate_generators(const MultiDegree& alpha, const DimensionVector& d,
                                                const EnumerateOptions& options) {
    const auto k = static_cast<std::size_t>(alpha.total());
    const auto n = d.factors();
    if (k == 0) {
        if (options.connected_only) return {};
        return {empty_monomial(n, static_cast<int>(alpha.degrees.size()))};
    }
    const auto perms = all_permutations(k);
    std::map<std::vector<int>, TraceMonomial> unique;
    std::vector<std::size_t> choice(n, 0);
    std::vector<Permutation> sigma(n, perms[0]);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) sigma[i] = perms[choice[i]];
        auto canon = canonicalize(restitution(sigma, alpha));
        auto key = canon.encoding();
        unique.try_emplace(std::move(key), std::move(canon));
        std::size_t i = n;
        while (i > 0 && ++choice[i - 1] == perms.size()) choice[--i] = 0;
        if (i == 0) break;
    }
    std::vector<TraceMonomial> out;
    for (auto& [key, t] : unique) {
        if (options.connected_only && !is_position_connected(t)) continue;
        if (options.apply_girth && !girth_filter(t, d, options.small_dim)) continue;
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace localinv
