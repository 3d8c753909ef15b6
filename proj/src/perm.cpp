#include "localinv/perm.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace localinv {

Permutation Permutation::identity(std::size_t k) {
    std::vector<std::uint32_t> map(k);
    std::iota(map.begin(), map.end(), 0U);
    return Permutation(std::move(map));
}

Permutation Permutation::from_one_line(std::span<const int> images) {
    const std::size_t k = images.size();
    std::vector<std::uint32_t> map(k);
    std::vector<bool> seen(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        const int v = images[i];
        if (v < 1 || static_cast<std::size_t>(v) > k) {
            throw std::invalid_argument("permutation image " + std::to_string(v) + " out of range 1.." +
                                        std::to_string(k));
        }
        if (seen[v - 1]) throw std::invalid_argument("permutation image " + std::to_string(v) + " repeated");
        seen[v - 1] = true;
        map[i] = static_cast<std::uint32_t>(v - 1);
    }
    return Permutation(std::move(map));
}

Permutation Permutation::from_cycles(const std::vector<std::vector<int>>& cycles, std::size_t k) {
    std::vector<int> images(k);
    std::iota(images.begin(), images.end(), 1);
    std::vector<bool> used(k, false);
    for (const auto& cycle : cycles) {
        for (std::size_t j = 0; j < cycle.size(); ++j) {
            const int a = cycle[j];
            if (a < 1 || static_cast<std::size_t>(a) > k) {
                throw std::invalid_argument("cycle entry " + std::to_string(a) + " out of range 1.." +
                                            std::to_string(k));
            }
            if (used[a - 1]) throw std::invalid_argument("cycle entry " + std::to_string(a) + " repeated");
            used[a - 1] = true;
            images[a - 1] = cycle[(j + 1) % cycle.size()];
        }
    }
    return from_one_line(images);
}

Permutation Permutation::parse_cycles(std::string_view text, std::size_t k) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    };
    skip_ws();
    if (text.substr(i) == "id") return identity(k);
    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle notation: '" + std::string(text) + "'");
        ++i;
        std::vector<int> cycle;
        while (true) {
            skip_ws();
            if (i >= text.size()) throw std::invalid_argument("unterminated cycle: '" + std::string(text) + "'");
            if (text[i] == ')') {
                ++i;
                break;
            }
            int value = 0;
            const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
            if (ec != std::errc{}) {
                throw std::invalid_argument("bad cycle entry in '" + std::string(text) + "'");
            }
            i = static_cast<std::size_t>(ptr - text.data());
            cycle.push_back(value);
        }
        if (!cycle.empty()) cycles.push_back(std::move(cycle));
    }
    return from_cycles(cycles, k);
}

std::vector<int> Permutation::one_line() const {
    std::vector<int> out(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) out[i] = static_cast<int>(map_[i]) + 1;
    return out;
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < map_.size(); ++i) {
        if (map_[i] != i) return false;
    }
    return true;
}

std::size_t Permutation::largest_cycle() const {
    std::size_t best = 0;
    for (const auto& c : cycle_decomposition(*this).cycles) best = std::max(best, c.size());
    return best;
}

std::size_t Permutation::cycle_count() const { return cycle_decomposition(*this).cycles.size(); }

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("compose: size mismatch " + std::to_string(p.size()) + " vs " +
                                    std::to_string(q.size()));
    }
    std::vector<std::uint32_t> map(p.size());
    for (std::size_t x = 0; x < map.size(); ++x) map[x] = p.map_[q.map_[x]];
    return Permutation(std::move(map));
}

Permutation inverse(const Permutation& p) {
    std::vector<std::uint32_t> map(p.size());
    for (std::size_t x = 0; x < map.size(); ++x) map[p.map_[x]] = static_cast<std::uint32_t>(x);
    return Permutation(std::move(map));
}

Permutation conjugate_by(const Permutation& p, const Permutation& pi) {
    if (p.size() != pi.size()) throw std::invalid_argument("conjugate_by: size mismatch");
    std::vector<std::uint32_t> inv(pi.size());
    for (std::size_t x = 0; x < inv.size(); ++x) inv[pi.map_[x]] = static_cast<std::uint32_t>(x);
    std::vector<std::uint32_t> map(p.size());
    for (std::size_t x = 0; x < map.size(); ++x) map[x] = inv[p.map_[pi.map_[x]]];
    return Permutation(std::move(map));
}

Permutation restrict_to(const Permutation& p, std::span<const std::size_t> points) {
    std::vector<std::uint32_t> local(p.size(), UINT32_MAX);
    for (std::size_t j = 0; j < points.size(); ++j) local[points[j]] = static_cast<std::uint32_t>(j);
    std::vector<std::uint32_t> map(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        const auto image = local[p.map_[points[j]]];
        if (image == UINT32_MAX) throw std::invalid_argument("restrict_to: subset is not invariant");
        map[j] = image;
    }
    return Permutation(std::move(map));
}

Permutation shifted_union(const Permutation& p, const Permutation& q) {
    std::vector<std::uint32_t> map(p.map_);
    const auto shift = static_cast<std::uint32_t>(p.size());
    for (auto v : q.map_) map.push_back(v + shift);
    return Permutation(std::move(map));
}

CycleDecomposition cycle_decomposition(const Permutation& p) {
    CycleDecomposition out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t start = 0; start < p.size(); ++start) {
        if (seen[start]) continue;
        std::vector<int> cycle;
        for (std::size_t x = start; !seen[x]; x = p(x)) {
            seen[x] = true;
            cycle.push_back(static_cast<int>(x) + 1);
        }
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

std::string CycleDecomposition::to_string() const {
    std::ostringstream os;
    for (const auto& c : cycles) {
        os << '(';
        for (std::size_t j = 0; j < c.size(); ++j) os << (j ? " " : "") << c[j];
        os << ')';
    }
    return os.str();
}

std::string CycleDecomposition::to_compact_string() const {
    std::ostringstream os;
    bool wide = false;
    for (const auto& c : cycles) {
        for (int v : c) wide = wide || v > 9;
    }
    for (const auto& c : cycles) {
        if (c.size() == 1) continue;
        os << '(';
        for (std::size_t j = 0; j < c.size(); ++j) os << (j && wide ? " " : "") << c[j];
        os << ')';
    }
    const auto s = os.str();
    return s.empty() ? "id" : s;
}

void OrderedMultiset::validate() const {
    for (int e : entries) {
        if (e < 1 || e > m) {
            throw std::invalid_argument("multiset entry " + std::to_string(e) + " outside 1.." + std::to_string(m));
        }
    }
}

int MultiDegree::total() const { return std::accumulate(degrees.begin(), degrees.end(), 0); }

MultiDegree multidegree_of(const OrderedMultiset& multiset) {
    MultiDegree out{std::vector<int>(static_cast<std::size_t>(multiset.m), 0)};
    for (int e : multiset.entries) ++out.degrees[e - 1];
    return out;
}

DimensionVector::DimensionVector(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("dimension vector must have at least one factor");
    for (int d : dims_) {
        if (d < 1) throw std::invalid_argument("local dimension must be >= 1, got " + std::to_string(d));
        total_ *= static_cast<std::size_t>(d);
    }
}

std::uint64_t euler_totient(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("euler_totient: n must be >= 1");
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(out, base, &out)) throw std::overflow_error("necklace_count overflow");
    }
    return out;
}

}  // namespace

std::uint64_t necklace_count(std::uint64_t m, std::uint64_t k) {
    if (m == 0 || k == 0) throw std::invalid_argument("necklace_count: m and k must be >= 1");
    std::uint64_t sum = 0;
    for (std::uint64_t l = 1; l <= k; ++l) {
        if (k % l != 0) continue;
        std::uint64_t term = 0;
        if (__builtin_mul_overflow(euler_totient(l), checked_pow(m, k / l), &term) ||
            __builtin_add_overflow(sum, term, &sum)) {
            throw std::overflow_error("necklace_count overflow");
        }
    }
    if (sum % k != 0) throw std::logic_error("necklace_count: totient sum not divisible by k");
    return sum / k;
}

std::vector<std::vector<int>> enumerate_necklaces(int m, int k) {
    if (m < 1 || k < 1) throw std::invalid_argument("enumerate_necklaces: m and k must be >= 1");
    // Fredricksen-Kessler-Maiorana: prenecklaces in lex order, keep those
    // whose Lyndon prefix length divides k.
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(k) + 1, 0);
    auto emit = [&](int p) {
        if (k % p == 0) {
            std::vector<int> word(a.begin() + 1, a.end());
            for (int& x : word) ++x;
            out.push_back(std::move(word));
        }
    };
    // iterative form of the recursive generator
    int p = 1;
    emit(p);
    while (true) {
        int i = k;
        while (i >= 1 && a[i] == m - 1) --i;
        if (i == 0) break;
        ++a[i];
        for (int j = i + 1; j <= k; ++j) a[j] = a[j - i];
        p = i;
        emit(p);
    }
    return out;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    const auto bad = [&] { return std::invalid_argument("expected integer list such as 2,2, got '" + std::string(text) + "'"); };
    auto skip_spaces = [&](std::size_t i) {
        while (i < text.size() && text[i] == ' ') ++i;
        return i;
    };
    std::size_t i = skip_spaces(0);
    if (i == text.size()) return out;
    while (true) {
        int value = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
        if (ec != std::errc{}) throw bad();
        out.push_back(value);
        i = skip_spaces(static_cast<std::size_t>(ptr - text.data()));
        if (i == text.size()) return out;
        if (text[i] != ',') throw bad();
        i = skip_spaces(i + 1);
        if (i == text.size()) throw bad();
    }
}

}  // namespace localinv
