#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace localinv {

/// Permutation of {1,...,k}. Stored 0-based; every public constructor and
/// accessor that mentions "images" or "one_line" is 1-based.
class Permutation {
public:
    Permutation() = default;

    static Permutation identity(std::size_t k);
    /// One-line notation, 1-based. Throws std::invalid_argument unless the
    /// images form a bijection of {1,...,k}.
    static Permutation from_one_line(std::span<const int> images);
    /// Cycle notation such as "(1 2)(3)" on k points; omitted points are
    /// fixed. "()" and "id" denote the identity.
    static Permutation parse_cycles(std::string_view text, std::size_t k);
    static Permutation from_cycles(const std::vector<std::vector<int>>& cycles, std::size_t k);

    std::size_t size() const { return map_.size(); }
    /// 0-based image of a 0-based point.
    std::size_t operator()(std::size_t x) const { return map_[x]; }
    std::vector<int> one_line() const;
    const std::vector<std::uint32_t>& zero_based() const { return map_; }

    bool is_identity() const;
    std::size_t largest_cycle() const;
    std::size_t cycle_count() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    explicit Permutation(std::vector<std::uint32_t> map) : map_(std::move(map)) {}
    friend Permutation compose(const Permutation&, const Permutation&);
    friend Permutation inverse(const Permutation&);
    friend Permutation conjugate_by(const Permutation&, const Permutation&);
    friend Permutation restrict_to(const Permutation&, std::span<const std::size_t>);
    friend Permutation shifted_union(const Permutation&, const Permutation&);

    std::vector<std::uint32_t> map_;
};

/// (p o q)(x) = p(q(x)). Throws std::invalid_argument on size mismatch.
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
/// pi^{-1} o p o pi: the permutation p seen through the relabeling
/// new position x = old position pi(x).
Permutation conjugate_by(const Permutation& p, const Permutation& pi);
/// Restriction of p to an invariant subset, renumbered in the given order.
Permutation restrict_to(const Permutation& p, std::span<const std::size_t> points);
/// p on the first block, q shifted by p.size() on the second.
Permutation shifted_union(const Permutation& p, const Permutation& q);

/// Disjoint cycles, 1-based, each starting at its minimal element, sorted
/// by minimal element; fixed points appear as 1-cycles.
struct CycleDecomposition {
    std::vector<std::vector<int>> cycles;

    std::string to_string() const;          // "(1 2)(3)"
    std::string to_compact_string() const;  // "(12)", "id" when trivial
};

CycleDecomposition cycle_decomposition(const Permutation& p);

/// Ordered multiset of labels in {1,...,m}.
struct OrderedMultiset {
    std::vector<int> entries;
    int m = 0;

    /// Throws std::invalid_argument if some entry is outside [1, m].
    void validate() const;
    std::size_t size() const { return entries.size(); }
    friend bool operator==(const OrderedMultiset&, const OrderedMultiset&) = default;
};

/// degrees[i] = multiplicity of label i+1.
struct MultiDegree {
    std::vector<int> degrees;

    int total() const;
    friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
};

MultiDegree multidegree_of(const OrderedMultiset& multiset);

/// Local dimensions (d_1,...,d_n), all >= 1.
class DimensionVector {
public:
    DimensionVector() = default;
    explicit DimensionVector(std::vector<int> dims);

    const std::vector<int>& dims() const { return dims_; }
    std::size_t factors() const { return dims_.size(); }
    int operator[](std::size_t i) const { return dims_[i]; }
    /// dim V = prod d_i.
    std::size_t total() const { return total_; }
    friend bool operator==(const DimensionVector&, const DimensionVector&) = default;

private:
    std::vector<int> dims_;
    std::size_t total_ = 1;
};

std::uint64_t euler_totient(std::uint64_t n);
/// (1/k) sum_{l | k} phi(l) m^{k/l}. Throws std::overflow_error past 64 bits.
std::uint64_t necklace_count(std::uint64_t m, std::uint64_t k);
/// Lexicographically minimal representative of each rotation class of
/// words of length k over {1,...,m}, in lexicographic order.
std::vector<std::vector<int>> enumerate_necklaces(int m, int k);

/// Parses "2,2" or "1, 2 ,3" into integers.
std::vector<int> parse_int_list(std::string_view text);

}  // namespace localinv
