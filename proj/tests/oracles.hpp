#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "localinv/matrix.hpp"
#include "localinv/perm.hpp"

namespace oracle {

/// Rotation classes of all words of length k over m letters.
inline std::size_t necklaces_by_rotation(int m, int k) {
    std::set<std::vector<int>> classes;
    std::vector<int> w(static_cast<std::size_t>(k), 1);
    while (true) {
        auto best = w;
        auto r = w;
        for (int s = 0; s < k; ++s) {
            std::rotate(r.begin(), r.begin() + 1, r.end());
            best = std::min(best, r);
        }
        classes.insert(best);
        int i = k - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == m) w[static_cast<std::size_t>(i--)] = 1;
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return classes.size();
}

inline std::uint64_t totient_by_gcd(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t i = 1; i <= n; ++i) c += std::gcd(i, n) == 1;
    return c;
}

/// Partitions of n into parts of size at most p.
inline std::uint64_t partitions_bounded(int n, int p) {
    if (n == 0) return 1;
    if (n < 0 || p == 0) return 0;
    return partitions_bounded(n - p, p) + partitions_bounded(n, p - 1);
}

/// Multisets of size j over `count` items: C(count + j - 1, j).
inline std::uint64_t multisets(std::uint64_t count, std::uint64_t j) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= j; ++i) r = r * (count + i - 1) / i;
    return r;
}

inline localinv::Matrix power(const localinv::Matrix& a, int k) {
    auto out = localinv::Matrix::identity(a.rows());
    for (int i = 0; i < k; ++i) out = out * a;
    return out;
}

/// Partial trace over factor `keep`'s complement for a two-factor space:
/// returns the block over factor 0 (keep = 0) or factor 1 (keep = 1).
inline localinv::Matrix partial_trace(const localinv::Matrix& a, std::size_t d0, std::size_t d1, int keep) {
    const std::size_t k = keep == 0 ? d0 : d1;
    localinv::Matrix out(k, k);
    for (std::size_t r0 = 0; r0 < d0; ++r0) {
        for (std::size_t r1 = 0; r1 < d1; ++r1) {
            for (std::size_t c0 = 0; c0 < d0; ++c0) {
                for (std::size_t c1 = 0; c1 < d1; ++c1) {
                    if (keep == 0 && r1 == c1) out(r0, c0) += a(r0 * d1 + r1, c0 * d1 + c1);
                    if (keep == 1 && r0 == c0) out(r1, c1) += a(r0 * d1 + r1, c0 * d1 + c1);
                }
            }
        }
    }
    return out;
}

}  // namespace oracle
