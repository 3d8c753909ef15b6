#pragma once

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "localinv/rational.hpp"

namespace localinv {

/// Sparse vector: (column, value) pairs, columns strictly increasing, no
/// zero values.
using SparseVector = std::vector<std::pair<std::size_t, Integer>>;

/// Incremental row echelon over Z with content removal (fraction-free, so
/// exact over Q). A row is reduced only at its leading column, pivots are
/// the first nonzero column, and insertion order fixes the result.
class SparseEchelon {
public:
    /// Returns true when v is independent of the rows inserted so far.
    bool insert(SparseVector v);
    std::size_t rank() const { return rows_.size(); }

private:
    std::vector<SparseVector> rows_;
    std::unordered_map<std::size_t, std::size_t> pivot_row_;
};

/// Scales a rational row to a primitive integer row.
SparseVector to_sparse(const std::vector<Scalar>& row);

/// Rank over Q of the given rows.
std::size_t rank(const std::vector<std::vector<Scalar>>& rows);

}  // namespace localinv
