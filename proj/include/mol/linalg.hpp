#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "mol/rational.hpp"

namespace mol {

/// Sparse row: (column, value) pairs sorted by column, no explicit zeros.
using SparseVector = std::vector<std::pair<std::uint32_t, Rational>>;

/// r + s * v, both sorted.
SparseVector axpy(const SparseVector& r, const Rational& s, const SparseVector& v);

/// Incrementally built row-echelon basis of a subspace of Q^columns.
/// Every stored row has leading coefficient 1 at its pivot column.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t columns = 0);

  std::size_t columns() const noexcept { return pivot_row_.size(); }
  std::size_t rank() const noexcept { return rows_.size(); }
  bool is_full() const noexcept { return rank() == columns(); }

  /// Remainder of v modulo the span; it has no entries at pivot columns and
  /// is zero exactly when v lies in the span.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  /// Adds v to the span; true if the rank grew.
  bool insert(SparseVector v);

  /// Pivot columns in increasing order.
  std::vector<std::uint32_t> pivots() const;

  /// Stored echelon rows, in insertion order.
  const std::vector<SparseVector>& rows() const noexcept { return rows_; }

  /// Reduced row echelon form, rows ordered by pivot. Independent of the
  /// insertion order.
  std::vector<SparseVector> reduced_rows() const;

 private:
  std::vector<SparseVector> rows_;
  std::vector<long> pivot_row_;
};

}  // namespace mol
