#include "mol/linalg.hpp"

#include <algorithm>

#include "mol/errors.hpp"

namespace mol {

SparseVector axpy(const SparseVector& r, const Rational& s, const SparseVector& v) {
  SparseVector out;
  out.reserve(r.size() + v.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < r.size() || j < v.size()) {
    if (j == v.size() || (i < r.size() && r[i].first < v[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || v[j].first < r[i].first) {
      out.emplace_back(v[j].first, s * v[j].second);
      ++j;
    } else {
      Rational value = r[i].second + s * v[j].second;
      if (!is_zero(value)) out.emplace_back(r[i].first, std::move(value));
      ++i;
      ++j;
    }
  }
  return out;
}

EchelonBasis::EchelonBasis(std::size_t columns) : pivot_row_(columns, -1) {}

SparseVector EchelonBasis::reduce(SparseVector v) const {
  std::size_t i = 0;
  while (i < v.size()) {
    const auto col = v[i].first;
    if (col >= pivot_row_.size()) throw MismatchError("vector longer than the ambient space");
    const long p = pivot_row_[col];
    if (p < 0) {
      ++i;
      continue;
    }
    const Rational factor = -v[i].second;
    v = axpy(v, factor, rows_[static_cast<std::size_t>(p)]);
  }
  return v;
}

bool EchelonBasis::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const Rational lead = v.front().second;
  if (lead != 1) {
    for (auto& [col, value] : v) value /= lead;
  }
  pivot_row_[v.front().first] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

std::vector<std::uint32_t> EchelonBasis::pivots() const {
  std::vector<std::uint32_t> out;
  for (std::size_t c = 0; c < pivot_row_.size(); ++c) {
    if (pivot_row_[c] >= 0) out.push_back(static_cast<std::uint32_t>(c));
  }
  return out;
}

std::vector<SparseVector> EchelonBasis::reduced_rows() const {
  std::vector<SparseVector> out;
  const auto piv = pivots();
  out.reserve(piv.size());
  for (auto c : piv) out.push_back(rows_[static_cast<std::size_t>(pivot_row_[c])]);
  // Back substitution, last pivot first.
  for (std::size_t k = out.size(); k-- > 0;) {
    for (std::size_t r = 0; r < k; ++r) {
      auto it = std::lower_bound(out[r].begin(), out[r].end(), piv[k],
                                 [](const auto& e, std::uint32_t col) { return e.first < col; });
      if (it != out[r].end() && it->first == piv[k]) {
        const Rational factor = -it->second;
        out[r] = axpy(out[r], factor, out[k]);
      }
    }
  }
  return out;
}

}  // namespace mol
