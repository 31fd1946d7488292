#pragma once

#include <fmethod/rational.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace fmethod {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

namespace detail {

/// In-place Gauss-Jordan reduction to reduced row echelon form. Pivots are
/// taken in column order; returns the pivot column of each nonzero row.
inline std::vector<std::size_t> rref(RationalMatrix& a, std::size_t cols) {
  for (auto& r : a)
    for (auto& e : r) e.canonicalize();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && sgn(a[sel][col]) == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[sel], a[row]);
    Rational inv = Rational(1) / a[row][col];
    for (std::size_t j = col; j < cols; ++j) a[row][j] *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col];
      for (std::size_t j = col; j < cols; ++j)
        if (sgn(a[row][j]) != 0) a[r][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t column_count(const RationalMatrix& rows, std::size_t cols_hint) {
  if (rows.empty()) return cols_hint;
  std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw std::invalid_argument("rows of unequal length");
  return cols;
}

}  // namespace detail

/// Basis of the right kernel {v : rows·v = 0}. One vector per non-pivot
/// column, scaled so its first nonzero entry is 1; empty when the kernel is
/// trivial.
/// `cols` is only consulted when `rows` is empty.
inline std::vector<RationalVector> nullspace(RationalMatrix rows, std::size_t cols = 0) {
  cols = detail::column_count(rows, cols);
  auto pivots = detail::rref(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free];
    for (const auto& e : v)
      if (sgn(e) != 0) {
        Rational inv = Rational(1) / e;
        for (auto& f : v) f *= inv;
        break;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t rank(RationalMatrix rows) {
  if (rows.empty()) return 0;
  std::size_t cols = detail::column_count(rows, 0);
  return detail::rref(rows, cols).size();
}

/// Assembles a matrix from sparse column images. Row keys are numbered in
/// their sorted order so the result is deterministic.
template <class RowKey>
RationalMatrix assemble_columns(const std::vector<std::map<RowKey, Rational>>& columns) {
  std::map<RowKey, std::size_t> row_index;
  for (const auto& col : columns)
    for (const auto& [k, v] : col) row_index.emplace(k, 0);
  std::size_t next = 0;
  for (auto& [k, idx] : row_index) idx = next++;
  RationalMatrix m(row_index.size(), RationalVector(columns.size(), Rational(0)));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [k, v] : columns[j]) m[row_index[k]][j] = v;
  return m;
}

/// Whether every vector of `sub` lies in span(`super`). All vectors share one
/// coordinate system given by the key type.
template <class Key>
bool span_contains(const std::vector<std::map<Key, Rational>>& super,
                   const std::vector<std::map<Key, Rational>>& sub) {
  if (sub.empty()) return true;
  std::vector<std::map<Key, Rational>> both = super;
  both.insert(both.end(), sub.begin(), sub.end());
  auto m_super = assemble_columns(both);
  // Column rank of the first |super| columns vs all columns.
  RationalMatrix a(m_super.size()), b = m_super;
  for (std::size_t r = 0; r < m_super.size(); ++r)
    a[r].assign(m_super[r].begin(), m_super[r].begin() + static_cast<std::ptrdiff_t>(super.size()));
  auto transpose = [](const RationalMatrix& m) {
    if (m.empty()) return m;
    RationalMatrix t(m[0].size(), RationalVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
  };
  std::size_t rank_super = super.empty() ? 0 : rank(transpose(a));
  return rank_super == rank(transpose(b));
}

}  // namespace fmethod
