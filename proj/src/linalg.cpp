#include "qdual/linalg.hpp"

#include "qdual/errors.hpp"

namespace qdual {

void RationalMatrix::add_row(const std::vector<Rational>& row) {
  if (static_cast<int>(row.size()) != cols_) throw ConfigError("row length mismatch");
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
}

Echelon rref(RationalMatrix m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int k = 0; k < m.cols(); ++k) std::swap(m.at(p, k), m.at(r, k));
    Rational inv = Rational(1) / m.at(r, c);
    for (int k = c; k < m.cols(); ++k) m.at(r, k) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Rational f = m.at(i, c);
      for (int k = c; k < m.cols(); ++k) m.at(i, k) -= f * m.at(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

int rank(const RationalMatrix& m) { return static_cast<int>(rref(m).pivot_cols.size()); }

std::vector<int> free_columns(const RationalMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  std::vector<int> out;
  for (int c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) out.push_back(c);
  return out;
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[f] = Rational(1);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced.at(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearSolution solve(const RationalMatrix& a, const std::vector<ScalarSeries>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw ConfigError("right-hand side length mismatch");
  RationalMatrix m = a;
  std::vector<ScalarSeries> rhs = b;
  std::vector<int> origin(a.rows());
  for (int i = 0; i < a.rows(); ++i) origin[i] = i;
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) {
      for (int k = 0; k < m.cols(); ++k) std::swap(m.at(p, k), m.at(r, k));
      std::swap(rhs[p], rhs[r]);
      std::swap(origin[p], origin[r]);
    }
    Rational inv = Rational(1) / m.at(r, c);
    for (int k = c; k < m.cols(); ++k) m.at(r, k) *= inv;
    rhs[r] *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Rational f = m.at(i, c);
      for (int k = c; k < m.cols(); ++k) m.at(i, k) -= f * m.at(r, k);
      rhs[i] -= rhs[r] * f;
    }
    pivots.push_back(c);
    ++r;
  }
  LinearSolution s;
  s.x.assign(m.cols(), ScalarSeries());
  for (int i = r; i < m.rows(); ++i) {
    if (!rhs[i].is_zero()) {
      s.consistent = false;
      s.inconsistent_row = origin[i];
      s.residual = rhs[i];
      return s;
    }
  }
  for (std::size_t k = 0; k < pivots.size(); ++k) s.x[pivots[k]] = rhs[k];
  return s;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw ConfigError("inverse of a non-square matrix");
  const int n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = Rational(1);
  }
  Echelon e = rref(aug);
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(e.pivot_cols.size()) <= i || e.pivot_cols[i] != i) return std::nullopt;
  RationalMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = e.reduced.at(i, n + j);
  return inv;
}

}  // namespace qdual
