#pragma once

#include <optional>
#include <vector>

#include "qdual/scalar.hpp"

namespace qdual {

/// Dense exact matrix, row-major.
class RationalMatrix {
 public:
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int r, int c) { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Rational& at(int r, int c) const { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
  void add_row(const std::vector<Rational>& row);

 private:
  int rows_;
  int cols_;
  std::vector<Rational> a_;
};

struct Echelon {
  RationalMatrix reduced;
  std::vector<int> pivot_cols;  // one per nonzero row
};

Echelon rref(RationalMatrix m);
int rank(const RationalMatrix& m);
/// Basis of {x : A x = 0}; one vector per free column, with a 1 in that column.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);
/// Free columns of the echelon form, aligned with `nullspace` output.
std::vector<int> free_columns(const RationalMatrix& m);

struct LinearSolution {
  bool consistent = true;
  std::vector<ScalarSeries> x;   // particular solution, free unknowns set to 0
  int inconsistent_row = -1;     // original equation index witnessing inconsistency
  ScalarSeries residual;         // the nonzero right-hand side left on that row
};

/// Solves A x = b over the rationals with series-valued right-hand sides.
LinearSolution solve(const RationalMatrix& a, const std::vector<ScalarSeries>& b);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

}  // namespace qdual
