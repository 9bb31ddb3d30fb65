#pragma once

#include <string>
#include <vector>

#include "qdual/model.hpp"

namespace qdual {

/// Square matrix with series entries.
using SeriesMatrix = std::vector<std::vector<ScalarSeries>>;

SeriesMatrix zero_matrix(int n);
SeriesMatrix identity_matrix(int n);
SeriesMatrix matrix_multiply(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix matrix_add(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix matrix_scaled(const SeriesMatrix& a, const ScalarSeries& c);

/// Image of a normal-ordered element under the representation.
SeriesMatrix represent(const Representation& r, const PBWForm& p);
/// rho([X_j, X_i]) = rho(X_j) rho(X_i) - rho(X_i) rho(X_j) for every pair.
CheckResult check_representation(const HopfPresentation& h, const Representation& r);

/// Matrix whose entries are normal-ordered elements of one presentation.
struct AlgebraMatrix {
  int dim = 0;
  std::vector<std::vector<PBWForm>> entries;

  const PBWForm& at(int i, int j) const { return entries[i][j]; }
  std::string str(const GeneratorSet& g) const;
};

AlgebraMatrix algebra_matrix_multiply(const HopfPresentation& h, const AlgebraMatrix& a, const AlgebraMatrix& b);

/// sum_n x^n / n! A^n for generator `g` of `entries`, truncated at its degree cutoff.
AlgebraMatrix formal_exp(const HopfPresentation& entries, int g, const SeriesMatrix& a);

/// Ordered product of formal exponentials of the T-matrix under a
/// representation: entries live on the side opposite to the represented one.
AlgebraMatrix realize_T(const Model& m, const Representation& r);

/// Coproducts of the entry generators solved from the product of two copies.
struct CoproductReadout {
  std::vector<TensorElement> coproducts;  // indexed by generator of the entry side
  /// Coefficients are reliable through this deformation order (division by
  /// a parameter monomial lowers it below the model order).
  int exact_order = 0;
  CheckResult consistency{"readout-consistency"};
};

/// Throws PatternMismatch when a generator cannot be isolated from the
/// entries or when the solved coproducts do not reproduce every entry.
CoproductReadout coproduct_readout(const HopfPresentation& entries, const AlgebraMatrix& t);

}  // namespace qdual
