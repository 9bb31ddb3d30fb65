#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdual/hopf.hpp"
#include "qdual/report.hpp"

namespace qdual {

/// Every PBW monomial in n generators of total degree <= d, graded then
/// ordered by exponent vector.
std::vector<Mono> monomials_up_to(int n, int d);
/// prod_i mu_i!
Rational mono_factorial(Mono m);

/// Delta(X^rho) = sum F^rho_{mu nu} X^mu (x) X^nu for |rho| <= degree, by direct
/// expansion. Legs keep degree <= degree and summed degree <= D_work.
struct FTensor {
  int size = 0;
  int degree = 0;
  std::map<Mono, TensorElement> entries;  // rho -> sum F^rho_{mu nu} mu (x) nu

  ScalarSeries at(Mono rho, Mono mu, Mono nu) const;
  /// Swaps the two lower indices.
  FTensor transposed() const;
};
FTensor compute_F(const HopfPresentation& h, int degree);
inline FTensor compute_F(const HopfPresentation& h) { return compute_F(h, h.degree()); }

/// Linear part of products: X^mu X^nu = sum_l E^{mu nu}_l X_l + (nonlinear).
/// Pairs with |mu|, |nu| <= degree and |mu| + |nu| <= D_work.
struct ETensor {
  int size = 0;
  int degree = 0;
  std::vector<TensorElement> linear;  // l -> sum E^{mu nu}_l mu (x) nu

  ScalarSeries at(int l, Mono mu, Mono nu) const;
};
ETensor compute_E(const HopfPresentation& h, int degree);
inline ETensor compute_E(const HopfPresentation& h) { return compute_E(h, h.degree()); }

/// Left-multiplication recurrences F^rho = (Delta X_L) * F^{rho - e_L} for every
/// generator L whose coproduct legs act on PBW monomials by exponent shifts.
/// One check per covered generator; the others have no such recurrence.
Report verify_recurrences(const HopfPresentation& h, const FTensor& f);

/// Ladder x_alpha x_l = (alpha_l + 1) x_{alpha + e_l} for alpha supported on
/// indices <= l. Passing certifies x_rho = prod_i x_i^{rho_i} / rho_i! in PBW
/// order, hence the ordered product of exponentials as T-matrix.
CheckResult verify_dual_monomial_basis(const HopfPresentation& h, const FTensor& f);

/// Commutation table keyed (j, i) with j > i: [x_j, x_i] = value.
using RelationTable = std::map<std::pair<int, int>, PBWForm>;

/// [x_j, x_i] = sum_rho (F^rho_{e_j e_i} - F^rho_{e_i e_j}) x_rho with
/// x_rho = x^rho / rho!, truncated at the F degree.
RelationTable dual_commutators(const FTensor& f);
/// Delta(x_l) = sum E^{mu nu}_l x_mu (x) x_nu over coordinate PBW monomials.
std::vector<TensorElement> dual_coproducts(const ETensor& e);

/// Exponential form of the universal T-matrix: ordered factors exp(x_i (x) X_i).
struct TMatrix {
  std::vector<std::pair<std::string, std::string>> factors;  // (coordinate, generator)
  std::shared_ptr<const HopfPresentation> algebra;
  std::shared_ptr<const HopfPresentation> group;
};

/// <x_mu, X^nu> = delta with x_mu = x^mu / mu!: the coordinate monomial x^mu
/// pairs to mu!. Throws ConfigError when a term exceeds `degree`.
ScalarSeries pairing(const PBWForm& x, const PBWForm& X, int degree);

/// <x_mu x_nu, X^rho> = F^rho_{mu nu} with the products taken in `group`, for
/// |mu| + |nu| <= max_total.
CheckResult check_product_duality(const HopfPresentation& group, const FTensor& f, int max_total);
/// <Delta(x_rho), X^mu (x) X^nu> = E^{mu nu}_rho on coordinates rho.
CheckResult check_coproduct_duality(const HopfPresentation& group, const ETensor& e);

/// Group presentation assembled from the dual tables.
HopfPresentation dual_presentation(const std::string& name, GeneratorSetPtr coordinates, const ParamSpace* space,
                                   const RelationTable& relations, const std::vector<TensorElement>& coproducts);

/// Named closed form c * f(x) of a univariate coordinate series, with f one
/// of sinh, cosh - 1, exp - 1 and c a series prefactor, checked through
/// `degree`; nullopt if no match.
std::optional<std::string> recognize_series(const PBWForm& p, const GeneratorSet& g, int degree);

/// First-order (in the deformation parameters) part of the dual relations,
/// restricted to a coordinate subset. `closes` fails when a bracket of the
/// subset leaves the subalgebra generated by it.
struct PoissonTable {
  std::vector<int> subset;
  RelationTable brackets;  // (j, i), j > i, both in subset
  CheckResult closes{"poisson-closure"};
  std::string str(const GeneratorSet& g) const;
};
PoissonTable semiclassical_poisson(const RelationTable& relations, int size, const std::vector<int>& subset = {});

}  // namespace qdual
