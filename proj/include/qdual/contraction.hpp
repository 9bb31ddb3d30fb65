#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdual/duality.hpp"
#include "qdual/liebialg.hpp"
#include "qdual/model.hpp"

namespace qdual {

/// Exponents k_i of a diagonal map in the order of `names`; every name must
/// be covered by the map. Throws ConfigError otherwise.
std::vector<int> generator_exponents(const ContractionMap& phi, const std::vector<std::string>& names);

/// [X_i, X_j]' = lim eps^{k_i + k_j - k_l} c(i, j, l) X_l. Throws DivergentLimit
/// naming the offending bracket.
LieAlgebra contract_lie_algebra(const LieAlgebra& g, const ContractionMap& phi);

/// Minimal parameter exponents of a cocommutator under a map, one per
/// parameter of its space with the others set to zero. nullopt marks a
/// parameter that does not occur (unconstrained).
struct FundamentalConstants {
  std::vector<std::string> params;
  std::vector<std::optional<int>> n0;

  std::optional<int> of(const std::string& param) const;
  /// Largest constrained value; nullopt when every parameter is unconstrained.
  std::optional<int> max() const;
  std::string str() const;
};
FundamentalConstants fundamental_constants(const LieAlgebra& g, const Cocommutator& d, const ContractionMap& phi);

enum class ContractionMode { Fundamental, Homogeneous, Explicit };
std::string to_string(ContractionMode m);
/// Throws ConfigError on an unknown mode name.
ContractionMode parse_contraction_mode(const std::string& s);

/// Parameter exponents for a mode: n0 per parameter, the common maximum, or
/// the map's own table. Unconstrained parameters get 0 (or the map's entry).
std::map<std::string, int> parameter_exponents(const FundamentalConstants& fc, ContractionMode mode,
                                               const ContractionMap& phi);

/// Coefficient of a structure carrying eps^{shift}, with every parameter z
/// replaced by eps^{n_z} z, in the limit eps -> 0.
ScalarSeries contract_coefficient(const ScalarSeries& c, int shift, const std::map<std::string, int>& n);

struct ContractedBialgebra {
  LieAlgebra algebra;
  Cocommutator cocommutator;
  CheckResult jacobi{"contracted jacobi"};
  CheckResult cocycle{"contracted cocycle"};
  CheckResult cojacobi{"contracted co-jacobi"};
};
/// delta'(X_i) = lim sum eps^{k_i - k_j - k_l} f(i, j, l) X_j (x) X_l with the
/// parameters rescaled. Throws DivergentLimit when some n_z < n0(z).
ContractedBialgebra contract_bialgebra(const LieAlgebra& g, const Cocommutator& d, const ContractionMap& phi,
                                       const std::map<std::string, int>& n);

/// Coordinates scale by the negated exponents of their paired generators;
/// parameter exponents are kept.
ContractionMap dual_contraction_map(const ContractionMap& phi, const std::vector<std::string>& generators,
                                    const std::vector<std::string>& coordinates);

/// <phi*(x_i), phi(X_j)> = delta_ij on the unit indices.
CheckResult check_pairing_preserved(const ContractionMap& phi, const ContractionMap& dual,
                                    const std::vector<std::string>& generators,
                                    const std::vector<std::string>& coordinates);

struct ContractedPresentation {
  std::shared_ptr<const HopfPresentation> presentation;
  Report report;  // Hopf axioms of the result
};
/// Relations [X_j, X_i]' = lim eps^{k_j + k_i} phi^{-1}(correction), coproducts
/// lim eps^{k_X} (phi^{-1} (x) phi^{-1}) Delta(X), termwise. Throws
/// DivergentLimit naming the relation or coproduct.
ContractedPresentation contract_quantum_presentation(const HopfPresentation& h, const ContractionMap& phi,
                                                     const std::map<std::string, int>& n,
                                                     const std::string& name = "");

struct ContractedTMatrix {
  TMatrix tmatrix;
  Report report;
};
/// Both paired sides contracted (the group with the dual map). The factor
/// list is unchanged; the report re-derives the dual tables of the
/// contracted algebra and compares them with the contracted group.
ContractedTMatrix contract_tmatrix(const TMatrix& t, const ContractionMap& phi, const std::map<std::string, int>& n);

/// Whole model under a named map and mode; representations and maps are dropped.
struct ContractedModel {
  Model model;
  FundamentalConstants constants;
  std::map<std::string, int> exponents;
  Report report;
};
ContractedModel contract_model(const Model& m, const ContractionMap& phi, ContractionMode mode,
                               const std::string& new_name = "");

/// first_order_cocommutator(contract(h)) == contract_bialgebra(first_order_cocommutator(h)).
CheckResult check_commuting_square(const HopfPresentation& h, const ContractionMap& phi,
                                   const std::map<std::string, int>& n);

/// Restricts a family linear in its parameters to the members whose
/// fundamental contraction equals `target` (same space). The conditions are
/// solved linearly; each must relate parameters of equal fundamental
/// constant, so that it holds before and after the rescaling.
struct FilterResult {
  Cocommutator contracted;  // family after contraction
  std::vector<std::pair<std::string, ScalarSeries>> assignments;
  BranchResult filtered;  // family with the assignments
  Cocommutator reduced;   // the same over the surviving parameters only
  std::vector<std::string> surviving;
};
FilterResult contraction_filter(const LieAlgebra& g, const Cocommutator& family, const std::vector<std::string>& params,
                                const ContractionMap& phi, const Cocommutator& target);

/// Map with zero exponents on the given generators and parameters.
ContractionMap identity_contraction(const std::vector<std::string>& generators, const std::vector<std::string>& params);

}  // namespace qdual
