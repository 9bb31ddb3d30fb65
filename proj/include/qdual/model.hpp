#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdual/hopf.hpp"

namespace qdual {

/// Cutoffs shared by every structure of a model.
struct Truncation {
  int order = 6;    // N, deformation order
  int degree = 6;   // D, generator degree
  int cushion = 6;  // D_work - D
  int working() const { return degree + cushion; }
};

/// Square matrices with scalar entries, one per generator of one side.
struct Representation {
  std::string name;
  /// True when the matrices represent the coordinates of the group side.
  bool on_group = false;
  int dim = 0;
  std::vector<std::vector<std::vector<ScalarSeries>>> matrices;  // [generator][row][col]
};

/// Diagonal contraction phi(X_i) = eps^{k_i} X_i with parameters scaled
/// z -> eps^{n} z.
struct ContractionMap {
  std::string name;
  std::vector<std::string> generators;
  std::vector<int> generator_exponents;
  std::map<std::string, int> param_exponents;

  int exponent_of(const std::string& generator) const;
};

/// A named pair of dual Hopf presentations with their classical data.
struct Model {
  std::string name;
  Truncation truncation;
  std::vector<std::string> params;
  std::vector<std::string> notes;
  std::shared_ptr<const HopfPresentation> algebra;
  std::shared_ptr<const HopfPresentation> group;  // optional, generators named by coordinates
  std::vector<Representation> representations;
  std::vector<ContractionMap> contractions;

  const ParamSpace* space() const { return algebra->space(); }
  const std::vector<std::string>& generator_names() const { return algebra->generators().names(); }
  std::vector<std::string> coordinate_names() const;
  const Representation& representation(const std::string& name) const;
  const ContractionMap& contraction(const std::string& name) const;
};

}  // namespace qdual
