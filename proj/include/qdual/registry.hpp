#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qdual/linalg.hpp"
#include "qdual/model.hpp"

namespace qdual {

/// Stable catalog identifiers.
const std::vector<std::string>& catalog();
/// Model-file source of a catalog entry; throws UnknownModel.
const std::string& catalog_text(const std::string& name);

/// Hopf axioms of both sides, representation homomorphisms, and the
/// bialgebra conditions of the first-order cocommutator.
Report verify_model(const Model& m);

/// Catalog entry instantiated at the truncation, verified and cached.
/// Throws UnknownModel, or ConfigError when verification fails.
std::shared_ptr<const Model> load_model(const std::string& name, const Truncation& t = {});

/// Catalog name or model-file path.
std::shared_ptr<const Model> resolve_model(const std::string& name_or_path, const Truncation& t = {});

/// Linear generator substitution Y_i = sum_j a(i, j) X_j. Relations are
/// rebuilt order by order, coproducts and representations are rewritten, and
/// the dual coordinates change by the inverse transpose. Contraction maps are
/// dropped. Throws NonInvertible.
Model change_basis(const Model& m, const RationalMatrix& a, const std::string& new_name);

/// Relations, coproducts and counit agree term by term (same generator names).
CheckResult compare_presentations(const HopfPresentation& a, const HopfPresentation& b);

}  // namespace qdual
