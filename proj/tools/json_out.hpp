#pragma once

#include <string>

#include "json.hpp"
#include "qdual/contraction.hpp"
#include "qdual/duality.hpp"
#include "qdual/liebialg.hpp"
#include "qdual/repmat.hpp"

// Lossless JSON encodings for report output. Rationals are {num, den}
// strings; every compound value also carries its printed form under "text".
namespace qdual::json_out {

using nlohmann::json;

json rational(const Rational& r);
json series(const ScalarSeries& s);
json pbw(const PBWForm& p, const GeneratorSet& g);
json tensor(const TensorElement& t, const GeneratorSet& g);
json check(const CheckResult& c);
json report(const Report& r);

/// [x_j, x_i] = value for every stored pair, in (j, i) order.
json relations(const HopfPresentation& h);
json relation_table(const RelationTable& t, const GeneratorSet& g);
json coproducts(const HopfPresentation& h);
json coproduct_list(const std::vector<TensorElement>& c, const GeneratorSet& g);
json lie_algebra(const LieAlgebra& g);
json cocommutator(const Cocommutator& d);
json constants(const FundamentalConstants& fc);
json algebra_matrix(const AlgebraMatrix& m, const GeneratorSet& g);

}  // namespace qdual::json_out
