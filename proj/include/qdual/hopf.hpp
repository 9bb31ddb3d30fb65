#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qdual/freealg.hpp"
#include "qdual/liebialg.hpp"
#include "qdual/report.hpp"
#include "qdual/tensor.hpp"

namespace qdual {

/// Algebra presentations deform U(g); group presentations deform functions on G
/// and are commutative at order zero.
enum class PresentationKind { Algebra, Group };

/// One summand of a coproduct as a pair of free-algebra legs.
using SimpleTensor = std::pair<NCPoly, NCPoly>;

/// Hopf algebra given by generators, triangular relations, generator
/// coproducts and counit, truncated at generator degree D and order N.
class HopfPresentation {
 public:
  HopfPresentation(std::string name, PresentationKind kind, std::shared_ptr<const RewriteSystem> rules,
                   std::vector<TensorElement> coproducts, std::vector<ScalarSeries> counit = {});

  /// Builds from free-algebra data; legs are normal ordered by the new rules.
  static HopfPresentation build(std::string name, PresentationKind kind, GeneratorSetPtr gens,
                                const ParamSpace* space, const std::map<std::pair<int, int>, NCPoly>& relations,
                                const std::vector<std::vector<SimpleTensor>>& coproducts,
                                std::vector<ScalarSeries> counit = {});

  const std::string& name() const { return name_; }
  PresentationKind kind() const { return kind_; }
  const GeneratorSet& generators() const { return *rules_->generators(); }
  GeneratorSetPtr generators_ptr() const { return rules_->generators(); }
  const ParamSpace* space() const { return rules_->space(); }
  const std::shared_ptr<const RewriteSystem>& rules() const { return rules_; }
  PbwAlgebra& engine() const { return *engine_; }
  int size() const { return generators().size(); }
  int degree() const { return generators().degree_cutoff(); }
  int working() const { return generators().working_cutoff(); }
  int order() const { return space() ? space()->order() : 0; }

  const TensorElement& generator_coproduct(int i) const { return coproducts_[i]; }
  const std::vector<ScalarSeries>& counit_values() const { return counit_; }

  /// Delta(X^mu) by Delta(X^{mu - e_L}) Delta(X_L); memoized.
  const TensorElement& coproduct(Mono m) const;
  TensorElement coproduct(const PBWForm& p) const;
  /// Direct product of generator coproducts, no memo; reference route.
  TensorElement coproduct_direct(Mono m) const;

  ScalarSeries counit(Mono m) const;
  ScalarSeries counit(const PBWForm& p) const;

  Tensor3 coproduct_left(const TensorElement& t) const;   // (Delta (x) id)
  Tensor3 coproduct_right(const TensorElement& t) const;  // (id (x) Delta)
  /// Multiplication of legs: m(x (x) y) = xy.
  PBWForm multiply_legs(const TensorElement& t) const;

  /// Terms with every leg of degree <= D and summed degree <= D_work. Legs
  /// are stored to D_work only, so higher summed degrees are truncation noise.
  TensorElement retained(const TensorElement& t) const;

  CheckResult check_homomorphism() const;
  CheckResult check_coassociativity(int max_monomial_degree = 1) const;
  CheckResult check_counit() const;
  /// Order-zero coproducts are primitive (algebra presentations only).
  CheckResult check_primitive_order0() const;
  Report verify() const;

  /// Classical bracket: order-zero linear part of the relations.
  LieAlgebra classical_bracket() const;

 private:
  std::string name_;
  PresentationKind kind_;
  std::shared_ptr<const RewriteSystem> rules_;
  std::shared_ptr<PbwAlgebra> engine_;
  std::vector<TensorElement> coproducts_;
  std::vector<ScalarSeries> counit_;
  mutable std::shared_ptr<std::unordered_map<Mono, TensorElement, MonoHash>> cache_;
};

/// Antipode on generators solved order by order from m(S (x) id)Delta = eps.
struct Antipode {
  std::vector<PBWForm> on_generators;
  CheckResult left_identity;
  CheckResult right_identity;
};
/// Throws NotPointed unless every Delta(X) = X (x) g + 1 (x) X + O(params)
/// with g = 1 + O(params).
Antipode derive_antipode(const HopfPresentation& h);
/// Antipode extended anti-multiplicatively to a normal-ordered element.
PBWForm apply_antipode(const HopfPresentation& h, const std::vector<PBWForm>& s, const PBWForm& x);

/// delta = (Delta_1 - tau Delta_1) / 2 restricted to g (x) g.
Cocommutator first_order_cocommutator(const HopfPresentation& h);

}  // namespace qdual
