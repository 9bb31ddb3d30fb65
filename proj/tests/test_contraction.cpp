#include <random>

#include "doctest.h"
#include "families.hpp"
#include "qdual/contraction.hpp"
#include "qdual/errors.hpp"
#include "qdual/modelfile.hpp"
#include "qdual/registry.hpp"
#include "support.hpp"

using namespace qdual;
using namespace qdual::test;

namespace {

const Truncation kSmall{4, 4, 4};

ContractionMap make_map(const std::vector<std::string>& gens, const std::vector<int>& k,
                        const std::map<std::string, int>& params = {}) {
  ContractionMap phi;
  phi.name = "test";
  phi.generators = gens;
  phi.generator_exponents = k;
  phi.param_exponents = params;
  return phi;
}

// P0 -> P0, P1 -> eps P1, K -> eps K.
ContractionMap poincare_map() { return make_map({"P0", "P1", "K"}, {0, 1, 1}); }
// M -> eps^2 M, P0 -> P0, P1 -> eps P1, K -> eps K.
ContractionMap extended_map() { return make_map({"M", "P0", "P1", "K"}, {2, 0, 1, 1}); }

std::map<std::string, int> fundamental(const HopfPresentation& h, const ContractionMap& phi) {
  auto fc = fundamental_constants(h.classical_bracket(), first_order_cocommutator(h), phi);
  return parameter_exponents(fc, ContractionMode::Fundamental, phi);
}

bool mentions(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("Lie algebra contractions") {
  LieAlgebra gal = contract_lie_algebra(poincare(), poincare_map());
  CHECK(gal.c(2, 0, 1) == ScalarSeries(1));  // [K,P0]' = P1
  for (int l = 0; l < 3; ++l) CHECK(gal.c(2, 1, l).is_zero());
  CHECK(contract_lie_algebra(ext_poincare(), extended_map()) == ext_galilei());
  ContractionMap id = identity_contraction(ext_poincare().names(), {});
  CHECK(contract_lie_algebra(ext_poincare(), id) == ext_poincare());

  // Scaling P0 but not P1 blows up [K,P1] = P0.
  try {
    contract_lie_algebra(poincare(), make_map({"P0", "P1", "K"}, {1, 0, 0}));
    FAIL("expected a divergent limit");
  } catch (const DivergentLimit& e) {
    CHECK(mentions(e.what(), "[P1,K]"));
  }
  CHECK_THROWS_AS(contract_lie_algebra(poincare(), make_map({"P0", "P1"}, {0, 1})), ConfigError);
}

TEST_CASE("fundamental constants of the catalog bialgebras") {
  auto kt = load_model("kappa-poincare-1+1-timelike", kSmall);
  auto ks = load_model("kappa-poincare-1+1-spacelike", kSmall);
  auto ep = load_model("ext-poincare-1+1", kSmall);
  auto n0 = [](const Model& m, const ContractionMap& phi, const std::string& p) {
    return fundamental_constants(m.algebra->classical_bracket(), first_order_cocommutator(*m.algebra), phi).of(p);
  };
  CHECK(n0(*kt, kt->contraction("nonrel"), "w") == 0);
  CHECK(n0(*ks, ks->contraction("nonrel"), "w") == 1);
  CHECK(n0(*ep, ep->contraction("nonrel"), "alpha") == 1);
  // The catalog maps record the fundamental values.
  CHECK(kt->contraction("nonrel").param_exponents.at("w") == 0);
  CHECK(ep->contraction("nonrel").param_exponents.at("alpha") == 1);
}

TEST_CASE("fundamental constants of the six-parameter branch") {
  FundamentalConstants fc = fundamental_constants(ext_poincare(), branch_ii_family(), extended_map());
  CHECK(fc.of("a") == 1);
  CHECK(fc.of("b2") == 3);
  CHECK(fc.of("b5") == 2);
  CHECK(fc.of("b6") == 1);
  CHECK(fc.of("b7") == 2);
  CHECK(fc.of("b8") == 0);
  for (const char* gone : {"b1", "b3", "b4"}) CHECK_FALSE(fc.of(gone).has_value());
  CHECK(fc.max() == 3);
  CHECK(mentions(fc.str(), "b1: unconstrained"));

  Cocommutator zero(ext_poincare().names(), family_space());
  FundamentalConstants none = fundamental_constants(ext_poincare(), zero, extended_map());
  CHECK_FALSE(none.max().has_value());
}

TEST_CASE("fundamental contraction of the six-parameter branch") {
  auto n = parameter_exponents(fundamental_constants(ext_poincare(), branch_ii_family(), extended_map()),
                               ContractionMode::Fundamental, extended_map());
  ContractedBialgebra c = contract_bialgebra(ext_poincare(), branch_ii_family(), extended_map(), n);
  Cocommutator want({"M", "P0", "P1", "K"}, family_space());
  want.add_wedge(M, M, P1, v("a"));
  want.add_wedge(P0, M, P1, v("b2"));
  want.add_wedge(P1, M, P1, v("b5"));
  want.add_wedge(K, M, P0, v("b6"));
  want.add_wedge(K, M, P1, v("b7"));
  want.add_wedge(K, P0, P1, v("b8"));
  want.add_wedge(K, M, K, v("b5"));
  want.add_wedge(K, P1, K, -v("a"));
  CHECK(c.cocommutator == want);
  CHECK(c.algebra == ext_galilei());
  CHECK(c.jacobi.pass);
  CHECK(c.cocycle.pass);
}

TEST_CASE("below the fundamental constant diverges, above it annihilates") {
  auto fc = fundamental_constants(ext_poincare(), branch_ii_family(), extended_map());
  auto base = parameter_exponents(fc, ContractionMode::Fundamental, extended_map());
  for (const char* p : {"a", "b2", "b5", "b6", "b7", "b8"}) {
    CAPTURE(p);
    auto low = base, high = base;
    low[p] -= 1;
    high[p] += 1;
    CHECK_THROWS_AS(contract_bialgebra(ext_poincare(), branch_ii_family(), extended_map(), low), DivergentLimit);
    Cocommutator out = contract_bialgebra(ext_poincare(), branch_ii_family(), extended_map(), high).cocommutator;
    const int ip = family_space()->index(p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l)
          for (const auto& [key, c] : out.f(i, j, l).terms()) CHECK(key.exponent(ip) == 0);
    // The remaining parameters keep their terms.
    Cocommutator full = contract_bialgebra(ext_poincare(), branch_ii_family(), extended_map(), base).cocommutator;
    ScalarSeries zero(family_space(), Rational(0));
    CHECK(out == full.map_coefficients([&](const ScalarSeries& x) { return x.substitute(p, zero); }));
  }
}

TEST_CASE("kappa contraction keeps the cocommutator table") {
  auto kt = load_model("kappa-poincare-1+1-timelike", kSmall);
  const ContractionMap& phi = kt->contraction("nonrel");
  LieAlgebra g = kt->algebra->classical_bracket();
  Cocommutator d = first_order_cocommutator(*kt->algebra);
  ContractedBialgebra c = contract_bialgebra(g, d, phi, {{"w", 0}});
  CHECK(c.cocommutator == d);
  CHECK_FALSE(c.cocommutator.is_zero());
  CHECK(c.algebra.c(2, 1, 0).is_zero());  // [K,P1]' = 0
  CHECK(c.cocycle.pass);
  CHECK(c.cojacobi.pass);
  CHECK(contract_bialgebra(g, d, phi, {{"w", 1}}).cocommutator.is_zero());
  CHECK_THROWS_AS(contract_bialgebra(g, d, phi, {{"w", -1}}), DivergentLimit);
}

TEST_CASE("extended Poincare bialgebra contracts to the extended Galilei one") {
  auto ep = load_model("ext-poincare-1+1", kSmall);
  auto eg = load_model("ext-galilei-1+1", kSmall);
  const ContractionMap& phi = ep->contraction("nonrel");
  Cocommutator d = first_order_cocommutator(*ep->algebra);
  ContractedBialgebra c = contract_bialgebra(ep->algebra->classical_bracket(), d, phi, fundamental(*ep->algebra, phi));
  CHECK_FALSE(d.f(0, 1, 2).is_zero());  // P0^P1 in delta(M) before
  CHECK(c.cocommutator.f(0, 1, 2).is_zero());
  CHECK(c.cocommutator == first_order_cocommutator(*eg->algebra));
  CHECK(c.algebra == eg->algebra->classical_bracket());
}

TEST_CASE("dual contraction maps") {
  auto ep = load_model("ext-poincare-1+1", kSmall);
  const ContractionMap& phi = ep->contraction("nonrel");
  ContractionMap dual = dual_contraction_map(phi, ep->generator_names(), ep->coordinate_names());
  CHECK(dual.generators == std::vector<std::string>{"th", "a0", "a1", "chi"});
  CHECK(dual.generator_exponents == std::vector<int>{-2, 0, -1, -1});
  CHECK(dual.param_exponents == phi.param_exponents);
  CHECK(check_pairing_preserved(phi, dual, ep->generator_names(), ep->coordinate_names()).pass);

  ContractionMap k = dual_contraction_map(poincare_map(), {"P0", "P1", "K"}, {"a0", "a1", "chi"});
  CHECK(k.generator_exponents == std::vector<int>{0, -1, -1});

  ContractionMap id = identity_contraction({"P0", "P1", "K"}, {"w"});
  ContractionMap did = dual_contraction_map(id, {"P0", "P1", "K"}, {"a0", "a1", "chi"});
  CHECK(did.generator_exponents == std::vector<int>{0, 0, 0});

  // Using the generator map itself on the coordinates breaks the pairing.
  ContractionMap wrong = make_map({"a0", "a1", "chi"}, {0, 1, 1});
  CHECK_FALSE(check_pairing_preserved(poincare_map(), wrong, {"P0", "P1", "K"}, {"a0", "a1", "chi"}).pass);
}

TEST_CASE("extended Poincare quantum algebra and group contract to the Galilei ones") {
  auto ep = load_model("ext-poincare-1+1");
  auto eg = load_model("ext-galilei-1+1");
  const ContractionMap& phi = ep->contraction("nonrel");
  auto n = fundamental(*ep->algebra, phi);
  CHECK(n == std::map<std::string, int>{{"alpha", 1}});

  ContractedPresentation a = contract_quantum_presentation(*ep->algebra, phi, n);
  CHECK(a.report.pass());
  CHECK(compare_presentations(*a.presentation, *eg->algebra).pass);
  // The (exp(-alpha P1) - 1) (x) P0 part of Delta(M) is gone.
  const auto& h = *ep->algebra;
  Mono p1 = mono(h, {{"P1", 1}}), p0 = mono(h, {{"P0", 1}});
  CHECK_FALSE(h.generator_coproduct(0).coefficient({p1, p0}).is_zero());
  CHECK(a.presentation->generator_coproduct(0).coefficient({p1, p0}).is_zero());

  ContractionMap dual = dual_contraction_map(phi, ep->generator_names(), ep->coordinate_names());
  ContractedPresentation g = contract_quantum_presentation(*ep->group, dual, n);
  CHECK(g.report.pass());
  CHECK(compare_presentations(*g.presentation, *eg->group).pass);
  // [th, chi]' = -(1/2) alpha chi^2, stored as [chi, th].
  const auto& gg = *g.presentation;
  CHECK(gg.engine().correction(3, 0) == pbw(gg, "(1/2)*alpha*chi^2"));
}

TEST_CASE("quantum contraction below the fundamental constant diverges") {
  auto ep = load_model("ext-poincare-1+1", kSmall);
  const ContractionMap& phi = ep->contraction("nonrel");
  try {
    contract_quantum_presentation(*ep->algebra, phi, {{"alpha", 0}});
    FAIL("expected a divergent limit");
  } catch (const DivergentLimit& e) {
    CHECK((mentions(e.what(), "[") || mentions(e.what(), "Delta(")));
  }
}

TEST_CASE("identity contraction leaves presentations unchanged") {
  for (const auto& name : catalog()) {
    CAPTURE(name);
    auto m = load_model(name, kSmall);
    ContractionMap id = identity_contraction(m->generator_names(), m->params);
    std::map<std::string, int> zero;
    for (const auto& p : m->params) zero[p] = 0;
    CHECK(compare_presentations(*contract_quantum_presentation(*m->algebra, id, zero).presentation, *m->algebra).pass);
  }
}

TEST_CASE("T-matrix contraction") {
  auto ep = load_model("ext-poincare-1+1");
  auto eg = load_model("ext-galilei-1+1");
  const ContractionMap& phi = ep->contraction("nonrel");
  TMatrix t{{{"th", "M"}, {"a0", "P0"}, {"a1", "P1"}, {"chi", "K"}}, ep->algebra, ep->group};
  ContractedTMatrix c = contract_tmatrix(t, phi, fundamental(*ep->algebra, phi));
  CHECK(c.report.pass());
  CHECK(c.tmatrix.factors == t.factors);
  CHECK(compare_presentations(*c.tmatrix.algebra, *eg->algebra).pass);
  CHECK(compare_presentations(*c.tmatrix.group, *eg->group).pass);

  auto kt = load_model("kappa-poincare-1+1-timelike", kSmall);
  TMatrix tk{{{"a0", "P0"}, {"a1", "P1"}, {"chi", "K"}}, kt->algebra, kt->group};
  ContractedTMatrix ck = contract_tmatrix(tk, kt->contraction("nonrel"), {{"w", 0}});
  for (const auto& chk : ck.report.checks) {
    CAPTURE(chk.name);
    CHECK(chk.pass);
  }
  // kappa-Galilei: [K,P1] keeps only w P1^2.
  CHECK(ck.tmatrix.algebra->engine().correction(2, 1) == pbw(*ck.tmatrix.algebra, "w*P1^2"));

  ContractionMap id = identity_contraction(kt->generator_names(), {"w"});
  ContractedTMatrix same = contract_tmatrix(tk, id, {{"w", 0}});
  CHECK(compare_presentations(*same.tmatrix.algebra, *kt->algebra).pass);
  CHECK(compare_presentations(*same.tmatrix.group, *kt->group).pass);
}

TEST_CASE("homogeneous mode keeps only the largest constant") {
  auto fc = fundamental_constants(ext_poincare(), branch_ii_family(), extended_map());
  auto n = parameter_exponents(fc, ContractionMode::Homogeneous, extended_map());
  for (const auto& [p, e] : n) CHECK(e == 3);
  Cocommutator out = contract_bialgebra(ext_poincare(), branch_ii_family(), extended_map(), n).cocommutator;
  Cocommutator want({"M", "P0", "P1", "K"}, family_space());
  want.add_wedge(P0, M, P1, v("b2"));
  CHECK(out == want);

  auto ep = load_model("ext-poincare-1+1", kSmall);
  auto explicit_n = parameter_exponents(fc, ContractionMode::Explicit, ep->contraction("nonrel"));
  CHECK(explicit_n.at("a") == 0);
  CHECK(parse_contraction_mode("homogeneous") == ContractionMode::Homogeneous);
  CHECK_THROWS_AS(parse_contraction_mode("partial"), ConfigError);
}

TEST_CASE("commuting square on every catalog model") {
  for (const auto& name : catalog()) {
    CAPTURE(name);
    auto m = load_model(name, kSmall);
    ContractionMap phi = m->contractions.empty() ? identity_contraction(m->generator_names(), m->params)
                                                 : m->contractions.front();
    for (auto mode : {ContractionMode::Fundamental, ContractionMode::Homogeneous}) {
      auto fc = fundamental_constants(m->algebra->classical_bracket(), first_order_cocommutator(*m->algebra), phi);
      auto n = parameter_exponents(fc, mode, phi);
      CheckResult sq = check_commuting_square(*m->algebra, phi, n);
      CAPTURE(sq.residuals.empty() ? std::string() : sq.residuals.front());
      CHECK(sq.pass);
    }
  }
}

TEST_CASE("contraction filter singles out the extended Poincare bialgebra") {
  FilterResult f = contraction_filter(ext_poincare(), branch_ii_family(), family_params(), extended_map(),
                                      ext_galilei_target());
  CHECK(f.filtered.cocycle.pass);
  CHECK(f.filtered.cojacobi.pass);
  CHECK(f.filtered.family == ext_poincare_target());
  CHECK(f.surviving == std::vector<std::string>{"a"});
  const ParamSpace* s = ParamSpace::make({"u"}, family_space()->order());
  ScalarSeries u = ScalarSeries::param(s, "u");
  Cocommutator shown({"M", "P0", "P1", "K"}, s);
  shown.add_wedge(M, M, P1, u);
  shown.add_wedge(M, P0, P1, u);
  shown.add_wedge(K, P1, K, -u);
  CHECK(signed_permutation_match(f.reduced, shown).has_value());

  // Asking for a target with a boost term the family cannot produce leaves nothing.
  Cocommutator odd = ext_galilei_target();
  odd.add_wedge(P1, M, P0, v("a"));
  FilterResult none = contraction_filter(ext_poincare(), branch_ii_family(), family_params(), extended_map(), odd);
  CHECK(none.surviving.empty());
}

TEST_CASE("contracted model files reload and verify") {
  auto ep = load_model("ext-poincare-1+1", kSmall);
  ContractedModel c = contract_model(*ep, ep->contraction("nonrel"), ContractionMode::Fundamental, "contracted");
  CHECK(c.report.pass());
  CHECK(c.exponents.at("alpha") == 1);
  std::string text = write_model(c.model);
  Model back = model_from_text(text, kSmall);
  CHECK(verify_model(back).pass());
  auto eg = load_model("ext-galilei-1+1", kSmall);
  CHECK(compare_presentations(*back.algebra, *eg->algebra).pass);
  CHECK(compare_presentations(*back.group, *eg->group).pass);
  CHECK(write_model(back) == text);
}

TEST_CASE("random diagonal maps preserve Jacobi when they converge") {
  std::mt19937_64 rng(11);
  int converged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> k;
    for (int i = 0; i < 4; ++i) k.push_back(static_cast<int>(rng() % 4) - 1);
    ContractionMap phi = make_map({"M", "P0", "P1", "K"}, k);
    try {
      LieAlgebra g = contract_lie_algebra(ext_poincare(), phi);
      ++converged;
      CHECK(g.check_jacobi().pass);
      ContractionMap dual = dual_contraction_map(phi, g.names(), {"th", "a0", "a1", "chi"});
      CHECK(check_pairing_preserved(phi, dual, g.names(), {"th", "a0", "a1", "chi"}).pass);
    } catch (const DivergentLimit&) {
    }
  }
  CHECK(converged > 10);
}
