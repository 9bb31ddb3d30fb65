#include "doctest.h"
#include "qdual/duality.hpp"
#include "qdual/errors.hpp"
#include "qdual/registry.hpp"
#include "qdual/repmat.hpp"
#include "support.hpp"

using namespace qdual;
using namespace qdual::test;

namespace {

void check_entries(const HopfPresentation& side, const AlgebraMatrix& t, const std::vector<std::vector<std::string>>& want) {
  REQUIRE(t.dim == static_cast<int>(want.size()));
  for (int i = 0; i < t.dim; ++i)
    for (int j = 0; j < t.dim; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(t.at(i, j).truncated(side.degree()) == pbw(side, want[i][j]));
    }
}

}  // namespace

TEST_CASE("matrix helpers") {
  SeriesMatrix a = identity_matrix(2);
  a[0][1] = ScalarSeries(3);
  SeriesMatrix b = matrix_multiply(a, a);
  CHECK(b[0][1] == ScalarSeries(6));
  CHECK(matrix_add(a, matrix_scaled(a, ScalarSeries(-1))) == zero_matrix(2));
}

TEST_CASE("catalog representations are homomorphisms") {
  for (const auto& name : catalog()) {
    CAPTURE(name);
    auto m = load_model(name);
    for (const auto& r : m->representations) {
      const HopfPresentation& side = r.on_group ? *m->group : *m->algebra;
      CHECK(check_representation(side, r).pass);
    }
  }
}

TEST_CASE("a wrong boost matrix is caught") {
  std::string text = replace_line(catalog_text("kappa-poincare-1+1-timelike"), "K = [[",
                                  "K = [[0, 0, 0], [0, 0, 1], [0, -1, 0]]");
  Model m = model_from_text(text, {4, 4, 4});
  CHECK_FALSE(check_representation(*m.algebra, m.representation("rho")).pass);
}

TEST_CASE("kappa-Poincare T-matrix under rho") {
  auto m = load_model("kappa-poincare-1+1-timelike");
  AlgebraMatrix t = realize_T(*m, m->representation("rho"));
  check_entries(*m->group, t,
                {{"1", "0", "0"}, {"a0", "cosh(chi)", "sinh(chi)"}, {"a1", "sinh(chi)", "cosh(chi)"}});
}

TEST_CASE("kappa-Poincare T-matrix under sigma") {
  auto m = load_model("kappa-poincare-1+1-timelike");
  AlgebraMatrix t = realize_T(*m, m->representation("sigma"));
  check_entries(*m->algebra, t,
                {{"1", "P1", "K"}, {"0", "exp(2*w*P0)", "0"}, {"0", "0", "exp(2*w*P0)"}});
}

TEST_CASE("extended Poincare T-matrix under rho") {
  auto m = load_model("ext-poincare-1+1");
  AlgebraMatrix t = realize_T(*m, m->representation("rho"));
  check_entries(*m->group, t,
                {{"exp(-chi)", "0", "0", "-(1/2)*(a0 - a1)"},
                 {"0", "exp(chi)", "0", "-(1/2)*(a0 + a1)"},
                 {"0", "0", "1", "-(th - a0)"},
                 {"0", "0", "0", "1"}});
}

TEST_CASE("rho readout gives the quantum group coproducts") {
  for (const char* name : {"kappa-poincare-1+1-timelike", "kappa-poincare-1+1-spacelike", "ext-poincare-1+1",
                           "ext-poincare-1+1-nw"}) {
    CAPTURE(name);
    auto m = load_model(name);
    const auto& g = *m->group;
    CoproductReadout r = coproduct_readout(g, realize_T(*m, m->representation("rho")));
    CHECK(r.consistency.pass);
    CHECK(r.exact_order == g.order());
    for (int l = 0; l < g.size(); ++l) {
      CAPTURE(g.generators().names()[l]);
      CHECK(r.coproducts[l].total_truncated(g.degree()) ==
            g.generator_coproduct(l).total_truncated(g.degree()));
    }
  }
}

TEST_CASE("sigma readout gives the quantum algebra coproducts") {
  // Isolating P0 from exp(2 w P0) divides by w, so the realization runs one
  // order higher and is compared through the model order.
  auto base = load_model("kappa-poincare-1+1-timelike");
  Truncation t = base->truncation;
  t.order += 1;
  auto m = load_model("kappa-poincare-1+1-timelike", t);
  const auto& h = *m->algebra;
  CoproductReadout r = coproduct_readout(h, realize_T(*m, m->representation("sigma")));
  CHECK(r.consistency.pass);
  CHECK(r.exact_order >= base->truncation.order);
  const auto& hb = *base->algebra;
  for (int l = 0; l < h.size(); ++l) {
    CAPTURE(h.generators().names()[l]);
    auto lower = [&](const TensorElement& x) {
      return x.total_truncated(hb.degree()).map_coefficients(
          [&](const ScalarSeries& c) { return c.rebased(hb.space()); });
    };
    CHECK(lower(r.coproducts[l]) == lower(hb.generator_coproduct(l)));
  }
}

TEST_CASE("readout and structure-tensor coproducts agree") {
  for (const char* name : {"kappa-poincare-1+1-timelike", "ext-poincare-1+1"}) {
    CAPTURE(name);
    auto m = load_model(name);
    const auto& g = *m->group;
    CoproductReadout r = coproduct_readout(g, realize_T(*m, m->representation("rho")));
    auto e_route = dual_coproducts(compute_E(*m->algebra));
    for (int l = 0; l < g.size(); ++l) CHECK(r.coproducts[l].total_truncated(g.degree()) == e_route[l].total_truncated(g.degree()));
  }
}

TEST_CASE("readout refuses a matrix without isolable entries") {
  auto m = load_model("kappa-poincare-1+1-timelike");
  AlgebraMatrix t = realize_T(*m, m->representation("rho"));
  // Drop the a1 entry; a1 then appears nowhere linearly.
  t.entries[2][0] = PBWForm();
  CHECK_THROWS_AS(coproduct_readout(*m->group, t), PatternMismatch);
}
