#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "qdual/errors.hpp"
#include "qdual/liebialg.hpp"
#include "qdual/modelfile.hpp"
#include "qdual/registry.hpp"
#include "support.hpp"

using namespace qdual;
using namespace qdual::test;

namespace {

const Truncation kSmall{4, 4, 4};

RationalMatrix identity(int n) {
  RationalMatrix a(n, n);
  for (int i = 0; i < n; ++i) a.at(i, i) = Rational(1);
  return a;
}

// P0 -> M + P0 on generators M P0 P1 K.
RationalMatrix split_central() {
  RationalMatrix a = identity(4);
  a.at(1, 0) = Rational(1);
  return a;
}

void require_same(const Model& a, const Model& b) {
  CheckResult alg = compare_presentations(*a.algebra, *b.algebra);
  INFO(alg.name);
  for (const auto& r : alg.residuals) INFO(r);
  CHECK(alg.pass);
  REQUIRE(static_cast<bool>(a.group) == static_cast<bool>(b.group));
  if (a.group) {
    CheckResult grp = compare_presentations(*a.group, *b.group);
    for (const auto& r : grp.residuals) INFO(r);
    CHECK(grp.pass);
  }
}

std::string parse_error_of(const std::string& text, int& line, int& column) {
  try {
    parse_model_text(text);
  } catch (const ParseError& e) {
    line = e.line();
    column = e.column();
    return e.message();
  }
  return {};
}

}  // namespace

TEST_CASE("catalog lists the stable identifiers") {
  const auto& c = catalog();
  REQUIRE(c.size() == 5);
  CHECK(c[0] == "kappa-poincare-1+1-timelike");
  CHECK(c[1] == "kappa-poincare-1+1-spacelike");
  CHECK(c[2] == "ext-galilei-1+1");
  CHECK(c[3] == "ext-poincare-1+1");
  CHECK(c[4] == "ext-poincare-1+1-nw");
}

TEST_CASE("every catalog entry verifies at load") {
  for (const auto& name : catalog()) {
    CAPTURE(name);
    auto m = load_model(name, kSmall);
    CHECK(m->name == name);
    CHECK(verify_model(*m).pass());
    CHECK(load_model(name, kSmall) == m);  // cached
  }
}

TEST_CASE("unknown names are rejected") {
  CHECK_THROWS_AS(load_model("kappa-poincare-3+1"), UnknownModel);
  CHECK_THROWS_AS(catalog_text("lightlike"), UnknownModel);
  CHECK_THROWS_AS(resolve_model("/nonexistent/model.qd"), UnknownModel);
}

TEST_CASE("loaded structures match the presented data") {
  auto m = load_model("ext-galilei-1+1", kSmall);
  const auto& h = *m->algebra;
  CHECK(h.engine().correction(3, 2).truncated(h.degree()) == pbw(h, "M*exp(alpha*P1)"));
  CHECK(h.generator_coproduct(0) == tensor(h, "M (x) 1 + exp(-alpha*P1) (x) M"));
  REQUIRE(m->group);
  const auto& g = *m->group;
  CHECK(g.engine().correction(3, 0).truncated(g.degree()) == pbw(g, "(1/2)*alpha*chi^2"));
  CHECK(m->contractions.empty());
  auto k = load_model("kappa-poincare-1+1-timelike", kSmall);
  const ContractionMap& c = k->contraction("nonrel");
  CHECK(c.exponent_of("K") == 1);
  CHECK(c.exponent_of("P0") == 0);
  CHECK(c.param_exponents.at("w") == 0);
}

TEST_CASE("splitting the central generator gives the direct-sum basis") {
  Model ep = model_from_text(catalog_text("ext-poincare-1+1"), kSmall);
  Model nw = model_from_text(catalog_text("ext-poincare-1+1-nw"), kSmall);
  Model changed = change_basis(ep, split_central(), "ext-poincare-1+1-nw");
  require_same(changed, nw);
  CHECK(verify_model(changed).pass());
  CHECK(changed.contractions.empty());
  REQUIRE(changed.representations.size() == nw.representations.size());
  for (std::size_t i = 0; i < nw.representations.size(); ++i)
    CHECK(changed.representations[i].matrices == nw.representations[i].matrices);
}

TEST_CASE("direct-sum basis: boost against the new P0") {
  Model nw = model_from_text(catalog_text("ext-poincare-1+1-nw"), kSmall);
  const auto& h = *nw.algebra;
  CHECK(h.engine().correction(3, 1).truncated(h.degree()) == pbw(h, "sinh(alpha*P1)/alpha - (alpha/2)*P0^2*exp(alpha*P1)"));
}

TEST_CASE("direct-sum basis: dual side") {
  Model nw = model_from_text(catalog_text("ext-poincare-1+1-nw"), kSmall);
  const auto& g = *nw.group;
  CHECK(g.engine().correction(2, 1) == pbw(g, "-alpha*(th + a0)"));
  CHECK(g.engine().correction(1, 0).is_zero());
  CHECK(g.engine().correction(2, 0).is_zero());
  CHECK(g.engine().correction(3, 0).is_zero());
  CHECK(g.generator_coproduct(0) == tensor(g, "th (x) 1 + 1 (x) th"));
}

TEST_CASE("direct-sum dual without th is the spacelike kappa-Poincare group at w = alpha/2") {
  Model nw = model_from_text(catalog_text("ext-poincare-1+1-nw"), kSmall);
  Model sp = model_from_text(catalog_text("kappa-poincare-1+1-spacelike"), kSmall);
  const auto& g = *nw.group;
  const auto& s = *sp.group;
  std::vector<ScalarSeries> w_to{ScalarSeries::param(g.space(), "alpha") * Rational(1, 2)};
  // Monomials of the spacelike group (a1 a0 chi) renamed into th a0 a1 chi.
  auto rename = [&](const PBWForm& p) {
    PBWAccumulator acc;
    for (const auto& [m, c] : p.terms()) {
      std::vector<int> e(4, 0);
      for (int i = 0; i < s.size(); ++i) e[g.generators().require(s.generators().names()[i])] = m.get(i);
      acc.add(Mono::from_exponents(e), compose(c, w_to, g.space()));
    }
    return acc.finish();
  };
  auto drop_th = [](const PBWForm& p) {
    PBWAccumulator acc;
    for (const auto& [m, c] : p.terms())
      if (m.get(0) == 0) acc.add(m, c);
    return acc.finish();
  };
  for (const char* jn : {"a0", "a1", "chi"})
    for (const char* in : {"a0", "a1", "chi"}) {
      int j = g.generators().require(jn), i = g.generators().require(in);
      if (j <= i) continue;
      CAPTURE(jn);
      CAPTURE(in);
      int sj = s.generators().require(jn), si = s.generators().require(in);
      PBWForm theirs = sj > si ? s.engine().correction(sj, si) : -s.engine().correction(si, sj);
      CHECK(drop_th(g.engine().correction(j, i)) == rename(theirs));
    }
}

TEST_CASE("identity basis change and inverse round trip") {
  for (const auto& name : catalog()) {
    CAPTURE(name);
    Model m = model_from_text(catalog_text(name), kSmall);
    const int n = m.algebra->size();
    require_same(change_basis(m, identity(n), name), m);
  }
  Model ep = model_from_text(catalog_text("ext-poincare-1+1"), kSmall);
  RationalMatrix back = identity(4);
  back.at(1, 0) = Rational(-1);
  Model there = change_basis(ep, split_central(), "there");
  require_same(change_basis(there, back, ep.name), ep);
}

TEST_CASE("a rotation of the translations round-trips on the kappa model") {
  Model k = model_from_text(catalog_text("kappa-poincare-1+1-timelike"), {3, 4, 4});
  RationalMatrix a = identity(3);
  a.at(0, 1) = Rational(2);
  a.at(1, 0) = Rational(1, 3);
  auto inv = inverse(a);
  REQUIRE(inv);
  Model there = change_basis(k, a, "mixed");
  CHECK(verify_model(there).pass());
  require_same(change_basis(there, *inv, k.name), k);
}

TEST_CASE("singular basis change is refused") {
  Model ep = model_from_text(catalog_text("ext-poincare-1+1"), kSmall);
  RationalMatrix a = identity(4);
  a.at(1, 1) = Rational(0);
  CHECK_THROWS_AS(change_basis(ep, a, "bad"), NonInvertible);
}

TEST_CASE("model file parse errors carry positions") {
  int line = 0, column = 0;
  std::string msg = parse_error_of("model m\nkind algebra\ngenerators X Y\n\n[relations]\n[Y, X] = X +\n", line, column);
  CHECK_FALSE(msg.empty());
  CHECK(line == 6);
  CHECK(column == 13);

  msg = parse_error_of("model m\ngenerators X Y\n[relations]\n[Y, X] = 2 * (X\n", line, column);
  CHECK_FALSE(msg.empty());
  CHECK(line == 4);
  CHECK(column == 16);

  msg = parse_error_of("model m\ngenerators X\n[bogus]\n", line, column);
  CHECK_FALSE(msg.empty());
  CHECK(line == 3);
  CHECK(column == 1);

  msg = parse_error_of("model m\ngenerators X Y\n[coproducts]\nX = X (x) 1 + 1 (x) X $\n", line, column);
  CHECK_FALSE(msg.empty());
  CHECK(line == 4);
  CHECK(column == 23);
}

TEST_CASE("semantic problems in a model file are configuration errors") {
  const std::string head = "model m\nkind algebra\nparams w\ngenerators X Y\n";
  // Missing coproduct for Y.
  CHECK_THROWS_AS(instantiate(parse_model_text(head + "[coproducts]\nX = X (x) 1 + 1 (x) X\n"), kSmall), ConfigError);
  // Unknown identifier.
  CHECK_THROWS_AS(instantiate(parse_model_text(head + "[relations]\n[Y, X] = Z\n[coproducts]\nX = X (x) 1 + 1 (x) X\n"
                                                      "Y = Y (x) 1 + 1 (x) Y\n"),
                              kSmall),
                  Error);
  // Division by a generator.
  CHECK_THROWS_AS(instantiate(parse_model_text(head + "[relations]\n[Y, X] = 1/X\n[coproducts]\nX = X (x) 1 + 1 (x) X\n"
                                                      "Y = Y (x) 1 + 1 (x) Y\n"),
                              kSmall),
                  Error);
}

TEST_CASE("written models reload to the same presentation") {
  for (const auto& name : catalog()) {
    CAPTURE(name);
    Model m = model_from_text(catalog_text(name), kSmall);
    std::string text = write_model(m);
    Model back = model_from_text(text, kSmall);
    require_same(back, m);
    CHECK(back.contractions.size() == m.contractions.size());
    CHECK(back.representations.size() == m.representations.size());
    CHECK(write_model(back) == text);
  }
}

TEST_CASE("model files resolve from disk") {
  auto path = std::filesystem::temp_directory_path() / "qdual_registry_test.qd";
  {
    std::ofstream f(path);
    f << catalog_text("ext-galilei-1+1");
  }
  auto m = resolve_model(path.string(), kSmall);
  require_same(*m, *load_model("ext-galilei-1+1", kSmall));
  std::filesystem::remove(path);
}
