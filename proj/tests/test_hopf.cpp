#include <chrono>

#include "doctest.h"
#include "qdual/errors.hpp"
#include "qdual/hopf.hpp"
#include "qdual/modelfile.hpp"
#include "qdual/registry.hpp"
#include "support.hpp"

using namespace qdual;
using namespace qdual::test;

namespace {

const Truncation kSmall{4, 4, 4};

Model kappa(const Truncation& t = kSmall) {
  return model_from_text(catalog_text("kappa-poincare-1+1-timelike"), t);
}

bool check_passes(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c.pass;
  FAIL("no check named " << name);
  return false;
}

}  // namespace

TEST_CASE("every catalog presentation passes the Hopf axioms on both sides") {
  for (const auto& name : catalog()) {
    CAPTURE(name);
    Model m = model_from_text(catalog_text(name), kSmall);
    Report r = m.algebra->verify();
    INFO(r.summary());
    CHECK(r.pass());
    if (m.group) {
      Report g = m.group->verify();
      INFO(g.summary());
      CHECK(g.pass());
    }
  }
}

TEST_CASE("generator coproduct is the base case of the monomial recursion") {
  Model m = kappa();
  const auto& h = *m.algebra;
  for (int i = 0; i < h.size(); ++i) CHECK(h.coproduct(Mono::unit(i)) == h.generator_coproduct(i));
}

TEST_CASE("coproduct of P0 P1 in kappa-Poincare") {
  Model m = kappa();
  const auto& h = *m.algebra;
  TensorElement want = tensor(h,
                              "P0*P1 (x) exp(2*w*P0) + P0 (x) P1 + P1 (x) P0*exp(2*w*P0) + 1 (x) P0*P1");
  CHECK(h.coproduct(mono(h, {{"P0", 1}, {"P1", 1}})).leg_truncated(h.degree()) == want);
  CHECK(h.coproduct_direct(mono(h, {{"P0", 1}, {"P1", 1}})).leg_truncated(h.degree()) == want);
}

TEST_CASE("boost powers carry the 2w pattern against P0 and P1") {
  Model m = kappa({6, 6, 4});
  const auto& h = *m.algebra;
  ScalarSeries two_w = ScalarSeries::param(h.space(), "w") * Rational(2);
  Mono k = mono(h, {{"K", 1}});
  Mono p0 = mono(h, {{"P0", 1}});
  Mono p1 = mono(h, {{"P1", 1}});
  for (int n = 2; n <= h.degree(); ++n) {
    CAPTURE(n);
    const TensorElement& d = h.coproduct(mono(h, {{"K", n}}));
    if (n % 2 == 1) {
      CHECK(d.coefficient({k, p0}) == two_w);
    } else {
      CHECK(d.coefficient({k, p1}) == two_w);
    }
  }
}

TEST_CASE("recursion and direct expansion agree up to degree four") {
  for (const auto& name : catalog()) {
    CAPTURE(name);
    Model m = model_from_text(catalog_text(name), kSmall);
    for (const auto* side : {m.algebra.get(), m.group.get()}) {
      if (!side) continue;
      const int n = side->size();
      std::vector<int> e(n, 0);
      // Odometer over exponent vectors of total degree <= 4.
      while (true) {
        int total = 0;
        for (int x : e) total += x;
        if (total <= 4) {
          Mono mu = Mono::from_exponents(e);
          CHECK(side->retained(side->coproduct(mu)) == side->retained(side->coproduct_direct(mu)));
        }
        int i = 0;
        while (i < n && ++e[i] > 4) e[i++] = 0;
        if (i == n) break;
      }
    }
  }
}

TEST_CASE("primitive boost coproduct breaks the homomorphism in the K, P1 pair") {
  std::string text = replace_line(catalog_text("kappa-poincare-1+1-timelike"), "K = K (x)", "K = K (x) 1 + 1 (x) K");
  Model m = model_from_text(text, kSmall);
  CheckResult c = m.algebra->check_homomorphism();
  CHECK_FALSE(c.pass);
  REQUIRE_FALSE(c.residuals.empty());
  bool mentions_pair = false;
  for (const auto& line : c.residuals) mentions_pair = mentions_pair || line.find("[K,P1]") != std::string::npos;
  CHECK(mentions_pair);
  CHECK(m.algebra->check_coassociativity().pass);
}

TEST_CASE("halving the exponential in the boost coproduct is caught") {
  std::string text = replace_line(catalog_text("kappa-poincare-1+1-timelike"), "K = K (x)",
                                  "K = K (x) exp(w*P0) + 1 (x) K");
  Model m = model_from_text(text, kSmall);
  CHECK_FALSE(m.algebra->verify().pass());
  CHECK_FALSE(m.algebra->check_homomorphism().pass);
  // K (x) g + 1 (x) K stays coassociative for any group-like g.
  CHECK(m.algebra->check_coassociativity().pass);
}

TEST_CASE("a mixed first-order term in the boost coproduct breaks coassociativity") {
  std::string text = replace_line(catalog_text("kappa-poincare-1+1-timelike"), "K = K (x)",
                                  "K = K (x) exp(2*w*P0) + 1 (x) K + w*P1 (x) P1");
  Model m = model_from_text(text, kSmall);
  CheckResult c = m.algebra->check_coassociativity();
  CHECK_FALSE(c.pass);
  CHECK_FALSE(c.residuals.empty());
}

TEST_CASE("primitive coproducts on an abelian algebra") {
  const char* text = R"(model abelian
kind algebra
params w
generators X Y

[coproducts]
X = X (x) 1 + 1 (x) X
Y = Y (x) 1 + 1 (x) Y
)";
  Model m = model_from_text(text, kSmall);
  CHECK(m.algebra->verify().pass());
  Antipode s = derive_antipode(*m.algebra);
  CHECK(s.on_generators[0] == pbw(*m.algebra, "-X"));
  CHECK(s.on_generators[1] == pbw(*m.algebra, "-Y"));
  CHECK(first_order_cocommutator(*m.algebra).is_zero());
}

TEST_CASE("counit axiom holds on every catalog side") {
  for (const auto& name : catalog()) {
    CAPTURE(name);
    Model m = model_from_text(catalog_text(name), kSmall);
    CHECK(m.algebra->check_counit().pass);
    if (m.group) CHECK(m.group->check_counit().pass);
  }
}

TEST_CASE("kappa-Poincare antipode") {
  Model m = kappa();
  const auto& h = *m.algebra;
  Antipode s = derive_antipode(h);
  CHECK(s.left_identity.pass);
  CHECK(s.right_identity.pass);
  CHECK(s.on_generators[0] == pbw(h, "-P0"));
  CHECK(s.on_generators[1].truncated(h.degree()) == pbw(h, "-P1*exp(-2*w*P0)"));
  CHECK(s.on_generators[2].truncated(h.degree()) == pbw(h, "-K*exp(-2*w*P0)"));
}

TEST_CASE("extended Galilei antipode of the boost") {
  Model m = model_from_text(catalog_text("ext-galilei-1+1"), kSmall);
  const auto& h = *m.algebra;
  Antipode s = derive_antipode(h);
  CHECK(s.left_identity.pass);
  CHECK(s.right_identity.pass);
  CHECK(s.on_generators[3].truncated(h.degree()) == pbw(h, "-K*exp(-alpha*P1)"));
  CHECK(s.on_generators[0].truncated(h.degree()) == pbw(h, "-exp(alpha*P1)*M"));
}

TEST_CASE("antipode identities hold on every catalog algebra") {
  for (const auto& name : catalog()) {
    CAPTURE(name);
    Model m = model_from_text(catalog_text(name), kSmall);
    Antipode s = derive_antipode(*m.algebra);
    CHECK(s.left_identity.pass);
    CHECK(s.right_identity.pass);
  }
}

TEST_CASE("antipode rejects a coproduct without a unit leg") {
  const char* text = R"(model skew
kind algebra
params w
generators X

[coproducts]
X = X (x) X
)";
  Model m = model_from_text(text, kSmall);
  CHECK_THROWS_AS(derive_antipode(*m.algebra), NotPointed);
}

TEST_CASE("kappa-Poincare first-order cocommutator") {
  Model m = kappa();
  Cocommutator d = first_order_cocommutator(*m.algebra);
  ScalarSeries w = ScalarSeries::param(m.space(), "w");
  Cocommutator want(m.generator_names(), m.space());
  want.add_wedge(1, 1, 0, w);
  want.add_wedge(2, 2, 0, w);
  CHECK(d == want);
}

TEST_CASE("extended Poincare first-order cocommutator") {
  Model m = model_from_text(catalog_text("ext-poincare-1+1"), kSmall);
  Cocommutator d = first_order_cocommutator(*m.algebra);
  ScalarSeries half = ScalarSeries::param(m.space(), "alpha") * Rational(1, 2);
  // M P0 P1 K
  Cocommutator want(m.generator_names(), m.space());
  want.add_wedge(0, 0, 2, half);
  want.add_wedge(0, 1, 2, half);
  want.add_wedge(3, 3, 2, half);
  CHECK(d == want);
}

TEST_CASE("catalog loads at the default truncation within budget") {
  for (const auto& name : catalog()) {
    CAPTURE(name);
    auto start = std::chrono::steady_clock::now();
    auto m = load_model(name);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    MESSAGE(name << " loaded in " << secs << " s");
    CHECK(m->algebra->verify().pass());
    CHECK(secs < 60.0);
  }
}
