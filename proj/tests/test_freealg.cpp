#include <random>

#include "doctest.h"
#include "qdual/errors.hpp"
#include "qdual/freealg.hpp"

using namespace qdual;

namespace {

Word word(std::initializer_list<int> letters) {
  Word w;
  for (int l : letters) w.push_back(static_cast<char>(l));
  return w;
}

// P0 < P1 < K with [K,P0] = P1, [K,P1] = (e^{4wP0}-1)/(4w) + w P1^2.
std::shared_ptr<const RewriteSystem> kappa(int order, int degree = 6, int working = 8) {
  auto gens = std::make_shared<GeneratorSet>(std::vector<std::string>{"P0", "P1", "K"}, degree, working);
  const ParamSpace* s = ParamSpace::make({"w"}, order);
  ScalarSeries w = ScalarSeries::param(s, "w");
  std::map<std::pair<int, int>, NCPoly> c;
  c[{2, 0}] = NCPoly::letter(1);
  NCPoly k1;
  ScalarSeries pw(s, Rational(1));
  Word p0s;
  for (int k = 1; k <= working; ++k) {
    p0s.push_back(0);
    k1.add(p0s, pw * Rational(1, 1) * (Rational(1) / Rational::factorial(k)));
    pw *= w * Rational(4);
  }
  k1.add(word({1, 1}), w);
  c[{2, 1}] = k1;
  return std::make_shared<RewriteSystem>(gens, s, c);
}

}  // namespace

TEST_CASE("single swap introduces the commutator") {
  auto rs = kappa(2);
  NCPoly p;
  p.add(word({2, 0}), ScalarSeries(1));
  PBWForm f = normal_order(p, *rs);
  CHECK(f.coefficient(Mono::from_exponents({1, 0, 1})) == ScalarSeries(1));
  CHECK(f.coefficient(Mono::from_exponents({0, 1, 0})) == ScalarSeries(1));
  CHECK(f.terms().size() == 2);
}

TEST_CASE("K P1 expands the exponential correction to the requested order") {
  auto rs = kappa(2);
  const ParamSpace* s = rs->space();
  ScalarSeries w = ScalarSeries::param(s, "w");
  NCPoly p;
  p.add(word({2, 1}), ScalarSeries(1));
  PBWForm f = normal_order(p, *rs);
  CHECK(f.coefficient(Mono::from_exponents({0, 1, 1})) == ScalarSeries(1));
  CHECK(f.coefficient(Mono::from_exponents({1, 0, 0})) == ScalarSeries(1));
  CHECK(f.coefficient(Mono::from_exponents({2, 0, 0})) == w * Rational(2));
  CHECK(f.coefficient(Mono::from_exponents({3, 0, 0})) == w * w * Rational(8, 3));
  CHECK(f.coefficient(Mono::from_exponents({4, 0, 0})).is_zero());  // w^3 dropped at N=2
  CHECK(f.coefficient(Mono::from_exponents({0, 2, 0})) == w);
}

TEST_CASE("engine, leftmost and rightmost rewriting agree on random words") {
  auto rs = kappa(3, 5, 7);
  PbwAlgebra alg(rs);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int len = 1 + static_cast<int>(rng() % 5);
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(static_cast<char>(rng() % 3));
    NCPoly p;
    p.add(w, ScalarSeries(1));
    PBWForm a = normal_order(p, *rs, Strategy::Leftmost);
    PBWForm b = normal_order(p, *rs, Strategy::Rightmost);
    PBWForm c = alg.normal_order(p);
    CHECK(a == b);
    CHECK(a == c);
  }
}

TEST_CASE("engine multiplication is associative") {
  auto rs = kappa(3, 5, 7);
  PbwAlgebra alg(rs);
  std::mt19937_64 rng(5);
  auto rnd = [&] {
    std::vector<int> e(3);
    int budget = 2;
    for (auto& x : e) {
      x = static_cast<int>(rng() % (budget + 1));
      budget -= x;
    }
    return PBWForm::monomial(Mono::from_exponents(e));
  };
  for (int trial = 0; trial < 40; ++trial) {
    PBWForm x = rnd(), y = rnd(), z = rnd();
    PBWForm l = alg.multiply(alg.multiply(x, y), z), r = alg.multiply(x, alg.multiply(y, z));
    INFO((l - r).str(alg.generators()));
    CHECK(l.truncated(5) == r.truncated(5));
  }
}

TEST_CASE("rules without a triangular witness are rejected") {
  auto gens = std::make_shared<GeneratorSet>(std::vector<std::string>{"A", "B"}, 4, 6);
  const ParamSpace* s = ParamSpace::make({"w"}, 2);
  std::map<std::pair<int, int>, NCPoly> c;
  NCPoly bad;
  bad.add(word({1, 0}), ScalarSeries(1));
  c[{1, 0}] = bad;
  CHECK_THROWS_AS(RewriteSystem(gens, s, c), ConfigError);
}
