#include <random>

#include "doctest.h"
#include "qdual/errors.hpp"
#include "qdual/scalar.hpp"

using namespace qdual;

TEST_CASE("rational fast path promotes without losing precision") {
  Rational big(1LL << 62);
  Rational sq = big * big;
  CHECK(sq.str() == "21267647932558653966460912964485513216");
  CHECK((sq / big) == big);
  CHECK(Rational::parse("-6/4") == Rational(-3, 2));
  CHECK(Rational::factorial(20) == Rational(2432902008176640000LL));
  CHECK(Rational::factorial(21).str() == "51090942171709440000");
}

TEST_CASE("series truncates at the declared order") {
  const ParamSpace* s = ParamSpace::make({"w"}, 3);
  ScalarSeries w = ScalarSeries::param(s, "w");
  ScalarSeries x = ScalarSeries(1) + w;
  ScalarSeries p = x * x * x * x;  // (1+w)^4 through w^3
  CHECK(p.coefficient(SKey::from_exponents({3})) == Rational(4));
  CHECK(p.coefficient(SKey::from_exponents({4})).is_zero());
  CHECK(p.max_degree() == 3);
}

TEST_CASE("epsilon limit drops positive powers and refuses negative ones") {
  const ParamSpace* s = ParamSpace::make({"a"}, 4);
  ScalarSeries a = ScalarSeries::param(s, "a");
  ScalarSeries v = a + a.times_epsilon(2);
  CHECK(epsilon_limit(v) == a);
  CHECK_THROWS_AS(epsilon_limit(a.times_epsilon(-1)), DivergentLimit);
  ScalarSeries sub = (a * a).substitute_parameter("a", 1);
  CHECK(sub.min_epsilon() == 2);
}

TEST_CASE("ring axioms hold on random series") {
  const ParamSpace* s = ParamSpace::make({"a", "b"}, 4);
  std::mt19937_64 rng(7);
  auto gen = [&] {
    ScalarSeries r(s, Rational(0));
    for (int t = 0; t < 4; ++t) {
      int i = static_cast<int>(rng() % 3), j = static_cast<int>(rng() % 3);
      Rational c(static_cast<long long>(rng() % 11) - 5, static_cast<long long>(rng() % 4) + 1);
      r += ScalarSeries::monomial(s, SKey::from_exponents({i, j}), c);
    }
    return r;
  };
  for (int trial = 0; trial < 200; ++trial) {
    ScalarSeries x = gen(), y = gen(), z = gen();
    CHECK((x * y) == (y * x));
    CHECK(((x * y) * z) == (x * (y * z)));
    CHECK((x * (y + z)) == (x * y + x * z));
    CHECK((x - x).is_zero());
  }
}
