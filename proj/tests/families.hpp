#pragma once

#include <string>
#include <vector>

#include "qdual/liebialg.hpp"

// Lie algebras and cocommutator families of the extended Poincare classification.
namespace qdual::test {


// M < P0 < P1 < K with [K,P0] = P1, [K,P1] = M + P0 (central M).
inline LieAlgebra ext_poincare() {
  LieAlgebra g({"M", "P0", "P1", "K"});
  g.set_bracket(3, 1, {0, 0, 1, 0});
  g.set_bracket(3, 2, {1, 1, 0, 0});
  return g;
}

inline LieAlgebra ext_galilei() {
  LieAlgebra g({"M", "P0", "P1", "K"});
  g.set_bracket(3, 1, {0, 0, 1, 0});
  g.set_bracket(3, 2, {1, 0, 0, 0});
  return g;
}

inline LieAlgebra poincare() {
  LieAlgebra g({"P0", "P1", "K"});
  g.set_bracket(2, 0, {0, 1, 0});
  g.set_bracket(2, 1, {1, 0, 0});
  return g;
}

inline const ParamSpace* family_space() {
  return ParamSpace::make({"a", "b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8"}, 16);
}

inline ScalarSeries v(const char* name) { return ScalarSeries::param(family_space(), name); }

enum { M, P0, P1, K };

// General cocycle of the extended Poincare bracket, nine parameters.
inline Cocommutator nine_parameter_family() {
  Cocommutator d({"M", "P0", "P1", "K"}, family_space());
  d.add_wedge(M, M, P1, v("a"));
  d.add_wedge(M, P0, P1, v("a"));
  d.add_wedge(P0, M, P0, v("b1"));
  d.add_wedge(P0, M, P1, v("b2"));
  d.add_wedge(P0, M, K, v("b3"));
  d.add_wedge(P0, P0, P1, v("b4"));
  d.add_wedge(P0, P0, K, v("b3"));
  d.add_wedge(P1, M, P0, v("b2") - v("b4"));
  d.add_wedge(P1, M, P1, v("b5"));
  d.add_wedge(P1, P0, P1, v("b5") - v("b1"));
  d.add_wedge(P1, P1, K, v("b3"));
  d.add_wedge(K, M, P0, v("b6"));
  d.add_wedge(K, M, P1, v("b7"));
  d.add_wedge(K, M, K, v("b5") - v("b1"));
  d.add_wedge(K, P0, P1, v("b8"));
  d.add_wedge(K, P0, K, v("b5") - v("b1"));
  d.add_wedge(K, P1, K, -(v("a") + v("b4")));
  return d;
}

inline std::vector<std::string> family_params() { return {"a", "b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8"}; }

inline std::vector<ScalarSeries> quadratic_constraints() {
  return {v("a") * v("b1"),
          v("a") * v("b3"),
          v("b1") * v("b8"),
          v("b3") * v("b8"),
          v("b1") * v("b2") - (v("b2") - v("b4")) * v("b5") + v("b3") * v("b7"),
          (v("a") + v("b4")) * (v("b2") - v("b4")) + v("b1") * (v("b1") - v("b5")) + v("b3") * v("b6")};
}

// Reduced basis computed independently (sympy, grlex with b8 > ... > b1 > a).
inline std::vector<ScalarSeries> frozen_basis() {
  auto a = v("a"), b1 = v("b1"), b2 = v("b2"), b3 = v("b3"), b4 = v("b4"), b5 = v("b5"), b6 = v("b6"),
       b7 = v("b7"), b8 = v("b8");
  return {-b2 * b5 * b8 + b4 * b5 * b8,
          -a * b2 * b8 + a * b4 * b8 - b2 * b4 * b8 + b4 * b4 * b8,
          -a * b2 * b7 + a * b4 * b7 - b1 * b1 * b7 + b1 * b2 * b6 + b1 * b5 * b7 - b2 * b4 * b7 - b2 * b5 * b6 +
              b4 * b4 * b7 + b4 * b5 * b6,
          -a * b2 * b5 + a * b4 * b5,
          -a * a * b2 + a * a * b4 - a * b2 * b4 + a * b4 * b4,
          b3 * b8,
          b1 * b8,
          b1 * b2 - b2 * b5 + b3 * b7 + b4 * b5,
          a * b2 - a * b4 + b1 * b1 - b1 * b5 + b2 * b4 + b3 * b6 - b4 * b4,
          a * b3,
          a * b1};
}

// Branch ii of the co-Jacobi constraints: b1 = b3 = 0, b4 = b2.
inline Cocommutator branch_ii_family() {
  ScalarSeries zero(family_space(), Rational(0));
  return branch_substitute(ext_poincare(), nine_parameter_family(), {{"b4", v("b2")}, {"b1", zero}, {"b3", zero}})
      .family;
}

// delta(M) = a (M^P1 + P0^P1), delta(K) = a K^P1 over the family space.
inline Cocommutator ext_poincare_target() {
  Cocommutator d({"M", "P0", "P1", "K"}, family_space());
  d.add_wedge(M, M, P1, v("a"));
  d.add_wedge(M, P0, P1, v("a"));
  d.add_wedge(K, K, P1, v("a"));
  return d;
}

// delta(M) = a M^P1, delta(K) = a K^P1 over the family space.
inline Cocommutator ext_galilei_target() {
  Cocommutator d({"M", "P0", "P1", "K"}, family_space());
  d.add_wedge(M, M, P1, v("a"));
  d.add_wedge(K, K, P1, v("a"));
  return d;
}

inline bool same_set(const std::vector<ScalarSeries>& x, const std::vector<ScalarSeries>& y) {
  if (x.size() != y.size()) return false;
  for (const auto& p : x) {
    bool found = false;
    for (const auto& q : y) found = found || p == q;
    if (!found) return false;
  }
  return true;
}

inline std::vector<ScalarSeries> widen(const std::vector<ScalarSeries>& ps) {
  std::vector<ScalarSeries> out;
  for (const auto& p : ps) out.push_back(p.rebased(family_space()->with_order(ParamSpace::kMaxOrder)));
  return out;
}

}  // namespace qdual::test
