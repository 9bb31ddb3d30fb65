#include "json_out.hpp"

namespace qdual::json_out {

namespace {

json mono(Mono m, const GeneratorSet& g) {
  json o = json::object();
  for (int i = 0; i < g.size(); ++i)
    if (m.get(i)) o[g.names()[i]] = m.get(i);
  return o;
}

}  // namespace

json rational(const Rational& r) { return {{"num", r.num_str()}, {"den", r.den_str()}}; }

json series(const ScalarSeries& s) {
  json terms = json::array();
  const ParamSpace* sp = s.space();
  for (const auto& [k, c] : s.terms()) {
    json powers = json::object();
    if (sp)
      for (int i = 0; i < sp->size(); ++i)
        if (k.exponent(i)) powers[sp->names()[i]] = k.exponent(i);
    json t{{"coef", rational(c)}, {"powers", powers}};
    if (k.eps) t["eps"] = k.eps;
    terms.push_back(t);
  }
  return {{"terms", terms}, {"text", s.str()}};
}

json pbw(const PBWForm& p, const GeneratorSet& g) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"monomial", mono(m, g)}, {"coef", series(c)}});
  return {{"terms", terms}, {"text", p.str(g)}};
}

json tensor(const TensorElement& t, const GeneratorSet& g) {
  json terms = json::array();
  for (const auto& [k, c] : t.terms())
    terms.push_back({{"left", mono(k[0], g)}, {"right", mono(k[1], g)}, {"coef", series(c)}});
  return {{"terms", terms}, {"text", t.str(g)}};
}

json check(const CheckResult& c) { return {{"name", c.name}, {"pass", c.pass}, {"residuals", c.residuals}}; }

json report(const Report& r) {
  json a = json::array();
  for (const auto& c : r.checks) a.push_back(check(c));
  return a;
}

json relations(const HopfPresentation& h) {
  const GeneratorSet& g = h.generators();
  json a = json::array();
  for (int j = 0; j < h.size(); ++j)
    for (int i = 0; i < j; ++i) {
      PBWForm v = h.engine().correction(j, i).truncated(h.degree());
      if (v.is_zero()) continue;
      a.push_back({{"left", g.names()[j]}, {"right", g.names()[i]}, {"value", pbw(v, g)}});
    }
  return a;
}

json relation_table(const RelationTable& t, const GeneratorSet& g) {
  json a = json::array();
  for (const auto& [key, v] : t) {
    if (v.is_zero()) continue;
    a.push_back({{"left", g.names()[key.first]}, {"right", g.names()[key.second]}, {"value", pbw(v, g)}});
  }
  return a;
}

json coproducts(const HopfPresentation& h) {
  std::vector<TensorElement> c;
  for (int i = 0; i < h.size(); ++i) c.push_back(h.generator_coproduct(i).leg_truncated(h.degree()));
  return coproduct_list(c, h.generators());
}

json coproduct_list(const std::vector<TensorElement>& c, const GeneratorSet& g) {
  json a = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) a.push_back({{"generator", g.names()[i]}, {"value", tensor(c[i], g)}});
  return a;
}

json lie_algebra(const LieAlgebra& g) {
  json a = json::array();
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j)
      for (int l = 0; l < g.dim(); ++l)
        if (!g.c(i, j, l).is_zero())
          a.push_back({{"left", g.names()[i]}, {"right", g.names()[j]}, {"along", g.names()[l]}, {"coef", series(g.c(i, j, l))}});
  return {{"brackets", a}, {"text", g.str()}};
}

json cocommutator(const Cocommutator& d) {
  json a = json::array();
  for (int i = 0; i < d.dim(); ++i)
    for (int j = 0; j < d.dim(); ++j)
      for (int l = j + 1; l < d.dim(); ++l)
        if (!d.f(i, j, l).is_zero())
          a.push_back({{"generator", d.names()[i]},
                       {"wedge", {d.names()[j], d.names()[l]}},
                       {"coef", series(d.f(i, j, l))}});
  return {{"terms", a}, {"text", d.str()}};
}

json constants(const FundamentalConstants& fc) {
  json o = json::object();
  for (std::size_t i = 0; i < fc.params.size(); ++i)
    o[fc.params[i]] = fc.n0[i] ? json(*fc.n0[i]) : json("unconstrained");
  return o;
}

json algebra_matrix(const AlgebraMatrix& m, const GeneratorSet& g) {
  json rows = json::array();
  for (int i = 0; i < m.dim; ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim; ++j) row.push_back(pbw(m.at(i, j), g));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qdual::json_out
