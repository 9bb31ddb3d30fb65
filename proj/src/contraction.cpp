#include "qdual/contraction.hpp"

#include <algorithm>
#include <sstream>

#include "qdual/errors.hpp"

namespace qdual {

namespace {

int mono_weight(Mono m, const std::vector<int>& k) {
  int s = 0;
  for (std::size_t i = 0; i < k.size(); ++i) s += k[i] * m.get(static_cast<int>(i));
  return s;
}

int word_weight(const Word& w, const std::vector<int>& k) {
  int s = 0;
  for (unsigned char g : w) s += k[g];
  return s;
}

// Rethrows a divergence with the structure it came from.
template <class F>
auto with_context(const std::string& where, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const DivergentLimit& e) {
    throw DivergentLimit(where + ": " + e.what());
  }
}

int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

}  // namespace

std::vector<int> generator_exponents(const ContractionMap& phi, const std::vector<std::string>& names) {
  std::vector<int> k;
  k.reserve(names.size());
  for (const auto& n : names) k.push_back(phi.exponent_of(n));
  if (phi.generators.size() != names.size())
    throw ConfigError("contraction " + phi.name + " covers " + std::to_string(phi.generators.size()) +
                      " generators, expected " + std::to_string(names.size()));
  return k;
}

ScalarSeries contract_coefficient(const ScalarSeries& c, int shift, const std::map<std::string, int>& n) {
  ScalarSeries r = c;
  if (const ParamSpace* s = c.space()) {
    for (const auto& [z, e] : n)
      if (s->index(z) >= 0 && e != 0) r = r.substitute_parameter(z, e);
  }
  return epsilon_limit(r.times_epsilon(shift));
}

LieAlgebra contract_lie_algebra(const LieAlgebra& g, const ContractionMap& phi) {
  std::vector<int> k = generator_exponents(phi, g.names());
  LieAlgebra out(g.names(), g.space());
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j) {
      std::vector<ScalarSeries> v(static_cast<std::size_t>(g.dim()));
      for (int l = 0; l < g.dim(); ++l) {
        const std::string where = "[" + g.names()[i] + "," + g.names()[j] + "] along " + g.names()[l];
        v[static_cast<std::size_t>(l)] =
            with_context(where, [&] { return contract_coefficient(g.c(i, j, l), k[i] + k[j] - k[l], {}); });
      }
      out.set_bracket(i, j, v);
    }
  return out;
}

std::optional<int> FundamentalConstants::of(const std::string& param) const {
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i] == param) return n0[i];
  throw ConfigError("no fundamental constant for parameter " + param);
}

std::optional<int> FundamentalConstants::max() const {
  std::optional<int> m;
  for (const auto& v : n0)
    if (v && (!m || *v > *m)) m = v;
  return m;
}

std::string FundamentalConstants::str() const {
  std::ostringstream o;
  for (std::size_t i = 0; i < params.size(); ++i) {
    o << (i ? ", " : "") << params[i] << ": ";
    if (n0[i])
      o << *n0[i];
    else
      o << "unconstrained";
  }
  return o.str();
}

FundamentalConstants fundamental_constants(const LieAlgebra& g, const Cocommutator& d, const ContractionMap& phi) {
  if (g.names() != d.names()) throw ConfigError("cocommutator and Lie algebra have different generators");
  std::vector<int> k = generator_exponents(phi, d.names());
  FundamentalConstants fc;
  const ParamSpace* s = d.space();
  if (!s) return fc;
  fc.params = s->names();
  fc.n0.assign(fc.params.size(), std::nullopt);
  const int n = d.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const int need = k[j] + k[l] - k[i];
        for (const auto& [key, c] : d.f(i, j, l).terms()) {
          // Only terms that survive with the other parameters set to zero.
          int p = -1;
          bool pure = true;
          for (int q = 0; q < s->size(); ++q) {
            if (key.exponent(q) == 0) continue;
            if (p >= 0) pure = false;
            p = q;
          }
          if (p < 0 || !pure) continue;
          const int m = ceil_div(need - key.eps, key.exponent(p));
          auto& slot = fc.n0[static_cast<std::size_t>(p)];
          if (!slot || m > *slot) slot = m;
        }
      }
  return fc;
}

std::string to_string(ContractionMode m) {
  switch (m) {
    case ContractionMode::Fundamental:
      return "fundamental";
    case ContractionMode::Homogeneous:
      return "homogeneous";
    case ContractionMode::Explicit:
      return "explicit";
  }
  return "?";
}

ContractionMode parse_contraction_mode(const std::string& s) {
  if (s == "fundamental") return ContractionMode::Fundamental;
  if (s == "homogeneous") return ContractionMode::Homogeneous;
  if (s == "explicit") return ContractionMode::Explicit;
  throw ConfigError("unknown contraction mode '" + s + "'");
}

std::map<std::string, int> parameter_exponents(const FundamentalConstants& fc, ContractionMode mode,
                                               const ContractionMap& phi) {
  std::map<std::string, int> out;
  auto from_map = [&](const std::string& p) {
    auto it = phi.param_exponents.find(p);
    return it == phi.param_exponents.end() ? 0 : it->second;
  };
  switch (mode) {
    case ContractionMode::Fundamental:
      for (std::size_t i = 0; i < fc.params.size(); ++i)
        out[fc.params[i]] = fc.n0[i] ? *fc.n0[i] : from_map(fc.params[i]);
      break;
    case ContractionMode::Homogeneous: {
      const int m = fc.max().value_or(0);
      for (const auto& p : fc.params) out[p] = m;
      break;
    }
    case ContractionMode::Explicit:
      for (const auto& p : fc.params) out[p] = from_map(p);
      for (const auto& [p, e] : phi.param_exponents) out[p] = e;
      break;
  }
  return out;
}

ContractedBialgebra contract_bialgebra(const LieAlgebra& g, const Cocommutator& d, const ContractionMap& phi,
                                       const std::map<std::string, int>& n) {
  FundamentalConstants fc = fundamental_constants(g, d, phi);
  for (std::size_t i = 0; i < fc.params.size(); ++i) {
    auto it = n.find(fc.params[i]);
    const int given = it == n.end() ? 0 : it->second;
    if (fc.n0[i] && given < *fc.n0[i])
      throw DivergentLimit("parameter " + fc.params[i] + " rescaled with n = " + std::to_string(given) +
                           " below its fundamental constant " + std::to_string(*fc.n0[i]));
  }
  std::vector<int> k = generator_exponents(phi, d.names());
  ContractedBialgebra out{contract_lie_algebra(g, phi), Cocommutator(d.names(), d.space())};
  const int dim = d.dim();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int l = j + 1; l < dim; ++l) {
        const std::string where = "delta(" + d.names()[i] + ") on " + d.names()[j] + "^" + d.names()[l];
        ScalarSeries c = with_context(where, [&] { return contract_coefficient(d.f(i, j, l), k[i] - k[j] - k[l], n); });
        if (!c.is_zero()) out.cocommutator.set(i, j, l, c);
      }
  out.jacobi = out.algebra.check_jacobi();
  out.jacobi.name = "contracted jacobi";
  out.cocycle = check_cocycle(out.algebra, out.cocommutator);
  out.cocycle.name = "contracted cocycle";
  out.cojacobi = check_cojacobi(out.cocommutator).check;
  out.cojacobi.name = "contracted co-jacobi";
  return out;
}

ContractionMap dual_contraction_map(const ContractionMap& phi, const std::vector<std::string>& generators,
                                    const std::vector<std::string>& coordinates) {
  if (generators.size() != coordinates.size())
    throw ConfigError("dual map needs one coordinate per generator");
  ContractionMap out;
  out.name = phi.name;
  out.generators = coordinates;
  for (const auto& g : generators) out.generator_exponents.push_back(-phi.exponent_of(g));
  out.param_exponents = phi.param_exponents;
  return out;
}

CheckResult check_pairing_preserved(const ContractionMap& phi, const ContractionMap& dual,
                                    const std::vector<std::string>& generators,
                                    const std::vector<std::string>& coordinates) {
  CheckResult res{"pairing preserved"};
  std::vector<int> k = generator_exponents(phi, generators);
  std::vector<int> q = generator_exponents(dual, coordinates);
  // <eps^{q_i} x_i, eps^{k_j} X_j> = eps^{q_i + k_j} delta_ij must be delta_ij.
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j) {
      ScalarSeries v = i == j ? ScalarSeries(1).times_epsilon(q[i] + k[j]) : ScalarSeries(0);
      ScalarSeries want = i == j ? ScalarSeries(1) : ScalarSeries(0);
      if (v != want)
        res.fail("<" + coordinates[i] + "," + generators[j] + "> = " + v.str());
    }
  return res;
}

ContractedPresentation contract_quantum_presentation(const HopfPresentation& h, const ContractionMap& phi,
                                                     const std::map<std::string, int>& n, const std::string& name) {
  const GeneratorSet& g = h.generators();
  std::vector<int> k = generator_exponents(phi, g.names());
  const int size = h.size();

  std::map<std::pair<int, int>, NCPoly> rules;
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < j; ++i) {
      const NCPoly& corr = h.rules()->correction(j, i);
      const std::string where = "[" + g.names()[j] + "," + g.names()[i] + "]";
      NCPoly out;
      for (const auto& [w, c] : corr.terms()) {
        ScalarSeries v = with_context(where, [&] { return contract_coefficient(c, k[j] + k[i] - word_weight(w, k), n); });
        if (!v.is_zero()) out.add(w, v);
      }
      if (!out.is_zero()) rules[{j, i}] = out;
    }

  std::vector<TensorElement> coproducts;
  std::vector<ScalarSeries> counit;
  for (int x = 0; x < size; ++x) {
    const std::string where = "Delta(" + g.names()[x] + ")";
    TensorElement::Accumulator acc;
    for (const auto& [key, c] : h.generator_coproduct(x).terms()) {
      const int shift = k[x] - mono_weight(key[0], k) - mono_weight(key[1], k);
      ScalarSeries v = with_context(where, [&] { return contract_coefficient(c, shift, n); });
      if (!v.is_zero()) acc.add(key, v);
    }
    coproducts.push_back(acc.finish());
    counit.push_back(with_context("eps(" + g.names()[x] + ")",
                                  [&] { return contract_coefficient(h.counit_values()[x], k[x], n); }));
  }

  auto rs = std::make_shared<RewriteSystem>(h.generators_ptr(), h.space(), rules);
  ContractedPresentation out;
  out.presentation = std::make_shared<HopfPresentation>(name.empty() ? h.name() + "-" + phi.name : name, h.kind(), rs,
                                                        std::move(coproducts), std::move(counit));
  out.report = out.presentation->verify();
  return out;
}

namespace {

std::vector<std::string> factor_names(const TMatrix& t, bool coordinates) {
  std::vector<std::string> out;
  for (const auto& [x, X] : t.factors) out.push_back(coordinates ? x : X);
  return out;
}

void prefix(Report& r, const std::string& p) {
  for (auto& c : r.checks) c.name = p + c.name;
}

// Dual tables of `algebra` against the relations and coproducts of `group`.
Report duality_report(const HopfPresentation& algebra, const HopfPresentation& group) {
  Report r;
  FTensor f = compute_F(algebra);
  r.add(verify_dual_monomial_basis(algebra, f));
  CheckResult rel{"dual relations"};
  const GeneratorSet& gg = group.generators();
  RelationTable table = dual_commutators(f);
  for (int j = 0; j < group.size(); ++j)
    for (int i = 0; i < j; ++i) {
      auto it = table.find({j, i});
      PBWForm got = it == table.end() ? PBWForm() : it->second;
      PBWForm d = got - group.engine().correction(j, i).truncated(f.degree);
      if (!d.is_zero()) rel.fail("[" + gg.names()[j] + "," + gg.names()[i] + "] differs by " + d.str(gg));
    }
  r.add(rel);
  r.add(check_coproduct_duality(group, compute_E(algebra)));
  return r;
}

}  // namespace

ContractedTMatrix contract_tmatrix(const TMatrix& t, const ContractionMap& phi, const std::map<std::string, int>& n) {
  if (!t.algebra || !t.group) throw ConfigError("T-matrix without both paired presentations");
  std::vector<std::string> gens = factor_names(t, false), coords = factor_names(t, true);
  ContractionMap dual = dual_contraction_map(phi, gens, coords);

  ContractedPresentation a = contract_quantum_presentation(*t.algebra, phi, n);
  ContractedPresentation g = contract_quantum_presentation(*t.group, dual, n);

  ContractedTMatrix out;
  out.tmatrix.factors = t.factors;
  out.tmatrix.algebra = a.presentation;
  out.tmatrix.group = g.presentation;
  prefix(a.report, "algebra ");
  prefix(g.report, "group ");
  out.report.merge(a.report);
  out.report.merge(g.report);
  out.report.add(check_pairing_preserved(phi, dual, gens, coords));
  out.report.merge(duality_report(*a.presentation, *g.presentation));
  return out;
}

ContractedModel contract_model(const Model& m, const ContractionMap& phi, ContractionMode mode,
                               const std::string& new_name) {
  if (mode != ContractionMode::Explicit && m.algebra->kind() != PresentationKind::Algebra)
    throw ConfigError("fundamental constants need an algebra-side presentation; use --mode explicit");
  ContractedModel out;
  LieAlgebra g = m.algebra->classical_bracket();
  Cocommutator d = first_order_cocommutator(*m.algebra);
  out.constants = fundamental_constants(g, d, phi);
  out.exponents = parameter_exponents(out.constants, mode, phi);

  Model& r = out.model;
  r.name = new_name.empty() ? m.name + "-" + phi.name : new_name;
  r.truncation = m.truncation;
  r.params = m.params;
  std::ostringstream note;
  note << "contraction " << phi.name << " (" << to_string(mode) << ") of " << m.name;
  r.notes.push_back(note.str());

  ContractedPresentation a = contract_quantum_presentation(*m.algebra, phi, out.exponents, r.name);
  r.algebra = a.presentation;
  prefix(a.report, "algebra ");
  out.report.merge(a.report);
  if (m.group) {
    ContractionMap dual = dual_contraction_map(phi, m.generator_names(), m.coordinate_names());
    ContractedPresentation gp = contract_quantum_presentation(*m.group, dual, out.exponents, r.name + " group");
    r.group = gp.presentation;
    prefix(gp.report, "group ");
    out.report.merge(gp.report);
    out.report.add(check_pairing_preserved(phi, dual, m.generator_names(), m.coordinate_names()));
  }
  return out;
}

CheckResult check_commuting_square(const HopfPresentation& h, const ContractionMap& phi,
                                   const std::map<std::string, int>& n) {
  CheckResult res{"commuting square " + h.name()};
  Cocommutator top = first_order_cocommutator(*contract_quantum_presentation(h, phi, n).presentation);
  ContractedBialgebra side = contract_bialgebra(h.classical_bracket(), first_order_cocommutator(h), phi, n);
  const auto& names = h.generators().names();
  for (int i = 0; i < top.dim(); ++i)
    for (int j = 0; j < top.dim(); ++j)
      for (int l = j + 1; l < top.dim(); ++l) {
        ScalarSeries diff = top.f(i, j, l) - side.cocommutator.f(i, j, l);
        if (!diff.is_zero())
          res.fail("delta(" + names[i] + ") on " + names[j] + "^" + names[l] + " differs by " + diff.str());
      }
  return res;
}

FilterResult contraction_filter(const LieAlgebra& g, const Cocommutator& family, const std::vector<std::string>& params,
                                const ContractionMap& phi, const Cocommutator& target) {
  FundamentalConstants fc = fundamental_constants(g, family, phi);
  auto n = parameter_exponents(fc, ContractionMode::Fundamental, phi);
  FilterResult out{contract_bialgebra(g, family, phi, n).cocommutator,
                   {},
                   BranchResult{family, {}, {}},
                   Cocommutator(family.names()),
                   {}};
  Cocommutator diff = out.contracted + target.scaled(ScalarSeries(-1));
  auto dirs = linear_directions(diff, params);
  const int rows = dirs.empty() ? 0 : static_cast<int>(dirs.front().size());
  RationalMatrix a(rows, static_cast<int>(params.size()));
  for (std::size_t p = 0; p < params.size(); ++p)
    for (int r = 0; r < rows; ++r) a.at(r, static_cast<int>(p)) = dirs[p][static_cast<std::size_t>(r)];
  Echelon e = rref(a);
  const ParamSpace* s = family.space();
  for (std::size_t row = 0; row < e.pivot_cols.size(); ++row) {
    const int pc = e.pivot_cols[row];
    const int npc = n[params[static_cast<std::size_t>(pc)]];
    ScalarSeries value(s, Rational(0));
    for (int c = 0; c < a.cols(); ++c) {
      const Rational& x = e.reduced.at(static_cast<int>(row), c);
      if (c == pc || x == Rational(0)) continue;
      if (n[params[static_cast<std::size_t>(c)]] != npc)
        throw ConfigError("filter condition mixes parameters of different fundamental constants");
      value -= ScalarSeries::param(s, params[static_cast<std::size_t>(c)]) * x;
    }
    out.assignments.emplace_back(params[static_cast<std::size_t>(pc)], value);
  }
  out.filtered = branch_substitute(g, family, out.assignments);

  std::vector<bool> used(params.size(), false);
  auto dirs_after = linear_directions(out.filtered.family, params);
  for (std::size_t p = 0; p < params.size(); ++p)
    for (const auto& x : dirs_after[p]) used[p] = used[p] || x != Rational(0);
  for (std::size_t p = 0; p < params.size(); ++p)
    if (used[p]) out.surviving.push_back(params[p]);
  const ParamSpace* rs = ParamSpace::make(out.surviving, s ? s->order() : 0);
  std::vector<ScalarSeries> values;
  for (const auto& name : s->names()) {
    auto it = std::find(out.surviving.begin(), out.surviving.end(), name);
    values.push_back(it == out.surviving.end() ? ScalarSeries(rs, Rational(0)) : ScalarSeries::param(rs, name));
  }
  out.reduced = compose(out.filtered.family, values, rs);
  return out;
}

ContractionMap identity_contraction(const std::vector<std::string>& generators, const std::vector<std::string>& params) {
  ContractionMap out;
  out.name = "identity";
  out.generators = generators;
  out.generator_exponents.assign(generators.size(), 0);
  for (const auto& p : params) out.param_exponents[p] = 0;
  return out;
}

}  // namespace qdual
