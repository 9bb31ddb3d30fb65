#include "qdual/duality.hpp"

#include <algorithm>
#include <sstream>

#include "qdual/errors.hpp"

namespace qdual {

namespace {

void extend(std::vector<Mono>& out, std::vector<int>& e, int i, int left) {
  if (i == static_cast<int>(e.size())) {
    if (left == 0) out.push_back(Mono::from_exponents(e));
    return;
  }
  for (int k = left; k >= 0; --k) {
    e[i] = k;
    extend(out, e, i + 1, left - k);
  }
  e[i] = 0;
}

Mono shifted(Mono a, Mono b) { return Mono{a.bits + b.bits}; }

bool supported_up_to(Mono m, int l, int n) {
  for (int k = l + 1; k < n; ++k)
    if (m.get(k) != 0) return false;
  return true;
}

/// X_g X^mu = X^{mu + e_g} for every mu: g commutes with all earlier generators.
std::vector<bool> left_absorbable(const HopfPresentation& h) {
  std::vector<bool> ok(h.size(), true);
  for (int g = 0; g < h.size(); ++g)
    for (int k = 0; k < g; ++k)
      if (!h.engine().correction(g, k).is_zero()) ok[g] = false;
  return ok;
}

std::string index_str(Mono rho, Mono mu, Mono nu, int n) {
  auto one = [n](Mono m) {
    std::string s;
    for (int i = 0; i < n; ++i) s += std::to_string(m.get(i));
    return s;
  };
  return "F^" + one(rho) + "_" + one(mu) + ";" + one(nu);
}

std::string prefactor(const ScalarSeries& c) {
  std::string s = c.str();
  if (s == "1") return "";
  if (s == "-1") return "-";
  if (c.terms().size() > 1) return "(" + s + ")*";
  return s + "*";
}

}  // namespace

std::vector<Mono> monomials_up_to(int n, int d) {
  std::vector<Mono> out;
  std::vector<int> e(n, 0);
  for (int t = 0; t <= d; ++t) extend(out, e, 0, t);
  return out;
}

Rational mono_factorial(Mono m) {
  Rational r(1);
  for (int i = 0; i < Mono::kMaxGenerators; ++i)
    if (m.get(i) > 1) r = r * Rational::factorial(m.get(i));
  return r;
}

ScalarSeries FTensor::at(Mono rho, Mono mu, Mono nu) const {
  auto it = entries.find(rho);
  if (it == entries.end()) return {};
  return it->second.coefficient({mu, nu});
}

FTensor FTensor::transposed() const {
  FTensor t = *this;
  for (auto& [rho, d] : t.entries) d = flip(d);
  return t;
}

FTensor compute_F(const HopfPresentation& h, int degree) {
  FTensor f;
  f.size = h.size();
  f.degree = degree;
  for (Mono rho : monomials_up_to(h.size(), degree))
    f.entries.emplace(rho, h.coproduct(rho).leg_truncated(degree).total_truncated(h.working()));
  return f;
}

ScalarSeries ETensor::at(int l, Mono mu, Mono nu) const { return linear[l].coefficient({mu, nu}); }

ETensor compute_E(const HopfPresentation& h, int degree) {
  ETensor e;
  e.size = h.size();
  e.degree = degree;
  std::vector<TensorElement::Accumulator> acc(h.size());
  const std::vector<Mono> monos = monomials_up_to(h.size(), degree);
  for (Mono mu : monos)
    for (Mono nu : monos) {
      if (mu.total() + nu.total() > h.working()) continue;
      for (const auto& [m, c] : h.engine().mono_times_mono(mu, nu).terms())
        if (m.total() == 1) acc[m.last()].add({mu, nu}, c);
    }
  for (auto& a : acc) e.linear.push_back(a.finish());
  return e;
}

Report verify_recurrences(const HopfPresentation& h, const FTensor& f) {
  Report out;
  const int n = h.size();
  const GeneratorSet& g = h.generators();
  std::vector<bool> absorb = left_absorbable(h);
  for (int l = 0; l < n; ++l) {
    if (!absorb[l]) continue;
    const TensorElement& dl = h.generator_coproduct(l);
    bool legs_shift = true;
    for (const auto& [k, c] : dl.terms())
      for (Mono leg : k)
        for (int i = 0; i < n; ++i)
          if (leg.get(i) && !absorb[i]) legs_shift = false;
    if (!legs_shift) continue;

    CheckResult res{"recurrence " + g.names()[l]};
    for (const auto& [rho, want] : f.entries) {
      if (rho.get(l) == 0) continue;
      auto prev = f.entries.find(rho.minus(l));
      if (prev == f.entries.end()) continue;
      TensorElement::Accumulator acc;
      for (const auto& [kl, cl] : dl.terms())
        for (const auto& [kp, cp] : prev->second.terms())
          acc.add({shifted(kl[0], kp[0]), shifted(kl[1], kp[1])}, cl * cp);
      TensorElement got = acc.finish().leg_truncated(f.degree).total_truncated(h.working());
      TensorElement diff = got - want;
      for (const auto& [k, c] : diff.terms())
        res.fail(index_str(rho, k[0], k[1], n) + ": recurrence gives " + got.coefficient(k).str() + ", stored " +
                 want.coefficient(k).str());
    }
    out.add(res);
  }
  return out;
}

CheckResult verify_dual_monomial_basis(const HopfPresentation& h, const FTensor& f) {
  CheckResult res{"dual-monomial-basis"};
  const int n = h.size();
  for (const auto& [rho, d] : f.entries) {
    if (rho.is_unit()) continue;
    const int last = rho.last();
    // The one ladder term that must be present.
    ScalarSeries top = d.coefficient({rho.minus(last), Mono::unit(last)});
    if (top != ScalarSeries(rho.get(last)))
      res.fail(index_str(rho, rho.minus(last), Mono::unit(last), n) + " = " + top.str() + ", expected " +
               std::to_string(rho.get(last)));
    for (const auto& [k, c] : d.terms()) {
      if (k[1].total() != 1) continue;
      const int l = k[1].last();
      if (!supported_up_to(k[0], l, n)) continue;
      if (l == last && k[0] == rho.minus(last)) continue;
      res.fail(index_str(rho, k[0], k[1], n) + " = " + c.str() + ", expected 0");
    }
  }
  return res;
}

RelationTable dual_commutators(const FTensor& f) {
  RelationTable out;
  for (int j = 0; j < f.size; ++j)
    for (int i = 0; i < j; ++i) {
      PBWAccumulator acc;
      const Mono ej = Mono::unit(j), ei = Mono::unit(i);
      for (const auto& [rho, d] : f.entries) {
        ScalarSeries c = d.coefficient({ej, ei}) - d.coefficient({ei, ej});
        if (!c.is_zero()) acc.add(rho, c * (Rational(1) / mono_factorial(rho)));
      }
      out[{j, i}] = acc.finish();
    }
  return out;
}

std::vector<TensorElement> dual_coproducts(const ETensor& e) {
  std::vector<TensorElement> out;
  for (const auto& lin : e.linear) {
    TensorElement::Accumulator acc;
    for (const auto& [k, c] : lin.terms())
      acc.add(k, c * (Rational(1) / (mono_factorial(k[0]) * mono_factorial(k[1]))));
    out.push_back(acc.finish());
  }
  return out;
}

ScalarSeries pairing(const PBWForm& x, const PBWForm& X, int degree) {
  for (const auto& [m, c] : x.terms())
    if (m.total() > degree) throw ConfigError("pairing: coordinate term of degree " + std::to_string(m.total()) +
                                              " exceeds the window " + std::to_string(degree));
  for (const auto& [m, c] : X.terms())
    if (m.total() > degree) throw ConfigError("pairing: generator term of degree " + std::to_string(m.total()) +
                                              " exceeds the window " + std::to_string(degree));
  ScalarSeries r;
  for (const auto& [m, c] : x.terms()) {
    ScalarSeries other = X.coefficient(m);
    if (!other.is_zero()) r += c * other * mono_factorial(m);
  }
  return r;
}

CheckResult check_product_duality(const HopfPresentation& group, const FTensor& f, int max_total) {
  CheckResult res{"product-duality"};
  const int n = f.size;
  // (mu, nu) -> sum_rho F^rho_{mu nu} X^rho, read off the coproduct table.
  std::map<std::pair<std::uint64_t, std::uint64_t>, PBWAccumulator> want;
  for (const auto& [rho, d] : f.entries)
    for (const auto& [k, c] : d.terms()) want[{k[0].bits, k[1].bits}].add(rho, c);

  const std::vector<Mono> monos = monomials_up_to(n, f.degree);
  for (Mono mu : monos)
    for (Mono nu : monos) {
      if (mu.total() + nu.total() > std::min(max_total, group.working())) continue;
      PBWAccumulator got;
      Rational scale = Rational(1) / (mono_factorial(mu) * mono_factorial(nu));
      for (const auto& [rho, c] : group.engine().mono_times_mono(mu, nu).terms())
        if (rho.total() <= f.degree) got.add(rho, c * (scale * mono_factorial(rho)));
      PBWForm g = got.finish();
      auto it = want.find({mu.bits, nu.bits});
      PBWForm w = it == want.end() ? PBWForm() : it->second.finish();
      PBWForm diff = g - w;
      for (const auto& [rho, c] : diff.terms())
        res.fail("<x_mu x_nu, X^rho> - " + index_str(rho, mu, nu, n) + " = " + c.str());
    }
  return res;
}

CheckResult check_coproduct_duality(const HopfPresentation& group, const ETensor& e) {
  CheckResult res{"coproduct-duality"};
  std::vector<TensorElement> d = dual_coproducts(e);
  const GeneratorSet& g = group.generators();
  for (int l = 0; l < group.size(); ++l) {
    TensorElement diff = group.retained(group.generator_coproduct(l)) - group.retained(d[l]);
    if (!diff.is_zero()) res.fail("Delta(" + g.names()[l] + ") - E route = " + diff.str(g));
  }
  return res;
}

HopfPresentation dual_presentation(const std::string& name, GeneratorSetPtr coordinates, const ParamSpace* space,
                                   const RelationTable& relations, const std::vector<TensorElement>& coproducts) {
  std::map<std::pair<int, int>, NCPoly> rules;
  for (const auto& [key, v] : relations)
    if (!v.is_zero()) rules[key] = v.to_ncpoly();
  auto rs = std::make_shared<RewriteSystem>(std::move(coordinates), space, rules);
  return HopfPresentation(name, PresentationKind::Group, rs, coproducts);
}

std::optional<std::string> recognize_series(const PBWForm& p, const GeneratorSet& g, int degree) {
  if (p.is_zero()) return std::nullopt;
  int var = -1;
  for (const auto& [m, c] : p.terms()) {
    if (m.is_unit()) return std::nullopt;
    for (int i = 0; i < g.size(); ++i) {
      if (m.get(i) == 0) continue;
      if (m.get(i) != m.total()) return std::nullopt;
      if (var >= 0 && var != i) return std::nullopt;
      var = i;
    }
  }
  struct Pattern {
    const char* name;
    bool odd, even;
  };
  const Pattern patterns[] = {{"sinh", true, false}, {"cosh", false, true}, {"exp", true, true}};
  for (const Pattern& pat : patterns) {
    int k0 = pat.odd ? 1 : 2;
    ScalarSeries c = p.coefficient(Mono::unit(var).plus(var, k0 - 1)) * Rational::factorial(k0);
    if (c.is_zero()) continue;
    bool ok = true;
    for (int k = 1; k <= degree && ok; ++k) {
      bool on = (k % 2 == 1) ? pat.odd : pat.even;
      ScalarSeries want = on ? c * (Rational(1) / Rational::factorial(k)) : ScalarSeries();
      ok = p.coefficient(Mono::unit(var).plus(var, k - 1)) == want;
    }
    for (const auto& [m, x] : p.terms()) ok = ok && m.total() <= degree;
    if (!ok) continue;
    const std::string& x = g.names()[var];
    std::string pre = prefactor(c);
    if (std::string(pat.name) == "sinh") return pre + "sinh(" + x + ")";
    if (std::string(pat.name) == "cosh") return pre + "(cosh(" + x + ") - 1)";
    return pre + "(exp(" + x + ") - 1)";
  }
  return std::nullopt;
}

PoissonTable semiclassical_poisson(const RelationTable& relations, int size, const std::vector<int>& subset) {
  PoissonTable t;
  t.subset = subset;
  if (t.subset.empty())
    for (int i = 0; i < size; ++i) t.subset.push_back(i);
  std::vector<bool> in(size, false);
  for (int i : t.subset) in[i] = true;
  for (const auto& [key, v] : relations) {
    if (!in[key.first] || !in[key.second]) continue;
    PBWForm first = v.map_coefficients([](const ScalarSeries& c) { return c.degree_part(1); });
    t.brackets[key] = first;
    for (const auto& [m, c] : first.terms())
      for (int i = 0; i < size; ++i)
        if (m.get(i) && !in[i]) {
          t.closes.fail("bracket (" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                        ") leaves the subset through generator " + std::to_string(i));
          break;
        }
  }
  return t;
}

std::string PoissonTable::str(const GeneratorSet& g) const {
  std::ostringstream os;
  for (const auto& [key, v] : brackets)
    os << "{" << g.names()[key.second] << ", " << g.names()[key.first] << "} = " << (-v).str(g) << "\n";
  return os.str();
}

}  // namespace qdual
