#include "qdual/hopf.hpp"

#include "qdual/errors.hpp"

namespace qdual {

namespace {

ScalarSeries order0(const ScalarSeries& c) { return c.degree_part(0); }

TensorElement unit_tensor() { return TensorElement::simple({Mono{}, Mono{}}); }

}  // namespace

HopfPresentation::HopfPresentation(std::string name, PresentationKind kind, std::shared_ptr<const RewriteSystem> rules,
                                   std::vector<TensorElement> coproducts, std::vector<ScalarSeries> counit)
    : name_(std::move(name)),
      kind_(kind),
      rules_(std::move(rules)),
      engine_(std::make_shared<PbwAlgebra>(rules_)),
      coproducts_(std::move(coproducts)),
      counit_(std::move(counit)),
      cache_(std::make_shared<std::unordered_map<Mono, TensorElement, MonoHash>>()) {
  if (static_cast<int>(coproducts_.size()) != size()) throw ConfigError(name_ + ": one coproduct per generator required");
  if (counit_.empty()) counit_.assign(size(), ScalarSeries());
  if (static_cast<int>(counit_.size()) != size()) throw ConfigError(name_ + ": one counit value per generator required");
  for (auto& c : coproducts_) c = c.leg_truncated(working());
}

HopfPresentation HopfPresentation::build(std::string name, PresentationKind kind, GeneratorSetPtr gens,
                                         const ParamSpace* space,
                                         const std::map<std::pair<int, int>, NCPoly>& relations,
                                         const std::vector<std::vector<SimpleTensor>>& coproducts,
                                         std::vector<ScalarSeries> counit) {
  auto rules = std::make_shared<RewriteSystem>(gens, space, relations);
  PbwAlgebra alg(rules);
  std::vector<TensorElement> cops;
  for (const auto& sum : coproducts) {
    TensorElement t;
    for (const auto& [l, r] : sum) t += tensor_of(alg.normal_order(l), alg.normal_order(r));
    cops.push_back(t);
  }
  return HopfPresentation(std::move(name), kind, rules, std::move(cops), std::move(counit));
}

const TensorElement& HopfPresentation::coproduct(Mono m) const {
  auto it = cache_->find(m);
  if (it != cache_->end()) return it->second;
  TensorElement r;
  if (m.is_unit()) {
    r = unit_tensor();
  } else if (m.total() == 1) {
    r = coproducts_[m.last()];
  } else {
    const int l = m.last();
    const TensorElement& prev = coproduct(m.minus(l));
    r = tensor_multiply(*engine_, prev, coproducts_[l]);
  }
  return cache_->emplace(m, std::move(r)).first->second;
}

TensorElement HopfPresentation::coproduct(const PBWForm& p) const {
  TensorElement::Accumulator acc;
  for (const auto& [m, c] : p.terms()) acc.add(coproduct(m), c);
  return acc.finish();
}

TensorElement HopfPresentation::coproduct_direct(Mono m) const {
  std::vector<int> letters;
  for (int i = 0; i < size(); ++i)
    for (int k = 0; k < m.get(i); ++k) letters.push_back(i);
  TensorElement r = unit_tensor();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) r = tensor_multiply(*engine_, coproducts_[*it], r);
  return r;
}

ScalarSeries HopfPresentation::counit(Mono m) const {
  ScalarSeries r(1);
  for (int i = 0; i < size(); ++i)
    for (int k = 0; k < m.get(i); ++k) r *= counit_[i];
  return r;
}

ScalarSeries HopfPresentation::counit(const PBWForm& p) const {
  ScalarSeries r;
  for (const auto& [m, c] : p.terms()) r += c * counit(m);
  return r;
}

Tensor3 HopfPresentation::coproduct_left(const TensorElement& t) const {
  Tensor3::Accumulator acc;
  for (const auto& [k, c] : t.terms())
    for (const auto& [k2, c2] : coproduct(k[0]).terms()) acc.add({k2[0], k2[1], k[1]}, c * c2);
  return acc.finish();
}

Tensor3 HopfPresentation::coproduct_right(const TensorElement& t) const {
  Tensor3::Accumulator acc;
  for (const auto& [k, c] : t.terms())
    for (const auto& [k2, c2] : coproduct(k[1]).terms()) acc.add({k[0], k2[0], k2[1]}, c * c2);
  return acc.finish();
}

PBWForm HopfPresentation::multiply_legs(const TensorElement& t) const {
  PBWAccumulator acc;
  for (const auto& [k, c] : t.terms()) acc.add(engine_->mono_times_mono(k[0], k[1]), c);
  return acc.finish();
}

TensorElement HopfPresentation::retained(const TensorElement& t) const {
  return t.leg_truncated(degree()).total_truncated(working());
}

CheckResult HopfPresentation::check_homomorphism() const {
  CheckResult res{"homomorphism"};
  const GeneratorSet& g = generators();
  for (int j = 0; j < size(); ++j)
    for (int i = 0; i < j; ++i) {
      TensorElement lhs = retained(coproduct(engine_->correction(j, i)));
      const TensorElement& dj = coproducts_[j];
      const TensorElement& di = coproducts_[i];
      TensorElement rhs = retained(tensor_multiply(*engine_, dj, di) - tensor_multiply(*engine_, di, dj));
      if (lhs != rhs)
        res.fail("Delta([" + g.names()[j] + "," + g.names()[i] + "]) - [Delta " + g.names()[j] + ", Delta " +
                 g.names()[i] + "] = " + (lhs - rhs).str(g));
    }
  return res;
}

CheckResult HopfPresentation::check_coassociativity(int max_monomial_degree) const {
  CheckResult res{"coassociativity"};
  std::vector<Mono> monos{Mono{}};
  for (int d = 1; d <= max_monomial_degree; ++d) {
    std::vector<Mono> next;
    for (Mono m : monos)
      for (int i = std::max(0, m.last()); i < size(); ++i) next.push_back(m.plus(i));
    for (Mono m : next) {
      const TensorElement& t = coproduct(m);
      Tensor3 l = coproduct_left(t).leg_truncated(degree()).total_truncated(working());
      Tensor3 r = coproduct_right(t).leg_truncated(degree()).total_truncated(working());
      if (l != r) res.fail("(Delta x id - id x Delta) Delta(" + generators().mono_str(m) + ") = " + (l - r).str(generators()));
    }
    monos = next;
  }
  return res;
}

CheckResult HopfPresentation::check_counit() const {
  CheckResult res{"counit"};
  const GeneratorSet& g = generators();
  for (int i = 0; i < size(); ++i) {
    PBWAccumulator left, right;
    for (const auto& [k, c] : coproducts_[i].terms()) {
      ScalarSeries el = counit(k[0]), er = counit(k[1]);
      if (!el.is_zero()) left.add(k[1], c * el);
      if (!er.is_zero()) right.add(k[0], c * er);
    }
    PBWForm x = PBWForm::monomial(Mono::unit(i));
    PBWForm dl = (left.finish() - x).truncated(degree());
    PBWForm dr = (right.finish() - x).truncated(degree());
    if (!dl.is_zero()) res.fail("(eps x id)Delta(" + g.names()[i] + ") - " + g.names()[i] + " = " + dl.str(g));
    if (!dr.is_zero()) res.fail("(id x eps)Delta(" + g.names()[i] + ") - " + g.names()[i] + " = " + dr.str(g));
  }
  for (int j = 0; j < size(); ++j)
    for (int i = 0; i < j; ++i) {
      ScalarSeries e = counit(engine_->correction(j, i));
      if (!e.is_zero()) res.fail("eps([" + g.names()[j] + "," + g.names()[i] + "]) = " + e.str());
    }
  return res;
}

CheckResult HopfPresentation::check_primitive_order0() const {
  CheckResult res{"primitive-order0"};
  if (kind_ != PresentationKind::Algebra) return res;
  for (int i = 0; i < size(); ++i) {
    TensorElement z = coproducts_[i].map_coefficients(order0);
    TensorElement prim = TensorElement::simple({Mono::unit(i), Mono{}}) + TensorElement::simple({Mono{}, Mono::unit(i)});
    if (z != prim) res.fail("Delta(" + generators().names()[i] + ") at order 0 = " + z.str(generators()));
  }
  return res;
}

Report HopfPresentation::verify() const {
  Report r;
  r.add(check_homomorphism());
  r.add(check_coassociativity());
  r.add(check_counit());
  if (kind_ == PresentationKind::Algebra) r.add(check_primitive_order0());
  return r;
}

LieAlgebra HopfPresentation::classical_bracket() const {
  LieAlgebra g(generators().names(), space());
  for (int j = 0; j < size(); ++j)
    for (int i = 0; i < j; ++i) {
      std::vector<ScalarSeries> v(size());
      for (int k = 0; k < size(); ++k) v[k] = order0(engine_->correction(j, i).coefficient(Mono::unit(k)));
      g.set_bracket(j, i, v);
    }
  return g;
}

// ---------------------------------------------------------------- antipode

PBWForm apply_antipode(const HopfPresentation& h, const std::vector<PBWForm>& s, const PBWForm& x) {
  PbwAlgebra& alg = h.engine();
  PBWAccumulator acc;
  for (const auto& [m, c] : x.terms()) {
    PBWForm prod = PBWForm::constant(ScalarSeries(1));
    // S(X_0^{a_0} ... X_n^{a_n}) = S(X_n)^{a_n} ... S(X_0)^{a_0}
    for (int i = h.size() - 1; i >= 0; --i)
      for (int k = 0; k < m.get(i); ++k) prod = alg.multiply(prod, s[i]);
    acc.add(prod, c);
  }
  return acc.finish();
}

Antipode derive_antipode(const HopfPresentation& h) {
  const int n = h.size();
  PbwAlgebra& alg = h.engine();
  const GeneratorSet& gens = h.generators();
  std::vector<PBWForm> g(n);
  std::vector<TensorElement> rest(n);
  for (int i = 0; i < n; ++i) {
    PBWAccumulator gacc;
    TensorElement::Accumulator racc;
    for (const auto& [k, c] : h.generator_coproduct(i).terms()) {
      if (k[0] == Mono::unit(i))
        gacc.add(k[1], c);
      else
        racc.add(k, c);
    }
    g[i] = gacc.finish();
    rest[i] = racc.finish();
    PBWForm g0 = g[i].map_coefficients(order0);
    TensorElement r0 = rest[i].map_coefficients(order0);
    if (g0 != PBWForm::constant(ScalarSeries(1)) || r0 != TensorElement::simple({Mono{}, Mono::unit(i)}))
      throw NotPointed(h.name() + ": Delta(" + gens.names()[i] + ") is not X(x)g + 1(x)X at order zero");
  }
  std::vector<PBWForm> ginv(n);
  for (int i = 0; i < n; ++i) {
    PBWForm minus_h = PBWForm::constant(ScalarSeries(1)) - g[i];
    PBWForm power = PBWForm::constant(ScalarSeries(1));
    PBWForm sum = power;
    for (int k = 1; k <= h.order(); ++k) {
      power = alg.multiply(power, minus_h);
      if (power.is_zero()) break;
      sum += power;
    }
    ginv[i] = sum;
  }
  std::vector<PBWForm> s(n);
  for (int i = 0; i < n; ++i) s[i] = PBWForm::monomial(Mono::unit(i), ScalarSeries(-1));
  for (int round = 0; round <= h.order(); ++round) {
    std::vector<PBWForm> next(n);
    for (int i = 0; i < n; ++i) {
      PBWForm acc = PBWForm::constant(h.counit_values()[i]);
      for (const auto& [k, c] : rest[i].terms()) {
        PBWForm sa = apply_antipode(h, s, PBWForm::monomial(k[0], c));
        acc -= alg.multiply(sa, PBWForm::monomial(k[1]));
      }
      next[i] = alg.multiply(acc, ginv[i]);
    }
    s = std::move(next);
  }
  Antipode out;
  out.on_generators = s;
  out.left_identity.name = "antipode-left";
  out.right_identity.name = "antipode-right";
  for (int i = 0; i < n; ++i) {
    PBWAccumulator l, r;
    for (const auto& [k, c] : h.generator_coproduct(i).terms()) {
      l.add(alg.multiply(apply_antipode(h, s, PBWForm::monomial(k[0])), PBWForm::monomial(k[1])), c);
      r.add(alg.multiply(PBWForm::monomial(k[0]), apply_antipode(h, s, PBWForm::monomial(k[1]))), c);
    }
    PBWForm e = PBWForm::constant(h.counit_values()[i]);
    PBWForm dl = (l.finish() - e).truncated(h.degree());
    PBWForm dr = (r.finish() - e).truncated(h.degree());
    if (!dl.is_zero()) out.left_identity.fail("m(S x id)Delta(" + gens.names()[i] + ") - eps = " + dl.str(gens));
    if (!dr.is_zero()) out.right_identity.fail("m(id x S)Delta(" + gens.names()[i] + ") - eps = " + dr.str(gens));
  }
  return out;
}

Cocommutator first_order_cocommutator(const HopfPresentation& h) {
  Cocommutator d(h.generators().names(), h.space());
  for (int i = 0; i < h.size(); ++i) {
    TensorElement first = h.generator_coproduct(i).map_coefficients([](const ScalarSeries& c) { return c.degree_part(1); });
    TensorElement skew = first - flip(first);
    for (const auto& [k, c] : skew.terms()) {
      if (k[0].total() != 1 || k[1].total() != 1)
        throw ConfigError(h.name() + ": first-order skew part of Delta(" + h.generators().names()[i] +
                          ") leaves g(x)g");
      d.set(i, k[0].last(), k[1].last(), c * Rational(1, 2));
    }
  }
  return d;
}

}  // namespace qdual
