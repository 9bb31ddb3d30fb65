#include "qdual/registry.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <tuple>

#include "qdual/errors.hpp"
#include "qdual/modelfile.hpp"
#include "qdual/repmat.hpp"

namespace qdual {

namespace {

const char* const kKappaTimelike = R"(model kappa-poincare-1+1-timelike
kind algebra
params w
generators P0 P1 K
coordinates a0 a1 chi
note timelike kappa-Poincare quantum algebra in the basis with right-sided exponentials
note dual side: quantum group of the exponential T-matrix in coordinates a0 a1 chi

[relations]
[K, P0] = P1
[K, P1] = (exp(4*w*P0) - 1)/(4*w) + w*P1^2

[coproducts]
P0 = P0 (x) 1 + 1 (x) P0
P1 = P1 (x) exp(2*w*P0) + 1 (x) P1
K = K (x) exp(2*w*P0) + 1 (x) K

[dual relations]
[a0, a1] = -2*w*a1
[chi, a0] = 2*w*sinh(chi)
[chi, a1] = 2*w*(cosh(chi) - 1)

[dual coproducts]
a0 = a0 (x) 1 + cosh(chi) (x) a0 + sinh(chi) (x) a1
a1 = a1 (x) 1 + cosh(chi) (x) a1 + sinh(chi) (x) a0
chi = chi (x) 1 + 1 (x) chi

[representation rho]
P0 = [[0, 0, 0], [1, 0, 0], [0, 0, 0]]
P1 = [[0, 0, 0], [0, 0, 0], [1, 0, 0]]
K = [[0, 0, 0], [0, 0, 1], [0, 1, 0]]

[dual representation sigma]
a0 = [[0, 0, 0], [0, 2*w, 0], [0, 0, 2*w]]
a1 = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
chi = [[0, 0, 1], [0, 0, 0], [0, 0, 0]]

[contraction nonrel]
P0 = 0
P1 = 1
K = 1
w = 0
)";

// Time and space exchanged: every structure is the relabelled timelike one.
const char* const kKappaSpacelike = R"(model kappa-poincare-1+1-spacelike
kind algebra
params w
generators P1 P0 K
coordinates a1 a0 chi
note spacelike kappa-Poincare quantum algebra, obtained by exchanging the roles of P0 and P1
note dual side: quantum group of the exponential T-matrix in coordinates a1 a0 chi

[relations]
[K, P1] = P0
[K, P0] = (exp(4*w*P1) - 1)/(4*w) + w*P0^2

[coproducts]
P1 = P1 (x) 1 + 1 (x) P1
P0 = P0 (x) exp(2*w*P1) + 1 (x) P0
K = K (x) exp(2*w*P1) + 1 (x) K

[dual relations]
[a1, a0] = -2*w*a0
[chi, a1] = 2*w*sinh(chi)
[chi, a0] = 2*w*(cosh(chi) - 1)

[dual coproducts]
a1 = a1 (x) 1 + cosh(chi) (x) a1 + sinh(chi) (x) a0
a0 = a0 (x) 1 + cosh(chi) (x) a0 + sinh(chi) (x) a1
chi = chi (x) 1 + 1 (x) chi

[representation rho]
P1 = [[0, 0, 0], [1, 0, 0], [0, 0, 0]]
P0 = [[0, 0, 0], [0, 0, 0], [1, 0, 0]]
K = [[0, 0, 0], [0, 0, 1], [0, 1, 0]]

[dual representation sigma]
a1 = [[0, 0, 0], [0, 2*w, 0], [0, 0, 2*w]]
a0 = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
chi = [[0, 0, 1], [0, 0, 0], [0, 0, 0]]

[contraction nonrel]
P0 = 0
P1 = 1
K = 1
w = 1
)";

const char* const kExtGalilei = R"(model ext-galilei-1+1
kind algebra
params alpha
generators M P0 P1 K
coordinates th a0 a1 chi
note quantum centrally extended Galilei algebra
note dual side: quantum Galilei group; coordinates th a0 a1 chi stand for theta b a v

[relations]
[K, M] = -(alpha/2)*M^2*exp(alpha*P1)
[K, P0] = (exp(alpha*P1) - 1)/alpha
[K, P1] = M*exp(alpha*P1)

[coproducts]
M = M (x) 1 + exp(-alpha*P1) (x) M
P0 = P0 (x) 1 + 1 (x) P0
P1 = P1 (x) 1 + 1 (x) P1
K = K (x) exp(alpha*P1) + 1 (x) K

[dual relations]
[th, a1] = alpha*th
[th, chi] = -(1/2)*alpha*chi^2
[a1, chi] = -alpha*chi

[dual coproducts]
th = th (x) 1 + 1 (x) th + chi (x) a1 + (1/2)*chi^2 (x) a0
a0 = a0 (x) 1 + 1 (x) a0
a1 = a1 (x) 1 + 1 (x) a1 + chi (x) a0
chi = chi (x) 1 + 1 (x) chi
)";

const char* const kExtPoincare = R"(model ext-poincare-1+1
kind algebra
params alpha
generators M P0 P1 K
coordinates th a0 a1 chi
note quantum centrally extended Poincare algebra in the basis adapted to the non-relativistic limit
note dual side: quantum Poincare group of the exponential T-matrix

[relations]
[K, M] = -((cosh(alpha*P1) - 1)/alpha + (alpha/2)*(M + P0)^2*exp(alpha*P1))
[K, P0] = (exp(alpha*P1) - 1)/alpha
[K, P1] = (M + P0)*exp(alpha*P1)

[coproducts]
M = M (x) 1 + exp(-alpha*P1) (x) M + (exp(-alpha*P1) - 1) (x) P0
P0 = P0 (x) 1 + 1 (x) P0
P1 = P1 (x) 1 + 1 (x) P1
K = K (x) exp(alpha*P1) + 1 (x) K

[dual relations]
[a0, a1] = alpha*th
[th, a1] = alpha*th
[chi, th] = alpha*(cosh(chi) - 1)
[chi, a0] = alpha*(cosh(chi) - 1)
[chi, a1] = alpha*sinh(chi)

[dual coproducts]
th = th (x) 1 + 1 (x) th + (cosh(chi) - 1) (x) a0 + sinh(chi) (x) a1
a0 = a0 (x) 1 + cosh(chi) (x) a0 + sinh(chi) (x) a1
a1 = a1 (x) 1 + cosh(chi) (x) a1 + sinh(chi) (x) a0
chi = chi (x) 1 + 1 (x) chi

[representation rho]
M = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 0, 0]]
P0 = [[0, 0, 0, -1/2], [0, 0, 0, -1/2], [0, 0, 0, 1], [0, 0, 0, 0]]
P1 = [[0, 0, 0, 1/2], [0, 0, 0, -1/2], [0, 0, 0, 0], [0, 0, 0, 0]]
K = [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]

[contraction nonrel]
M = 2
P0 = 0
P1 = 1
K = 1
alpha = 1
)";

// Basis with the central generator split off: P0 -> M + P0, th -> th - a0.
const char* const kExtPoincareNW = R"(model ext-poincare-1+1-nw
kind algebra
params alpha
generators M P0 P1 K
coordinates th a0 a1 chi
note quantum centrally extended Poincare algebra in the direct-sum basis (P0 here is M + P0 of ext-poincare-1+1)
note dual side: central extension of the spacelike kappa-Poincare group, th here is th - a0 of ext-poincare-1+1

[relations]
[K, M] = -((cosh(alpha*P1) - 1)/alpha + (alpha/2)*P0^2*exp(alpha*P1))
[K, P0] = sinh(alpha*P1)/alpha - (alpha/2)*P0^2*exp(alpha*P1)
[K, P1] = P0*exp(alpha*P1)

[coproducts]
M = M (x) 1 + 1 (x) M + (exp(-alpha*P1) - 1) (x) P0
P0 = P0 (x) 1 + exp(-alpha*P1) (x) P0
P1 = P1 (x) 1 + 1 (x) P1
K = K (x) exp(alpha*P1) + 1 (x) K

[dual relations]
[a0, a1] = alpha*(th + a0)
[chi, a0] = alpha*(cosh(chi) - 1)
[chi, a1] = alpha*sinh(chi)

[dual coproducts]
th = th (x) 1 + 1 (x) th
a0 = a0 (x) 1 + cosh(chi) (x) a0 + sinh(chi) (x) a1
a1 = a1 (x) 1 + cosh(chi) (x) a1 + sinh(chi) (x) a0
chi = chi (x) 1 + 1 (x) chi

[representation rho]
M = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 0, 0]]
P0 = [[0, 0, 0, -1/2], [0, 0, 0, -1/2], [0, 0, 0, 0], [0, 0, 0, 0]]
P1 = [[0, 0, 0, 1/2], [0, 0, 0, -1/2], [0, 0, 0, 0], [0, 0, 0, 0]]
K = [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
)";

const std::map<std::string, const char*>& texts() {
  static const std::map<std::string, const char*> t{
      {"kappa-poincare-1+1-timelike", kKappaTimelike}, {"kappa-poincare-1+1-spacelike", kKappaSpacelike},
      {"ext-galilei-1+1", kExtGalilei},                {"ext-poincare-1+1", kExtPoincare},
      {"ext-poincare-1+1-nw", kExtPoincareNW},
  };
  return t;
}

void prefix_checks(Report& r, const std::string& prefix) {
  for (auto& c : r.checks) c.name = prefix + c.name;
}

}  // namespace

const std::vector<std::string>& catalog() {
  static const std::vector<std::string> names{"kappa-poincare-1+1-timelike", "kappa-poincare-1+1-spacelike",
                                              "ext-galilei-1+1", "ext-poincare-1+1", "ext-poincare-1+1-nw"};
  return names;
}

const std::string& catalog_text(const std::string& name) {
  static std::map<std::string, std::string> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = texts().find(name);
  if (it == texts().end()) throw UnknownModel("unknown model '" + name + "'");
  return cache.try_emplace(name, it->second).first->second;
}

Report verify_model(const Model& m) {
  Report out;
  Report a = m.algebra->verify();
  prefix_checks(a, "algebra ");
  out.merge(a);
  if (m.group) {
    Report g = m.group->verify();
    prefix_checks(g, "group ");
    out.merge(g);
  }
  for (const auto& r : m.representations) {
    const HopfPresentation* side = r.on_group ? m.group.get() : m.algebra.get();
    out.add(check_representation(*side, r));
  }
  if (m.algebra->kind() == PresentationKind::Algebra) {
    LieAlgebra g = m.algebra->classical_bracket();
    CheckResult jac = g.check_jacobi();
    jac.name = "classical jacobi";
    out.add(jac);
    Cocommutator d = first_order_cocommutator(*m.algebra);
    CheckResult coc = check_cocycle(g, d);
    coc.name = "bialgebra cocycle";
    out.add(coc);
    CheckResult cj = check_cojacobi(d).check;
    cj.name = "bialgebra co-jacobi";
    out.add(cj);
  }
  return out;
}

std::shared_ptr<const Model> load_model(const std::string& name, const Truncation& t) {
  using Key = std::tuple<std::string, int, int, int>;
  static std::map<Key, std::shared_ptr<const Model>> cache;
  static std::mutex mu;
  const std::string& text = catalog_text(name);
  Key key{name, t.order, t.degree, t.cushion};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto model = std::make_shared<const Model>(instantiate(parse_model_text(text), t));
  Report r = verify_model(*model);
  if (!r.pass()) throw ConfigError(name + " failed verification at load:\n" + r.summary());
  std::lock_guard<std::mutex> lock(mu);
  return cache.try_emplace(key, model).first->second;
}

std::shared_ptr<const Model> resolve_model(const std::string& name_or_path, const Truncation& t) {
  if (texts().count(name_or_path)) return load_model(name_or_path, t);
  if (std::filesystem::exists(name_or_path)) return std::make_shared<const Model>(load_model_file(name_or_path, t));
  throw UnknownModel("'" + name_or_path + "' is neither a catalog model nor a readable file");
}

// ---------------------------------------------------------------- basis change

namespace {

/// Old PBW element rewritten through X_k = sum_l b(k, l) Y_l with the new engine.
class Converter {
 public:
  Converter(const RationalMatrix& b, PbwAlgebra& target) : b_(b), target_(target) {}

  PBWForm operator()(const PBWForm& old) {
    PBWAccumulator acc;
    for (const auto& [m, c] : old.terms()) acc.add(mono(m), c);
    return acc.finish();
  }

  const PBWForm& mono(Mono m) {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    PBWForm r;
    if (m.is_unit()) {
      r = PBWForm::constant(ScalarSeries(1));
    } else {
      // Peel the first letter so the product keeps the PBW order of the old word.
      int first = 0;
      while (m.get(first) == 0) ++first;
      r = target_.multiply(linear(first), mono(m.minus(first)));
    }
    return cache_.emplace(m, std::move(r)).first->second;
  }

 private:
  PBWForm linear(int k) const {
    std::vector<PBWForm::Term> terms;
    for (int l = 0; l < b_.cols(); ++l)
      if (b_.at(k, l).sign() != 0) terms.emplace_back(Mono::unit(l), ScalarSeries(b_.at(k, l)));
    return PBWForm::from_unsorted(std::move(terms));
  }

  const RationalMatrix& b_;
  PbwAlgebra& target_;
  std::unordered_map<Mono, PBWForm, MonoHash> cache_;
};

PBWForm old_commutator(const HopfPresentation& h, int a, int b) {
  if (a == b) return {};
  if (a > b) return h.engine().correction(a, b);
  return -h.engine().correction(b, a);
}

std::shared_ptr<const HopfPresentation> transform_side(const HopfPresentation& h, const RationalMatrix& a,
                                                       const RationalMatrix& b, const std::string& name) {
  const int n = h.size();
  GeneratorSetPtr gens = h.generators_ptr();
  // Brackets of the new generators, expressed in the old algebra.
  std::map<std::pair<int, int>, PBWForm> targets;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      PBWAccumulator acc;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          Rational c = a.at(j, p) * a.at(i, q);
          if (c.sign() == 0) continue;
          acc.add(old_commutator(h, p, q), ScalarSeries(c));
        }
      targets[{j, i}] = acc.finish();
    }

  // Fixed-point iteration: each pass fixes one more deformation order.
  std::map<std::pair<int, int>, NCPoly> rules;
  std::map<std::pair<int, int>, PBWForm> previous;
  std::shared_ptr<RewriteSystem> rs;
  for (int pass = 0; pass <= h.order() + 2; ++pass) {
    rs = std::make_shared<RewriteSystem>(gens, h.space(), rules);
    PbwAlgebra engine(rs);
    Converter convert(b, engine);
    std::map<std::pair<int, int>, PBWForm> current;
    for (const auto& [key, old] : targets) current[key] = convert(old);
    if (current == previous) break;
    rules.clear();
    for (const auto& [key, v] : current)
      if (!v.is_zero()) rules[key] = v.to_ncpoly();
    previous = std::move(current);
  }
  rs = std::make_shared<RewriteSystem>(gens, h.space(), rules);
  auto engine = std::make_shared<PbwAlgebra>(rs);
  Converter convert(b, *engine);
  std::vector<TensorElement> cops(n);
  std::vector<ScalarSeries> counit(n);
  for (int i = 0; i < n; ++i) {
    TensorElement::Accumulator acc;
    for (int j = 0; j < n; ++j) {
      if (a.at(i, j).sign() == 0) continue;
      for (const auto& [k, c] : h.generator_coproduct(j).terms())
        acc.add(tensor_of(convert.mono(k[0]), convert.mono(k[1])), c * a.at(i, j));
      counit[i] += h.counit_values()[j] * a.at(i, j);
    }
    cops[i] = acc.finish();
  }
  return std::make_shared<HopfPresentation>(name, h.kind(), rs, std::move(cops), std::move(counit));
}

RationalMatrix transpose(const RationalMatrix& m) {
  RationalMatrix t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return t;
}

Representation transform_rep(const Representation& r, const RationalMatrix& a) {
  Representation out = r;
  for (int i = 0; i < a.rows(); ++i) {
    SeriesMatrix acc = zero_matrix(r.dim);
    for (int j = 0; j < a.cols(); ++j)
      if (a.at(i, j).sign() != 0) acc = matrix_add(acc, matrix_scaled(r.matrices[j], ScalarSeries(a.at(i, j))));
    out.matrices[i] = acc;
  }
  return out;
}

}  // namespace

Model change_basis(const Model& m, const RationalMatrix& a, const std::string& new_name) {
  const int n = m.algebra->size();
  if (a.rows() != n || a.cols() != n) throw ConfigError("basis change must be " + std::to_string(n) + "x" + std::to_string(n));
  auto b = inverse(a);
  if (!b) throw NonInvertible("basis change matrix is singular");
  Model out;
  out.name = new_name;
  out.truncation = m.truncation;
  out.params = m.params;
  out.notes = m.notes;
  out.notes.push_back("obtained from " + m.name + " by a linear change of generators");
  out.algebra = transform_side(*m.algebra, a, *b, new_name);
  // Dual coordinates: x~ = (A^T)^{-1} x, so x = A^T x~.
  RationalMatrix c = transpose(*b);
  RationalMatrix c_inv = transpose(a);
  if (m.group) out.group = transform_side(*m.group, c, c_inv, new_name + "*");
  for (const auto& r : m.representations) out.representations.push_back(transform_rep(r, r.on_group ? c : a));
  return out;
}

CheckResult compare_presentations(const HopfPresentation& a, const HopfPresentation& b) {
  CheckResult res{"compare " + a.name() + " / " + b.name()};
  const GeneratorSet& g = a.generators();
  if (g.names() != b.generators().names()) {
    res.fail("generator names differ");
    return res;
  }
  for (int j = 0; j < a.size(); ++j)
    for (int i = 0; i < j; ++i) {
      PBWForm d = (a.engine().correction(j, i) - b.engine().correction(j, i)).truncated(a.degree());
      if (!d.is_zero()) res.fail("[" + g.names()[j] + "," + g.names()[i] + "] differs by " + d.str(g));
    }
  for (int i = 0; i < a.size(); ++i) {
    TensorElement d = (a.generator_coproduct(i) - b.generator_coproduct(i)).leg_truncated(a.degree());
    if (!d.is_zero()) res.fail("Delta(" + g.names()[i] + ") differs by " + d.str(g));
    if (a.counit_values()[i] != b.counit_values()[i]) res.fail("eps(" + g.names()[i] + ") differs");
  }
  return res;
}

}  // namespace qdual
