#include "qdual/repmat.hpp"

#include <map>

#include "qdual/errors.hpp"
#include "qdual/linalg.hpp"

namespace qdual {

SeriesMatrix zero_matrix(int n) { return SeriesMatrix(n, std::vector<ScalarSeries>(n)); }

SeriesMatrix identity_matrix(int n) {
  SeriesMatrix m = zero_matrix(n);
  for (int i = 0; i < n; ++i) m[i][i] = ScalarSeries(1);
  return m;
}

SeriesMatrix matrix_multiply(const SeriesMatrix& a, const SeriesMatrix& b) {
  const int n = static_cast<int>(a.size());
  SeriesMatrix c = zero_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

SeriesMatrix matrix_add(const SeriesMatrix& a, const SeriesMatrix& b) {
  SeriesMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] += b[i][j];
  return c;
}

SeriesMatrix matrix_scaled(const SeriesMatrix& a, const ScalarSeries& s) {
  SeriesMatrix c = a;
  for (auto& row : c)
    for (auto& x : row) x = x * s;
  return c;
}

namespace {

bool is_zero_matrix(const SeriesMatrix& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

std::string matrix_str(const SeriesMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.size(); ++j) s += (j ? ", " : "") + m[i][j].str();
    s += "]";
  }
  return s + "]";
}

}  // namespace

SeriesMatrix represent(const Representation& r, const PBWForm& p) {
  SeriesMatrix out = zero_matrix(r.dim);
  for (const auto& [m, c] : p.terms()) {
    SeriesMatrix prod = identity_matrix(r.dim);
    for (int g = 0; g < static_cast<int>(r.matrices.size()); ++g)
      for (int k = 0; k < m.get(g); ++k) prod = matrix_multiply(prod, r.matrices[g]);
    out = matrix_add(out, matrix_scaled(prod, c));
  }
  return out;
}

CheckResult check_representation(const HopfPresentation& h, const Representation& r) {
  CheckResult res{"representation " + r.name};
  const auto& names = h.generators().names();
  for (int j = 0; j < h.size(); ++j)
    for (int i = 0; i < j; ++i) {
      SeriesMatrix lhs = matrix_add(matrix_multiply(r.matrices[j], r.matrices[i]),
                                    matrix_scaled(matrix_multiply(r.matrices[i], r.matrices[j]), ScalarSeries(-1)));
      SeriesMatrix rhs = represent(r, h.engine().correction(j, i));
      SeriesMatrix diff = matrix_add(lhs, matrix_scaled(rhs, ScalarSeries(-1)));
      if (!is_zero_matrix(diff))
        res.fail("rho([" + names[j] + "," + names[i] + "]) mismatch: " + matrix_str(diff));
    }
  return res;
}

std::string AlgebraMatrix::str(const GeneratorSet& g) const {
  std::string s;
  for (int i = 0; i < dim; ++i) {
    s += "[";
    for (int j = 0; j < dim; ++j) s += (j ? ", " : "") + entries[i][j].str(g);
    s += "]\n";
  }
  return s;
}

AlgebraMatrix algebra_matrix_multiply(const HopfPresentation& h, const AlgebraMatrix& a, const AlgebraMatrix& b) {
  AlgebraMatrix c{a.dim, std::vector<std::vector<PBWForm>>(a.dim, std::vector<PBWForm>(a.dim))};
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      PBWAccumulator acc;
      for (int k = 0; k < a.dim; ++k) {
        if (a.entries[i][k].is_zero() || b.entries[k][j].is_zero()) continue;
        acc.add(h.engine().multiply(a.entries[i][k], b.entries[k][j]));
      }
      c.entries[i][j] = acc.finish().truncated(h.degree());
    }
  return c;
}

AlgebraMatrix formal_exp(const HopfPresentation& entries, int g, const SeriesMatrix& a) {
  const int n = static_cast<int>(a.size());
  AlgebraMatrix out{n, std::vector<std::vector<PBWForm>>(n, std::vector<PBWForm>(n))};
  SeriesMatrix power = identity_matrix(n);
  Rational inv_fact(1);
  for (int k = 0; k <= entries.degree(); ++k) {
    if (k > 0) {
      power = matrix_multiply(power, a);
      inv_fact = inv_fact / Rational(k);
    }
    if (is_zero_matrix(power)) break;
    Mono m = Mono{}.plus(g, k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!power[i][j].is_zero()) out.entries[i][j] += PBWForm::monomial(m, power[i][j] * inv_fact);
  }
  return out;
}

AlgebraMatrix realize_T(const Model& m, const Representation& r) {
  const HopfPresentation* side = r.on_group ? m.algebra.get() : m.group.get();
  if (!side) throw ConfigError(m.name + ": realizing " + r.name + " needs the dual presentation");
  AlgebraMatrix t{r.dim, std::vector<std::vector<PBWForm>>(r.dim, std::vector<PBWForm>(r.dim))};
  for (int i = 0; i < r.dim; ++i) t.entries[i][i] = PBWForm::constant(ScalarSeries(1));
  for (int g = 0; g < side->size(); ++g) t = algebra_matrix_multiply(*side, t, formal_exp(*side, g, r.matrices[g]));
  return t;
}

namespace {

TensorElement one_tensor() { return TensorElement::simple({Mono{}, Mono{}}); }

/// Delta of a normal-ordered element from the generator images, as an algebra map.
TensorElement extend(const HopfPresentation& h, const std::vector<TensorElement>& images, const PBWForm& p, int degree) {
  TensorElement::Accumulator acc;
  std::map<std::uint64_t, TensorElement> cache;
  for (const auto& [m, c] : p.terms()) {
    TensorElement prod = one_tensor();
    for (int g = 0; g < h.size(); ++g)
      for (int k = 0; k < m.get(g); ++k)
        prod = tensor_multiply(h.engine(), prod, images[g]).total_truncated(degree);
    acc.add(prod, c);
  }
  return acc.finish();
}

ScalarSeries divide_by_monomial(const ScalarSeries& x, const ScalarSeries& s) {
  const auto& [key, coef] = s.terms().front();
  ScalarSeries r = x * (Rational(1) / coef);
  for (int i = 0; s.space() && i < s.space()->size(); ++i)
    for (int k = 0; k < key.exponent(i); ++k) r = r.divide_by_param(s.space()->names()[i]);
  return r;
}

}  // namespace

CoproductReadout coproduct_readout(const HopfPresentation& h, const AlgebraMatrix& t) {
  const int n = t.dim;
  const int gens = h.size();
  const int degree = h.degree();
  const GeneratorSet& g = h.generators();

  // Product of two copies with entries in separate legs.
  std::vector<TensorElement> product(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      TensorElement sum;
      for (int j = 0; j < n; ++j) sum += tensor_of(t.at(i, j), t.at(j, k));
      product[i * n + k] = sum.total_truncated(degree);
    }

  // Linear parts of the entries.
  std::vector<std::vector<ScalarSeries>> linear(static_cast<std::size_t>(n * n), std::vector<ScalarSeries>(gens));
  for (int e = 0; e < n * n; ++e)
    for (int x = 0; x < gens; ++x) linear[e][x] = t.at(e / n, e % n).coefficient(Mono::unit(x));

  RationalMatrix a(gens, n * n);
  for (int e = 0; e < n * n; ++e) {
    bool constant = true;
    for (int x = 0; x < gens; ++x) constant = constant && linear[e][x].is_constant();
    if (!constant) continue;
    for (int x = 0; x < gens; ++x) a.at(x, e) = linear[e][x].constant_term();
  }

  struct Pivot {
    std::vector<ScalarSeries> weights;  // per entry
    ScalarSeries scale;                 // linear part is scale * x
  };
  std::vector<Pivot> pivots(gens);
  int lost_order = 0;
  for (int x = 0; x < gens; ++x) {
    std::vector<ScalarSeries> b(gens);
    b[x] = ScalarSeries(1);
    LinearSolution sol = solve(a, b);
    if (sol.consistent) {
      pivots[x] = {sol.x, ScalarSeries(1)};
      continue;
    }
    // Fall back to a single entry whose linear part is a parameter monomial times x.
    int best = -1;
    int best_degree = 0;
    for (int e = 0; e < n * n; ++e) {
      bool only = !linear[e][x].is_zero() && linear[e][x].terms().size() == 1;
      for (int y = 0; y < gens && only; ++y) only = y == x || linear[e][y].is_zero();
      if (!only) continue;
      int d = linear[e][x].max_degree();
      if (best < 0 || d < best_degree) {
        best = e;
        best_degree = d;
      }
    }
    if (best < 0) throw PatternMismatch("generator " + g.names()[x] + " cannot be isolated from the matrix entries");
    std::vector<ScalarSeries> w(static_cast<std::size_t>(n * n));
    w[best] = ScalarSeries(1);
    pivots[x] = {w, linear[best][x]};
    lost_order = std::max(lost_order, best_degree);
  }

  // Combined entries C_x = c + scale * x + Q_x and their known coproducts.
  std::vector<PBWForm> nonlinear(gens);
  std::vector<TensorElement> known(gens);
  for (int x = 0; x < gens; ++x) {
    PBWAccumulator acc;
    TensorElement::Accumulator tacc;
    for (int e = 0; e < n * n; ++e) {
      if (pivots[x].weights[e].is_zero()) continue;
      acc.add(t.at(e / n, e % n), pivots[x].weights[e]);
      tacc.add(product[e], pivots[x].weights[e]);
    }
    PBWForm c = acc.finish();
    PBWAccumulator q;
    for (const auto& [m, coef] : c.terms())
      if (m.total() >= 2) q.add(m, coef);
    nonlinear[x] = q.finish();
    TensorElement k = tacc.finish();
    ScalarSeries c0 = c.coefficient(Mono{});
    if (!c0.is_zero()) k -= one_tensor().scaled(c0);
    known[x] = k;
  }

  std::vector<TensorElement> images(gens);
  for (int round = 0; round <= degree; ++round) {
    std::vector<TensorElement> next(gens);
    for (int x = 0; x < gens; ++x) {
      TensorElement rest = known[x] - extend(h, images, nonlinear[x], degree);
      if (pivots[x].scale.is_constant()) {
        next[x] = rest.scaled(ScalarSeries(Rational(1) / pivots[x].scale.constant_term()));
      } else {
        const ScalarSeries s = pivots[x].scale;
        next[x] = rest.map_coefficients([&](const ScalarSeries& c) { return divide_by_monomial(c, s); });
      }
    }
    images = std::move(next);
  }

  CoproductReadout out;
  out.exact_order = h.order() - lost_order;
  auto reliable = [&](const TensorElement& x) {
    return x.map_coefficients([&](const ScalarSeries& c) { return c.truncated(out.exact_order); });
  };
  for (int e = 0; e < n * n; ++e) {
    TensorElement diff = reliable(extend(h, images, t.at(e / n, e % n), degree) - product[e]);
    if (!diff.is_zero())
      out.consistency.fail("entry (" + std::to_string(e / n + 1) + "," + std::to_string(e % n + 1) +
                           ") residual: " + diff.str(g));
  }
  if (!out.consistency.pass)
    throw PatternMismatch("matrix entries are not reproduced by the solved coproducts: " +
                          out.consistency.residuals.front());
  for (auto& c : images) c = reliable(c);
  out.coproducts = std::move(images);
  return out;
}

}  // namespace qdual
