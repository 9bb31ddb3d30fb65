#include "qdual/liebialg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "qdual/errors.hpp"

namespace qdual {

namespace {

using Matrix = std::vector<ScalarSeries>;  // n x n, row-major

Matrix zero_matrix(int n) { return Matrix(static_cast<std::size_t>(n * n)); }

// (ad_X A)_{ab} = sum_c [X, X_c]_a A_{cb} + [X, X_c]_b A_{ac} with X = X_x.
Matrix ad_on_pair(const LieAlgebra& g, int x, const Matrix& a) {
  const int n = g.dim();
  Matrix r = zero_matrix(n);
  for (int c = 0; c < n; ++c) {
    for (int e = 0; e < n; ++e) {
      const ScalarSeries& k = g.c(x, c, e);
      if (k.is_zero()) continue;
      for (int b = 0; b < n; ++b) {
        if (!a[c * n + b].is_zero()) r[e * n + b] += k * a[c * n + b];
        if (!a[b * n + c].is_zero()) r[b * n + e] += k * a[b * n + c];
      }
    }
  }
  return r;
}

Matrix delta_matrix(const Cocommutator& d, int i) {
  const int n = d.dim();
  Matrix m = zero_matrix(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m[j * n + k] = d.f(i, j, k);
  return m;
}

Matrix r_matrix(const RMatrix& r) {
  const int n = r.dim();
  Matrix m = zero_matrix(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m[j * n + k] = r.r(j, k);
  return m;
}

std::string wedge_name(const std::vector<std::string>& names, int a, int b) { return names[a] + "^" + names[b]; }

void require_constant(const LieAlgebra& g) {
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      for (int k = 0; k < g.dim(); ++k)
        if (!g.c(i, j, k).is_constant()) throw ConfigError("structure constants must be rational numbers here");
}

// Index of the pair (j, k), j < k, in lexicographic order.
std::vector<std::pair<int, int>> pairs(int n) {
  std::vector<std::pair<int, int>> p;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) p.emplace_back(j, k);
  return p;
}

}  // namespace

// ---------------------------------------------------------------- LieAlgebra

LieAlgebra::LieAlgebra(std::vector<std::string> names, const ParamSpace* space)
    : names_(std::move(names)), space_(space), c_(names_.size() * names_.size() * names_.size()) {}

int LieAlgebra::index(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

void LieAlgebra::set_bracket(int i, int j, const std::vector<ScalarSeries>& v) {
  if (static_cast<int>(v.size()) != dim()) throw ConfigError("bracket vector has wrong length");
  if (i == j) {
    for (const auto& x : v)
      if (!x.is_zero()) throw ConfigError("[X, X] must vanish");
    return;
  }
  for (int k = 0; k < dim(); ++k) {
    c_[at(i, j, k)] = v[k];
    c_[at(j, i, k)] = -v[k];
  }
}

std::vector<ScalarSeries> LieAlgebra::bracket(const std::vector<ScalarSeries>& a,
                                              const std::vector<ScalarSeries>& b) const {
  std::vector<ScalarSeries> r(dim());
  for (int i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (b[j].is_zero()) continue;
      ScalarSeries ab = a[i] * b[j];
      for (int k = 0; k < dim(); ++k)
        if (!c(i, j, k).is_zero()) r[k] += ab * c(i, j, k);
    }
  }
  return r;
}

CheckResult LieAlgebra::check_jacobi() const {
  CheckResult res{"jacobi"};
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          ScalarSeries s;
          for (int l = 0; l < n; ++l)
            s += c(i, j, l) * c(l, k, m) + c(j, k, l) * c(l, i, m) + c(k, i, l) * c(l, j, m);
          if (!s.is_zero())
            res.fail("[[" + names_[i] + "," + names_[j] + "]," + names_[k] + "] + cyclic, component " + names_[m] +
                     ": " + s.str());
        }
  return res;
}

std::string LieAlgebra::str() const {
  std::string s;
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j) {
      std::string rhs;
      for (int k = 0; k < dim(); ++k) {
        if (c(i, j, k).is_zero()) continue;
        if (!rhs.empty()) rhs += " + ";
        rhs += "(" + c(i, j, k).str() + ")*" + names_[k];
      }
      if (!rhs.empty()) s += "[" + names_[i] + ", " + names_[j] + "] = " + rhs + "\n";
    }
  return s;
}

// ---------------------------------------------------------------- Cocommutator

Cocommutator::Cocommutator(std::vector<std::string> names, const ParamSpace* space)
    : names_(std::move(names)), space_(space), f_(names_.size() * names_.size() * names_.size()) {}

void Cocommutator::add_wedge(int i, int j, int k, const ScalarSeries& c) {
  if (j == k) return;
  f_[at(i, j, k)] += c;
  f_[at(i, k, j)] -= c;
}

void Cocommutator::set(int i, int j, int k, const ScalarSeries& c) {
  if (j == k) {
    if (!c.is_zero()) throw ConfigError("cocommutator diagonal must vanish");
    return;
  }
  f_[at(i, j, k)] = c;
  f_[at(i, k, j)] = -c;
}

bool Cocommutator::is_zero() const {
  return std::all_of(f_.begin(), f_.end(), [](const ScalarSeries& x) { return x.is_zero(); });
}

Cocommutator Cocommutator::operator+(const Cocommutator& o) const {
  Cocommutator r = *this;
  for (std::size_t i = 0; i < f_.size(); ++i) r.f_[i] += o.f_[i];
  return r;
}

Cocommutator Cocommutator::scaled(const ScalarSeries& c) const {
  return map_coefficients([&](const ScalarSeries& x) { return x * c; });
}

std::string Cocommutator::str() const {
  std::string s;
  for (int i = 0; i < dim(); ++i) {
    std::string rhs;
    for (int j = 0; j < dim(); ++j)
      for (int k = j + 1; k < dim(); ++k) {
        if (f(i, j, k).is_zero()) continue;
        if (!rhs.empty()) rhs += " + ";
        rhs += "(" + f(i, j, k).str() + ")*" + wedge_name(names_, j, k);
      }
    s += "delta(" + names_[i] + ") = " + (rhs.empty() ? "0" : rhs) + "\n";
  }
  return s;
}

// ---------------------------------------------------------------- RMatrix

void RMatrix::set(int j, int k, const ScalarSeries& v) {
  if (j == k) throw ConfigError("r-matrix diagonal must vanish");
  r_[static_cast<std::size_t>(j * n_ + k)] = v;
  r_[static_cast<std::size_t>(k * n_ + j)] = -v;
}

bool RMatrix::is_zero() const {
  return std::all_of(r_.begin(), r_.end(), [](const ScalarSeries& x) { return x.is_zero(); });
}

std::string RMatrix::str(const std::vector<std::string>& names) const {
  std::string s;
  for (int j = 0; j < n_; ++j)
    for (int k = j + 1; k < n_; ++k) {
      if (r(j, k).is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + r(j, k).str() + ")*" + wedge_name(names, j, k);
    }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------- checks

CheckResult check_cocycle(const LieAlgebra& g, const Cocommutator& d) {
  if (g.dim() != d.dim()) throw ConfigError("dimension mismatch between bracket and cocommutator");
  CheckResult res{"cocycle"};
  const int n = g.dim();
  std::vector<Matrix> dm;
  for (int i = 0; i < n; ++i) dm.push_back(delta_matrix(d, i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix lhs = zero_matrix(n);
      for (int k = 0; k < n; ++k) {
        if (g.c(i, j, k).is_zero()) continue;
        for (int e = 0; e < n * n; ++e)
          if (!dm[k][e].is_zero()) lhs[e] += g.c(i, j, k) * dm[k][e];
      }
      Matrix a = ad_on_pair(g, i, dm[j]);
      Matrix b = ad_on_pair(g, j, dm[i]);
      for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
          ScalarSeries r = lhs[x * n + y] - a[x * n + y] + b[x * n + y];
          if (!r.is_zero())
            res.fail("delta([" + g.names()[i] + "," + g.names()[j] + "]) component " + wedge_name(g.names(), x, y) +
                     ": " + r.str());
        }
    }
  return res;
}

CojacobiResult check_cojacobi(const Cocommutator& d) {
  CojacobiResult out;
  out.check.name = "co-jacobi";
  const int n = d.dim();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int m = 0; m < n; ++m) {
          ScalarSeries s;
          for (int i = 0; i < n; ++i)
            s += d.f(i, a, b) * d.f(m, i, c) + d.f(i, b, c) * d.f(m, i, a) + d.f(i, c, a) * d.f(m, i, b);
          if (s.is_zero()) continue;
          out.constraints.push_back(s);
          out.check.fail("cyclic(" + d.names()[a] + "," + d.names()[b] + "," + d.names()[c] + ") component " +
                         d.names()[m] + ": " + s.str());
        }
  out.pass = out.constraints.empty();
  return out;
}

Cocommutator coboundary_of(const LieAlgebra& g, const RMatrix& r) {
  Cocommutator d(g.names(), g.space());
  Matrix rm = r_matrix(r);
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    Matrix a = ad_on_pair(g, i, rm);
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) d.set(i, j, k, a[j * n + k]);
  }
  return d;
}

CoboundaryResult coboundary_solve(const LieAlgebra& g, const Cocommutator& d) {
  require_constant(g);
  const int n = g.dim();
  auto pr = pairs(n);
  const int u = static_cast<int>(pr.size());
  RationalMatrix a(n * u, u);
  std::vector<ScalarSeries> rhs(static_cast<std::size_t>(n * u));
  for (int col = 0; col < u; ++col) {
    RMatrix basis(n);
    basis.set(pr[col].first, pr[col].second, ScalarSeries(1));
    Cocommutator img = coboundary_of(g, basis);
    for (int i = 0; i < n; ++i)
      for (int row = 0; row < u; ++row) a.at(i * u + row, col) = img.f(i, pr[row].first, pr[row].second).constant_term();
  }
  for (int i = 0; i < n; ++i)
    for (int row = 0; row < u; ++row) rhs[i * u + row] = d.f(i, pr[row].first, pr[row].second);

  CoboundaryResult res;
  for (const auto& v : nullspace(a)) {
    RMatrix inv(n);
    for (int col = 0; col < u; ++col)
      if (!v[col].is_zero()) inv.set(pr[col].first, pr[col].second, ScalarSeries(v[col]));
    res.invariant_basis.push_back(inv);
  }
  LinearSolution s = solve(a, rhs);
  if (!s.consistent) {
    int i = s.inconsistent_row / u;
    auto [x, y] = pr[s.inconsistent_row % u];
    res.certificate = "no r reproduces delta(" + g.names()[i] + ") along " + wedge_name(g.names(), x, y) +
                      "; eliminated residual " + s.residual.str();
    return res;
  }
  RMatrix r(n);
  for (int col = 0; col < u; ++col)
    if (!s.x[col].is_zero()) r.set(pr[col].first, pr[col].second, s.x[col]);
  res.coboundary = true;
  res.r = r;
  return res;
}

std::string to_string(SchoutenClass c) {
  switch (c) {
    case SchoutenClass::CYBE: return "CYBE";
    case SchoutenClass::ModifiedCYBE: return "mCYBE";
    case SchoutenClass::Neither: return "neither";
  }
  return "?";
}

std::vector<ScalarSeries> schouten_bracket(const LieAlgebra& g, const RMatrix& r) {
  const int n = g.dim();
  std::vector<ScalarSeries> t(static_cast<std::size_t>(n * n * n));
  auto T = [&](int a, int b, int c) -> ScalarSeries& { return t[static_cast<std::size_t>((a * n + b) * n + c)]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (r.r(a, b).is_zero()) continue;
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          if (r.r(c, d).is_zero()) continue;
          ScalarSeries rr = r.r(a, b) * r.r(c, d);
          for (int e = 0; e < n; ++e) {
            if (!g.c(a, c, e).is_zero()) T(e, b, d) += rr * g.c(a, c, e);
            if (!g.c(b, c, e).is_zero()) T(a, e, d) += rr * g.c(b, c, e);
            if (!g.c(b, d, e).is_zero()) T(a, c, e) += rr * g.c(b, d, e);
          }
        }
    }
  return t;
}

SchoutenClass schouten_classify(const LieAlgebra& g, const RMatrix& r) {
  const int n = g.dim();
  auto t = schouten_bracket(g, r);
  if (std::all_of(t.begin(), t.end(), [](const ScalarSeries& x) { return x.is_zero(); })) return SchoutenClass::CYBE;
  auto T = [&](int a, int b, int c) -> const ScalarSeries& { return t[static_cast<std::size_t>((a * n + b) * n + c)]; };
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          ScalarSeries s;
          for (int e = 0; e < n; ++e)
            s += g.c(x, e, a) * T(e, b, c) + g.c(x, e, b) * T(a, e, c) + g.c(x, e, c) * T(a, b, e);
          if (!s.is_zero()) return SchoutenClass::Neither;
        }
  return SchoutenClass::ModifiedCYBE;
}

// ---------------------------------------------------------------- families

CocycleFamily ansatz_cocycle_solve(const LieAlgebra& g, const std::string& prefix, int order) {
  require_constant(g);
  const int n = g.dim();
  auto pr = pairs(n);
  const int u = static_cast<int>(pr.size());
  const int unknowns = n * u;
  // Rows: residual components of the cocycle condition for i<j and x<y.
  RationalMatrix a(n * (n - 1) / 2 * u, unknowns);
  for (int col = 0; col < unknowns; ++col) {
    Cocommutator unit(g.names());
    unit.set(col / u, pr[col % u].first, pr[col % u].second, ScalarSeries(1));
    const int nn = n;
    int row = 0;
    for (int i = 0; i < nn; ++i)
      for (int j = i + 1; j < nn; ++j) {
        Matrix lhs = zero_matrix(nn);
        for (int k = 0; k < nn; ++k) {
          if (g.c(i, j, k).is_zero()) continue;
          Matrix dk = delta_matrix(unit, k);
          for (int e = 0; e < nn * nn; ++e)
            if (!dk[e].is_zero()) lhs[e] += g.c(i, j, k) * dk[e];
        }
        Matrix p = ad_on_pair(g, i, delta_matrix(unit, j));
        Matrix q = ad_on_pair(g, j, delta_matrix(unit, i));
        for (int x = 0; x < u; ++x) {
          int e = pr[x].first * nn + pr[x].second;
          a.at(row++, col) = (lhs[e] - p[e] + q[e]).constant_term();
        }
      }
  }
  auto basis = nullspace(a);
  std::vector<std::string> params;
  for (std::size_t p = 0; p < basis.size(); ++p) params.push_back(prefix + std::to_string(p + 1));
  if (static_cast<int>(params.size()) > ParamSpace::kMaxParams)
    throw ConfigError("cocycle space has " + std::to_string(params.size()) + " directions, more than supported");
  const ParamSpace* s = ParamSpace::make(params, order);
  Cocommutator fam(g.names(), s);
  for (std::size_t p = 0; p < basis.size(); ++p) {
    ScalarSeries t = ScalarSeries::param(s, params[p]);
    for (int col = 0; col < unknowns; ++col)
      if (!basis[p][col].is_zero()) fam.add_wedge(col / u, pr[col % u].first, pr[col % u].second, t * basis[p][col]);
  }
  return {fam, params};
}

BranchResult branch_substitute(const LieAlgebra& g, const Cocommutator& family,
                               const std::vector<std::pair<std::string, ScalarSeries>>& assignments) {
  Cocommutator d = family;
  for (const auto& [name, value] : assignments) {
    if (family.space() == nullptr || family.space()->index(name) < 0) throw ConfigError("unknown parameter: " + name);
    d = d.map_coefficients([&](const ScalarSeries& x) { return x.substitute(name, value); });
  }
  return {d, check_cocycle(g, d), check_cojacobi(d)};
}

LieAlgebra dual_lie_algebra(const Cocommutator& d, const std::vector<std::string>& dual_names) {
  if (static_cast<int>(dual_names.size()) != d.dim()) throw ConfigError("dual names have wrong length");
  LieAlgebra g(dual_names, d.space());
  const int n = d.dim();
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      std::vector<ScalarSeries> v(n);
      for (int i = 0; i < n; ++i) v[i] = d.f(i, j, k) * Rational(2);
      g.set_bracket(j, k, v);
    }
  CheckResult jac = g.check_jacobi();
  if (!jac.pass) throw JacobiFailure("dual bracket violates Jacobi: " + jac.residuals.front());
  return g;
}

CheckResult coisotropy_check(const Cocommutator& d, const std::vector<int>& subset) {
  CheckResult res{"coisotropy"};
  std::vector<bool> in(d.dim(), false);
  for (int i : subset) in.at(i) = true;
  for (int i : subset)
    for (int j = 0; j < d.dim(); ++j)
      for (int k = j + 1; k < d.dim(); ++k)
        if (!d.f(i, j, k).is_zero() && !in[j] && !in[k])
          res.fail("delta(" + d.names()[i] + ") has " + wedge_name(d.names(), j, k) + " outside h^g");
  return res;
}

std::vector<std::vector<Rational>> linear_directions(const Cocommutator& family,
                                                     const std::vector<std::string>& params) {
  const int n = family.dim();
  auto pr = pairs(n);
  const ParamSpace* s = family.space();
  std::vector<std::vector<Rational>> dirs(params.size(), std::vector<Rational>(n * pr.size(), Rational(0)));
  for (int i = 0; i < n; ++i)
    for (std::size_t x = 0; x < pr.size(); ++x) {
      const ScalarSeries& v = family.f(i, pr[x].first, pr[x].second);
      for (const auto& [k, c] : v.terms()) {
        if (k.eps != 0 || k.total != 1) throw ConfigError("family is not linear in its parameters: " + v.str());
        int which = -1;
        for (std::size_t p = 0; p < params.size(); ++p)
          if (s && k.exponent(s->require(params[p])) == 1) which = static_cast<int>(p);
        if (which < 0) throw ConfigError("family depends on an unlisted parameter: " + v.str());
        dirs[which][i * pr.size() + x] += c;
      }
    }
  return dirs;
}

namespace {

RationalMatrix columns_of(const std::vector<std::vector<Rational>>& cols) {
  const int rows = cols.empty() ? 0 : static_cast<int>(cols.front().size());
  RationalMatrix m(rows, static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (int r = 0; r < rows; ++r) m.at(r, static_cast<int>(c)) = cols[c][r];
  return m;
}

}  // namespace

bool same_span(const Cocommutator& a, const std::vector<std::string>& pa, const Cocommutator& b,
               const std::vector<std::string>& pb) {
  auto da = linear_directions(a, pa), db = linear_directions(b, pb);
  auto all = da;
  all.insert(all.end(), db.begin(), db.end());
  int ra = rank(columns_of(da)), rb = rank(columns_of(db)), rall = rank(columns_of(all));
  return ra == rb && ra == rall;
}

std::vector<ScalarSeries> linear_reparametrization(const Cocommutator& a, const std::vector<std::string>& pa,
                                                   const Cocommutator& b, const std::vector<std::string>& pb) {
  auto da = linear_directions(a, pa), db = linear_directions(b, pb);
  RationalMatrix am = columns_of(da);
  if (rank(am) != static_cast<int>(da.size())) throw ConfigError("source family directions are dependent");
  std::vector<ScalarSeries> out(pa.size(), ScalarSeries(b.space(), Rational(0)));
  for (std::size_t q = 0; q < db.size(); ++q) {
    std::vector<ScalarSeries> rhs(db[q].begin(), db[q].end());
    LinearSolution s = solve(am, rhs);
    if (!s.consistent) throw ConfigError("target direction " + pb[q] + " lies outside the source span");
    ScalarSeries sq = ScalarSeries::param(b.space(), pb[q]);
    for (std::size_t p = 0; p < pa.size(); ++p)
      if (!s.x[p].is_zero()) out[p] += sq * s.x[p].constant_term();
  }
  return out;
}

ScalarSeries compose(const ScalarSeries& poly, const std::vector<ScalarSeries>& values, const ParamSpace* target) {
  ScalarSeries out(target, Rational(0));
  const ParamSpace* s = poly.space();
  if (!s) return ScalarSeries(target, poly.constant_term());
  if (static_cast<int>(values.size()) != s->size()) throw ConfigError("composition needs one value per parameter");
  for (const auto& [k, c] : poly.terms()) {
    ScalarSeries t(target, c);
    for (int i = 0; i < s->size(); ++i)
      for (int e = 0; e < k.exponent(i); ++e) t *= values[i];
    out += t.times_epsilon(k.eps);
  }
  return out;
}

Cocommutator compose(const Cocommutator& d, const std::vector<ScalarSeries>& values, const ParamSpace* target) {
  Cocommutator r = d.map_coefficients([&](const ScalarSeries& x) { return compose(x, values, target); });
  r.set_space(target);
  return r;
}

std::optional<std::vector<ScalarSeries>> signed_permutation_match(const Cocommutator& a, const Cocommutator& b) {
  const ParamSpace* sa = a.space();
  const ParamSpace* sb = b.space();
  const int m = sa ? sa->size() : 0;
  if ((sb ? sb->size() : 0) != m) return std::nullopt;
  if (m > 6) throw ConfigError("signed permutation search limited to 6 parameters");
  if (m == 0) return a == b ? std::optional<std::vector<ScalarSeries>>(std::vector<ScalarSeries>{}) : std::nullopt;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (int signs = 0; signs < (1 << m); ++signs) {
      std::vector<ScalarSeries> v;
      for (int i = 0; i < m; ++i) {
        ScalarSeries q = ScalarSeries::param(sb, sb->names()[perm[i]]);
        v.push_back((signs >> i) & 1 ? -q : q);
      }
      if (compose(a, v, sb) == b) return v;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// ---------------------------------------------------------------- Groebner

namespace {

using Exps = std::vector<int>;
struct PTerm {
  Exps e;
  Rational c;
};
using Poly = std::vector<PTerm>;  // descending in the monomial order

// Degree first; ties broken by the exponent of the largest (last) variable.
bool mono_greater(const Exps& a, const Exps& b) {
  int ta = std::accumulate(a.begin(), a.end(), 0), tb = std::accumulate(b.begin(), b.end(), 0);
  if (ta != tb) return ta > tb;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

void normalize(Poly& p) {
  std::sort(p.begin(), p.end(), [](const PTerm& x, const PTerm& y) { return mono_greater(x.e, y.e); });
  Poly out;
  for (auto& t : p) {
    if (!out.empty() && out.back().e == t.e) {
      out.back().c += t.c;
      if (out.back().c.is_zero()) out.pop_back();
    } else if (!t.c.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  p = std::move(out);
}

void make_monic(Poly& p) {
  if (p.empty()) return;
  Rational inv = Rational(1) / p.front().c;
  for (auto& t : p) t.c *= inv;
}

bool divides(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps lcm(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

// p - c * x^shift * q
Poly sub_scaled(const Poly& p, const Rational& c, const Exps& shift, const Poly& q) {
  Poly r = p;
  for (const auto& t : q) {
    Exps e = t.e;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += shift[i];
    r.push_back({e, -(c * t.c)});
  }
  normalize(r);
  return r;
}

Exps diff(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Full reduction of p by the set g.
Poly reduce(Poly p, const std::vector<Poly>& g) {
  Poly rem;
  while (!p.empty()) {
    bool reduced = false;
    for (const auto& q : g) {
      if (q.empty() || !divides(q.front().e, p.front().e)) continue;
      p = sub_scaled(p, p.front().c / q.front().c, diff(p.front().e, q.front().e), q);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.push_back(p.front());
      p.erase(p.begin());
    }
  }
  return rem;
}

}  // namespace

std::vector<ScalarSeries> groebner_basis(const std::vector<ScalarSeries>& polys) {
  const ParamSpace* s = nullptr;
  for (const auto& p : polys)
    if (p.space()) {
      if (s && s != p.space()) throw ConfigError("Groebner input spans several parameter spaces");
      s = p.space();
    }
  if (!s) throw ConfigError("Groebner input has no parameters");
  const int n = s->size();
  std::vector<Poly> g;
  for (const auto& p : polys) {
    Poly q;
    for (const auto& [k, c] : p.terms()) {
      if (k.eps != 0) throw ConfigError("Groebner input depends on the contraction parameter");
      Exps e(n);
      for (int i = 0; i < n; ++i) e[i] = k.exponent(i);
      q.push_back({e, c});
    }
    normalize(q);
    q = reduce(q, g);
    if (!q.empty()) {
      make_monic(q);
      g.push_back(q);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> queue;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) queue.emplace_back(i, j);
  while (!queue.empty()) {
    auto [i, j] = queue.back();
    queue.pop_back();
    const Exps& li = g[i].front().e;
    const Exps& lj = g[j].front().e;
    Exps l = lcm(li, lj);
    bool coprime = true;
    for (int v = 0; v < n; ++v) coprime = coprime && (li[v] == 0 || lj[v] == 0);
    if (coprime) continue;
    Poly sp = sub_scaled(sub_scaled({}, Rational(-1), diff(l, li), g[i]), Rational(1), diff(l, lj), g[j]);
    sp = reduce(sp, g);
    if (sp.empty()) continue;
    make_monic(sp);
    g.push_back(sp);
    for (std::size_t k = 0; k + 1 < g.size(); ++k) queue.emplace_back(k, g.size() - 1);
  }
  // Minimalize then inter-reduce.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      if (divides(g[j].front().e, g[i].front().e) && (g[j].front().e != g[i].front().e || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly head{minimal[i].front()};
    Poly tail(minimal[i].begin() + 1, minimal[i].end());
    Poly r = reduce(tail, others);
    head.insert(head.end(), r.begin(), r.end());
    normalize(head);
    make_monic(head);
    reduced.push_back(head);
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const Poly& a, const Poly& b) { return mono_greater(b.front().e, a.front().e); });
  const ParamSpace* wide = s->with_order(ParamSpace::kMaxOrder);
  std::vector<ScalarSeries> out;
  for (const auto& p : reduced) {
    ScalarSeries x(wide, Rational(0));
    for (const auto& t : p) x += ScalarSeries::monomial(wide, SKey::from_exponents(t.e), t.c);
    out.push_back(x);
  }
  return out;
}

}  // namespace qdual
