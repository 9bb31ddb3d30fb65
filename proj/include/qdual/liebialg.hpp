#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdual/linalg.hpp"
#include "qdual/report.hpp"
#include "qdual/scalar.hpp"

namespace qdual {

/// Structure constants: [X_i, X_j] = sum_k c(i, j, k) X_k.
class LieAlgebra {
 public:
  explicit LieAlgebra(std::vector<std::string> names, const ParamSpace* space = nullptr);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const ParamSpace* space() const { return space_; }
  int index(const std::string& name) const;

  const ScalarSeries& c(int i, int j, int k) const { return c_[at(i, j, k)]; }
  /// Sets [X_i, X_j] = sum_k v[k] X_k and the antisymmetric partner.
  void set_bracket(int i, int j, const std::vector<ScalarSeries>& v);
  std::vector<ScalarSeries> bracket(const std::vector<ScalarSeries>& a, const std::vector<ScalarSeries>& b) const;

  CheckResult check_jacobi() const;
  template <class F>
  LieAlgebra map_coefficients(F f) const {
    LieAlgebra r(names_, space_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = f(c_[i]);
    return r;
  }
  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.names_ == b.names_ && a.c_ == b.c_; }
  std::string str() const;

 private:
  std::size_t at(int i, int j, int k) const { return static_cast<std::size_t>((i * dim() + j) * dim() + k); }
  std::vector<std::string> names_;
  const ParamSpace* space_;
  std::vector<ScalarSeries> c_;
};

/// delta(X_i) = sum_{j,k} f(i, j, k) X_j (x) X_k with f antisymmetric in (j, k).
class Cocommutator {
 public:
  explicit Cocommutator(std::vector<std::string> names, const ParamSpace* space = nullptr);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const ParamSpace* space() const { return space_; }
  void set_space(const ParamSpace* s) { space_ = s; }

  const ScalarSeries& f(int i, int j, int k) const { return f_[at(i, j, k)]; }
  /// delta(X_i) += c X_j ^ X_k, where X ^ Y = X (x) Y - Y (x) X.
  void add_wedge(int i, int j, int k, const ScalarSeries& c);
  /// Sets the (j, k) entry and its antisymmetric partner.
  void set(int i, int j, int k, const ScalarSeries& c);
  bool is_zero() const;

  template <class F>
  Cocommutator map_coefficients(F f) const {
    Cocommutator r(names_, space_);
    for (std::size_t i = 0; i < f_.size(); ++i) r.f_[i] = f(f_[i]);
    return r;
  }
  friend bool operator==(const Cocommutator& a, const Cocommutator& b) {
    return a.names_ == b.names_ && a.f_ == b.f_;
  }
  friend bool operator!=(const Cocommutator& a, const Cocommutator& b) { return !(a == b); }
  Cocommutator operator+(const Cocommutator& o) const;
  Cocommutator scaled(const ScalarSeries& c) const;
  std::string str() const;

 private:
  std::size_t at(int i, int j, int k) const { return static_cast<std::size_t>((i * dim() + j) * dim() + k); }
  std::vector<std::string> names_;
  const ParamSpace* space_;
  std::vector<ScalarSeries> f_;
};

/// Antisymmetric element r = sum_{j<k} r(j, k) X_j ^ X_k, stored as a full
/// antisymmetric matrix (r(k, j) = -r(j, k)).
class RMatrix {
 public:
  explicit RMatrix(int n) : n_(n), r_(static_cast<std::size_t>(n * n)) {}
  int dim() const { return n_; }
  const ScalarSeries& r(int j, int k) const { return r_[static_cast<std::size_t>(j * n_ + k)]; }
  void set(int j, int k, const ScalarSeries& v);
  bool is_zero() const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  int n_;
  std::vector<ScalarSeries> r_;
};

CheckResult check_cocycle(const LieAlgebra& g, const Cocommutator& d);

/// Co-Jacobi constraints: the independent components of the Jacobiator of
/// the dual bracket, each a polynomial in the family parameters.
struct CojacobiResult {
  bool pass = true;
  std::vector<ScalarSeries> constraints;  // nonzero components only
  CheckResult check;
};
CojacobiResult check_cojacobi(const Cocommutator& d);

struct CoboundaryResult {
  bool coboundary = false;
  std::optional<RMatrix> r;              // particular solution when coboundary
  std::vector<RMatrix> invariant_basis;  // ad-invariant elements of g ^ g
  std::string certificate;               // inconsistency witness otherwise
};
/// Solves delta(X) = ad_X r for r in g ^ g.
CoboundaryResult coboundary_solve(const LieAlgebra& g, const Cocommutator& d);

/// Cocommutator induced by r: delta(X) = [X (x) 1 + 1 (x) X, r].
Cocommutator coboundary_of(const LieAlgebra& g, const RMatrix& r);

enum class SchoutenClass { CYBE, ModifiedCYBE, Neither };
std::string to_string(SchoutenClass c);
/// Components of [[r, r]] = [r12, r13] + [r12, r23] + [r13, r23].
std::vector<ScalarSeries> schouten_bracket(const LieAlgebra& g, const RMatrix& r);
SchoutenClass schouten_classify(const LieAlgebra& g, const RMatrix& r);

/// General cocycle with one fresh parameter per free direction.
struct CocycleFamily {
  Cocommutator family;
  std::vector<std::string> params;
};
CocycleFamily ansatz_cocycle_solve(const LieAlgebra& g, const std::string& prefix = "t", int order = 16);

/// Family restricted by parameter assignments, with cocycle and co-Jacobi re-checked.
struct BranchResult {
  Cocommutator family;
  CheckResult cocycle;
  CojacobiResult cojacobi;
};
BranchResult branch_substitute(const LieAlgebra& g, const Cocommutator& family,
                               const std::vector<std::pair<std::string, ScalarSeries>>& assignments);

/// Dual Lie algebra with [xi^j, xi^k] = 2 sum_i f(i, j, k) xi^i; throws JacobiFailure.
LieAlgebra dual_lie_algebra(const Cocommutator& d, const std::vector<std::string>& dual_names);

/// delta(h) in h ^ g for the subalgebra spanned by the given generators.
CheckResult coisotropy_check(const Cocommutator& d, const std::vector<int>& subset);

/// Classical limit contributions of each parameter: the coefficient vector
/// of a family linear in its parameters, one vector per parameter.
std::vector<std::vector<Rational>> linear_directions(const Cocommutator& family, const std::vector<std::string>& params);
/// Checks both families span the same space of cocommutators.
bool same_span(const Cocommutator& a, const std::vector<std::string>& pa, const Cocommutator& b,
               const std::vector<std::string>& pb);
/// Writes each parameter of `a` as a linear form in the parameters of `b`,
/// so that substituting turns `a` into `b`. Requires equal spans and independence.
std::vector<ScalarSeries> linear_reparametrization(const Cocommutator& a, const std::vector<std::string>& pa,
                                                   const Cocommutator& b, const std::vector<std::string>& pb);
/// Polynomial composition: every parameter of `poly` replaced by values[i], in the target space.
ScalarSeries compose(const ScalarSeries& poly, const std::vector<ScalarSeries>& values, const ParamSpace* target);
Cocommutator compose(const Cocommutator& d, const std::vector<ScalarSeries>& values, const ParamSpace* target);

/// Finds parameter maps p_i -> s_i q_{pi(i)} with s_i = +-1 taking `a` to `b`.
/// Returns the images, or nullopt. Families of at most 6 parameters.
std::optional<std::vector<ScalarSeries>> signed_permutation_match(const Cocommutator& a, const Cocommutator& b);

/// Reduced Groebner basis under degree-lexicographic order in which later
/// parameters of the space are larger. Input polynomials must be
/// epsilon-free and share one space.
std::vector<ScalarSeries> groebner_basis(const std::vector<ScalarSeries>& polys);

}  // namespace qdual
