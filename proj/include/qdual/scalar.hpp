#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdual/rational.hpp"

namespace qdual {

/// Named deformation parameters, the contraction parameter and the
/// truncation order N. Instances are interned: equal specs share one pointer.
class ParamSpace {
 public:
  static constexpr int kMaxParams = 10;
  static constexpr int kMaxOrder = 63;

  static const ParamSpace* make(const std::vector<std::string>& names, int order,
                                const std::string& contraction = "eps");

  const std::vector<std::string>& names() const { return names_; }
  const std::string& contraction_name() const { return contraction_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(names_.size()); }
  /// Index of a parameter, or -1.
  int index(const std::string& name) const;
  int require(const std::string& name) const;

  /// Same names, different truncation order.
  const ParamSpace* with_order(int order) const;
  /// Names appended (duplicates skipped).
  const ParamSpace* extended(const std::vector<std::string>& more) const;

 private:
  ParamSpace(std::vector<std::string> names, int order, std::string contraction)
      : names_(std::move(names)), order_(order), contraction_(std::move(contraction)) {}

  std::vector<std::string> names_;
  int order_;
  std::string contraction_;
};

/// Monomial key: packed deformation exponents (6 bits each) plus a Laurent
/// exponent of the contraction parameter.
struct SKey {
  std::uint64_t deg = 0;
  std::int32_t eps = 0;
  std::int32_t total = 0;

  int exponent(int i) const { return static_cast<int>((deg >> (6 * i)) & 63u); }
  static SKey from_exponents(const std::vector<int>& e, int eps = 0);

  friend bool operator==(const SKey& a, const SKey& b) { return a.deg == b.deg && a.eps == b.eps; }
  friend bool operator<(const SKey& a, const SKey& b) {
    return a.deg != b.deg ? a.deg < b.deg : a.eps < b.eps;
  }
};

/// Truncated multivariate power series in the deformation parameters with a
/// Laurent exponent in the contraction parameter and exact coefficients.
/// A series without a space is a plain rational constant.
class ScalarSeries {
 public:
  using Term = std::pair<SKey, Rational>;

  ScalarSeries() = default;
  ScalarSeries(const Rational& c);  // NOLINT(google-explicit-constructor)
  ScalarSeries(long long c) : ScalarSeries(Rational(c)) {}  // NOLINT
  ScalarSeries(const ParamSpace* space, const Rational& c);

  static ScalarSeries param(const ParamSpace* space, const std::string& name);
  static ScalarSeries monomial(const ParamSpace* space, SKey key, const Rational& c);
  static ScalarSeries epsilon_power(const ParamSpace* space, int k);

  const ParamSpace* space() const { return space_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when the only term (if any) is the pure constant.
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const SKey& k) const;
  /// Lowest total deformation degree present; -1 for zero.
  int min_degree() const;
  int max_degree() const;

  ScalarSeries operator-() const;
  ScalarSeries& operator+=(const ScalarSeries& o);
  ScalarSeries& operator-=(const ScalarSeries& o);
  ScalarSeries& operator*=(const ScalarSeries& o);
  ScalarSeries& operator*=(const Rational& c);
  friend ScalarSeries operator+(ScalarSeries a, const ScalarSeries& b) { return a += b; }
  friend ScalarSeries operator-(ScalarSeries a, const ScalarSeries& b) { return a -= b; }
  friend ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b);
  friend ScalarSeries operator*(ScalarSeries a, const Rational& c) { return a *= c; }
  friend ScalarSeries operator*(const Rational& c, ScalarSeries a) { return a *= c; }
  friend bool operator==(const ScalarSeries& a, const ScalarSeries& b);
  friend bool operator!=(const ScalarSeries& a, const ScalarSeries& b) { return !(a == b); }

  /// Part with total deformation degree exactly d.
  ScalarSeries degree_part(int d) const;
  /// Drops terms of total deformation degree above d.
  ScalarSeries truncated(int d) const;
  /// Replaces `name` by eps^exponent * name.
  ScalarSeries substitute_parameter(const std::string& name, int exponent) const;
  /// Replaces `name` by an arbitrary series value (polynomial substitution).
  ScalarSeries substitute(const std::string& name, const ScalarSeries& value) const;
  /// Divides by a single parameter; throws ConfigError if a term has no factor of it.
  ScalarSeries divide_by_param(const std::string& name) const;
  /// Multiplies every term by eps^k.
  ScalarSeries times_epsilon(int k) const;
  /// Re-expresses the series in another space, mapping parameters by name
  /// through `rename` (old -> new); unknown names are an error.
  ScalarSeries rebased(const ParamSpace* target,
                       const std::vector<std::pair<std::string, std::string>>& rename = {}) const;

  /// Smallest contraction exponent; nullopt for zero.
  std::optional<int> min_epsilon() const;
  /// Exponent of `name` over all terms, max.
  int max_exponent_of(int param) const;

  std::string str() const;
  std::size_t hash() const;

 private:
  void normalize();
  void adopt_space(const ScalarSeries& o);

  const ParamSpace* space_ = nullptr;
  std::vector<Term> terms_;
};

/// Limit eps -> 0: drops positive contraction exponents, throws
/// DivergentLimit on negative ones.
ScalarSeries epsilon_limit(const ScalarSeries& a);
ScalarSeries multiply(const ScalarSeries& a, const ScalarSeries& b);
ScalarSeries substitute_parameter(const ScalarSeries& a, const std::string& param, int exponent);

/// Monomial printing helper shared by higher layers.
std::string key_str(const ParamSpace* space, const SKey& k);

}  // namespace qdual
