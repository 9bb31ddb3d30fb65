#include "qdual/scalar.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>

#include "qdual/errors.hpp"

namespace qdual {

namespace {

std::mutex& intern_mutex() {
  static std::mutex m;
  return m;
}

std::deque<ParamSpace*>& intern_pool() {
  static std::deque<ParamSpace*> pool;
  return pool;
}

}  // namespace

const ParamSpace* ParamSpace::make(const std::vector<std::string>& names, int order,
                                   const std::string& contraction) {
  if (order < 1 || order > kMaxOrder) throw ConfigError("truncation order out of range");
  if (static_cast<int>(names.size()) > kMaxParams) throw ConfigError("too many deformation parameters");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw ConfigError("empty parameter name");
    if (names[i] == contraction) throw ConfigError("parameter clashes with contraction parameter: " + names[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j]) throw ConfigError("duplicate parameter name: " + names[i]);
  }
  std::lock_guard<std::mutex> lock(intern_mutex());
  for (ParamSpace* p : intern_pool())
    if (p->names_ == names && p->order_ == order && p->contraction_ == contraction) return p;
  // Interned spaces live for the whole process.
  auto* p = new ParamSpace(names, order, contraction);
  intern_pool().push_back(p);
  return p;
}

int ParamSpace::index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

int ParamSpace::require(const std::string& name) const {
  int i = index(name);
  if (i < 0) throw ConfigError("unknown parameter: " + name);
  return i;
}

const ParamSpace* ParamSpace::with_order(int order) const { return make(names_, order, contraction_); }

const ParamSpace* ParamSpace::extended(const std::vector<std::string>& more) const {
  std::vector<std::string> n = names_;
  for (const auto& m : more)
    if (std::find(n.begin(), n.end(), m) == n.end()) n.push_back(m);
  return make(n, order_, contraction_);
}

SKey SKey::from_exponents(const std::vector<int>& e, int eps) {
  SKey k;
  k.eps = eps;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] > ParamSpace::kMaxOrder) throw ConfigError("parameter exponent out of range");
    k.deg |= static_cast<std::uint64_t>(e[i]) << (6 * i);
    k.total += e[i];
  }
  return k;
}

ScalarSeries::ScalarSeries(const Rational& c) {
  if (!c.is_zero()) terms_.emplace_back(SKey{}, c);
}

ScalarSeries::ScalarSeries(const ParamSpace* space, const Rational& c) : ScalarSeries(c) { space_ = space; }

ScalarSeries ScalarSeries::param(const ParamSpace* space, const std::string& name) {
  int i = space->require(name);
  std::vector<int> e(space->size(), 0);
  e[i] = 1;
  return monomial(space, SKey::from_exponents(e), Rational(1));
}

ScalarSeries ScalarSeries::monomial(const ParamSpace* space, SKey key, const Rational& c) {
  ScalarSeries s;
  s.space_ = space;
  if (!c.is_zero() && (space == nullptr || key.total <= space->order())) s.terms_.emplace_back(key, c);
  return s;
}

ScalarSeries ScalarSeries::epsilon_power(const ParamSpace* space, int k) {
  SKey key;
  key.eps = k;
  return monomial(space, key, Rational(1));
}

bool ScalarSeries::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.deg == 0 && terms_[0].first.eps == 0);
}

Rational ScalarSeries::constant_term() const { return coefficient(SKey{}); }

Rational ScalarSeries::coefficient(const SKey& k) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const Term& t, const SKey& key) { return t.first < key; });
  if (it != terms_.end() && it->first == k) return it->second;
  return Rational(0);
}

int ScalarSeries::min_degree() const {
  int m = -1;
  for (const auto& t : terms_)
    if (m < 0 || t.first.total < m) m = t.first.total;
  return m;
}

int ScalarSeries::max_degree() const {
  int m = -1;
  for (const auto& t : terms_) m = std::max(m, t.first.total);
  return m;
}

void ScalarSeries::adopt_space(const ScalarSeries& o) {
  if (o.space_ == nullptr || o.space_ == space_) return;
  if (space_ == nullptr) {
    space_ = o.space_;
    return;
  }
  throw ConfigError("mismatched parameter spaces");
}

void ScalarSeries::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    SKey k = terms_[i].first;
    Rational c = terms_[i].second;
    std::size_t j = i + 1;
    while (j < terms_.size() && terms_[j].first == k) c += terms_[j++].second;
    if (!c.is_zero()) terms_[out++] = {k, c};
    i = j;
  }
  terms_.resize(out);
}

ScalarSeries ScalarSeries::operator-() const {
  ScalarSeries r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

ScalarSeries& ScalarSeries::operator+=(const ScalarSeries& o) {
  adopt_space(o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.cbegin();
  auto b = o.terms_.cbegin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (!c.is_zero()) merged.emplace_back(a->first, c);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

ScalarSeries& ScalarSeries::operator-=(const ScalarSeries& o) { return *this += -o; }

ScalarSeries& ScalarSeries::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
  ScalarSeries r;
  r.space_ = a.space_;
  r.adopt_space(b);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (b.is_constant()) {
    r.terms_ = a.terms_;
    r *= b.terms_[0].second;
    return r;
  }
  if (a.is_constant()) {
    r.terms_ = b.terms_;
    r *= a.terms_[0].second;
    return r;
  }
  const int order = r.space_ ? r.space_->order() : 0;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      int total = x.first.total + y.first.total;
      if (total > order) continue;
      SKey k;
      k.deg = x.first.deg + y.first.deg;  // no carry: every field stays <= order <= 63
      k.eps = x.first.eps + y.first.eps;
      k.total = total;
      r.terms_.emplace_back(k, x.second * y.second);
    }
  }
  r.normalize();
  return r;
}

ScalarSeries& ScalarSeries::operator*=(const ScalarSeries& o) {
  *this = *this * o;
  return *this;
}

bool operator==(const ScalarSeries& a, const ScalarSeries& b) {
  if (a.space_ && b.space_ && a.space_ != b.space_) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    throw ConfigError("comparing series from mismatched parameter spaces");
  }
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].first == b.terms_[i].first) || a.terms_[i].second != b.terms_[i].second) return false;
  return true;
}

ScalarSeries ScalarSeries::degree_part(int d) const {
  ScalarSeries r;
  r.space_ = space_;
  for (const auto& t : terms_)
    if (t.first.total == d) r.terms_.push_back(t);
  return r;
}

ScalarSeries ScalarSeries::truncated(int d) const {
  ScalarSeries r;
  r.space_ = space_;
  for (const auto& t : terms_)
    if (t.first.total <= d) r.terms_.push_back(t);
  return r;
}

ScalarSeries ScalarSeries::substitute_parameter(const std::string& name, int exponent) const {
  if (!space_) {
    if (!terms_.empty()) throw ConfigError("unknown parameter: " + name);
    return *this;
  }
  int i = space_->require(name);
  ScalarSeries r = *this;
  for (auto& t : r.terms_) t.first.eps += exponent * t.first.exponent(i);
  r.normalize();
  return r;
}

ScalarSeries ScalarSeries::times_epsilon(int k) const {
  ScalarSeries r = *this;
  for (auto& t : r.terms_) t.first.eps += k;
  r.normalize();
  return r;
}

ScalarSeries ScalarSeries::substitute(const std::string& name, const ScalarSeries& value) const {
  if (!space_) return *this;
  int i = space_->require(name);
  ScalarSeries r;
  r.space_ = space_;
  std::vector<ScalarSeries> powers{ScalarSeries(space_, Rational(1))};
  for (const auto& t : terms_) {
    int e = t.first.exponent(i);
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * value);
    SKey rest = t.first;
    rest.deg &= ~(std::uint64_t{63} << (6 * i));
    rest.total -= e;
    r += monomial(space_, rest, t.second) * powers[e];
  }
  return r;
}

ScalarSeries ScalarSeries::divide_by_param(const std::string& name) const {
  if (terms_.empty()) return *this;
  if (!space_) throw ConfigError("cannot divide a constant by parameter " + name);
  int i = space_->require(name);
  ScalarSeries r;
  r.space_ = space_;
  for (const auto& t : terms_) {
    if (t.first.exponent(i) == 0) throw ConfigError("series is not divisible by " + name);
    SKey k = t.first;
    k.deg -= std::uint64_t{1} << (6 * i);
    k.total -= 1;
    r.terms_.emplace_back(k, t.second);
  }
  r.normalize();
  return r;
}

ScalarSeries ScalarSeries::rebased(const ParamSpace* target,
                                   const std::vector<std::pair<std::string, std::string>>& rename) const {
  ScalarSeries r;
  r.space_ = target;
  if (terms_.empty()) return r;
  if (!space_) {
    r.terms_ = terms_;
    return r;
  }
  std::vector<int> map(space_->size(), -1);
  for (int i = 0; i < space_->size(); ++i) {
    std::string n = space_->names()[i];
    for (const auto& [from, to] : rename)
      if (from == n) n = to;
    map[i] = target ? target->index(n) : -1;
  }
  for (const auto& t : terms_) {
    std::vector<int> e(target ? target->size() : 0, 0);
    for (int i = 0; i < space_->size(); ++i) {
      int x = t.first.exponent(i);
      if (x == 0) continue;
      if (map[i] < 0) throw ConfigError("parameter " + space_->names()[i] + " has no counterpart");
      e[map[i]] += x;
    }
    SKey k = SKey::from_exponents(e, t.first.eps);
    if (target && k.total > target->order()) continue;
    r.terms_.emplace_back(k, t.second);
  }
  r.normalize();
  return r;
}

std::optional<int> ScalarSeries::min_epsilon() const {
  std::optional<int> m;
  for (const auto& t : terms_)
    if (!m || t.first.eps < *m) m = t.first.eps;
  return m;
}

int ScalarSeries::max_exponent_of(int param) const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.first.exponent(param));
  return m;
}

std::string key_str(const ParamSpace* space, const SKey& k) {
  std::string s;
  auto append = [&s](const std::string& name, int e) {
    if (!s.empty()) s += "*";
    s += name;
    if (e != 1) s += "^" + std::to_string(e);
  };
  if (space) {
    for (int i = 0; i < space->size(); ++i)
      if (int e = k.exponent(i)) append(space->names()[i], e);
    if (k.eps != 0) append(space->contraction_name(), k.eps);
  } else if (k.eps != 0) {
    append("eps", k.eps);
  }
  return s;
}

std::string ScalarSeries::str() const {
  if (terms_.empty()) return "0";
  std::vector<Term> sorted = terms_;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Term& a, const Term& b) {
    if (a.first.total != b.first.total) return a.first.total < b.first.total;
    return a.first < b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : sorted) {
    std::string mono = key_str(space_, k);
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      os << mag;
    } else {
      if (!mag.is_one()) os << mag << "*";
      os << mono;
    }
  }
  return os.str();
}

std::size_t ScalarSeries::hash() const {
  std::size_t h = terms_.size();
  for (const auto& [k, c] : terms_) h = (h * 31 + (k.deg * 131 + static_cast<std::size_t>(k.eps))) ^ c.hash();
  return h;
}

ScalarSeries epsilon_limit(const ScalarSeries& a) {
  ScalarSeries r = ScalarSeries(a.space(), Rational(0));
  for (const auto& [k, c] : a.terms()) {
    if (k.eps < 0) {
      throw DivergentLimit("divergent term " + c.str() + "*" + key_str(a.space(), k) +
                           " in the epsilon -> 0 limit");
    }
  }
  for (const auto& [k, c] : a.terms())
    if (k.eps == 0) r += ScalarSeries::monomial(a.space(), k, c);
  return r;
}

ScalarSeries multiply(const ScalarSeries& a, const ScalarSeries& b) { return a * b; }

ScalarSeries substitute_parameter(const ScalarSeries& a, const std::string& param, int exponent) {
  return a.substitute_parameter(param, exponent);
}

}  // namespace qdual
