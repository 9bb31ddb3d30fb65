#include "qdual/freealg.hpp"

#include <algorithm>
#include <sstream>

#include "qdual/errors.hpp"

namespace qdual {

// ---------------------------------------------------------------- Mono

int Mono::total() const {
  std::uint64_t b = bits;
  int t = 0;
  while (b) {
    t += static_cast<int>(b & 0xffu);
    b >>= 8;
  }
  return t;
}

Mono Mono::plus(int i, int k) const {
  int e = get(i) + k;
  if (e < 0 || e > 255) throw ConfigError("PBW exponent out of range");
  Mono m = *this;
  m.bits &= ~(std::uint64_t{0xff} << (8 * i));
  m.bits |= static_cast<std::uint64_t>(e) << (8 * i);
  return m;
}

int Mono::last() const {
  for (int i = kMaxGenerators - 1; i >= 0; --i)
    if (get(i)) return i;
  return -1;
}

Mono Mono::from_exponents(const std::vector<int>& e) {
  if (static_cast<int>(e.size()) > kMaxGenerators) throw ConfigError("too many generators");
  Mono m;
  for (std::size_t i = 0; i < e.size(); ++i) m = m.plus(static_cast<int>(i), e[i]);
  return m;
}

std::vector<int> Mono::exponents(int n) const {
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = get(i);
  return e;
}

bool operator<(Mono a, Mono b) {
  int ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  for (int i = 0; i < Mono::kMaxGenerators; ++i)
    if (a.get(i) != b.get(i)) return a.get(i) > b.get(i);
  return false;
}

// ---------------------------------------------------------------- GeneratorSet

GeneratorSet::GeneratorSet(std::vector<std::string> names, int degree, int working)
    : names_(std::move(names)), degree_(degree), working_(working) {
  if (static_cast<int>(names_.size()) > Mono::kMaxGenerators) throw ConfigError("at most 8 generators supported");
  if (degree_ < 1) throw ConfigError("degree cutoff must be positive");
  if (working_ < degree_) throw ConfigError("working cutoff below degree cutoff");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw ConfigError("duplicate generator name: " + names_[i]);
}

int GeneratorSet::index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

int GeneratorSet::require(const std::string& name) const {
  int i = index(name);
  if (i < 0) throw ConfigError("unknown generator: " + name);
  return i;
}

std::string GeneratorSet::mono_str(Mono m) const {
  if (m.is_unit()) return "1";
  std::string s;
  for (int i = 0; i < size(); ++i) {
    int e = m.get(i);
    if (!e) continue;
    if (!s.empty()) s += "*";
    s += names_[i];
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string GeneratorSet::word_str(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (char c : w) {
    if (!s.empty()) s += "*";
    s += names_[static_cast<unsigned char>(c)];
  }
  return s;
}

// ---------------------------------------------------------------- NCPoly

namespace {

std::string coefficient_prefix(const ScalarSeries& c, bool first, bool unit_body) {
  std::string cs = c.str();
  bool compound = c.terms().size() > 1;
  std::string sep = first ? "" : " + ";
  if (!compound && !cs.empty() && cs[0] == '-') {
    sep = first ? "-" : " - ";
    cs = cs.substr(1);
  }
  if (unit_body) return sep + (compound ? "(" + cs + ")" : cs);
  if (cs == "1") return sep;
  return sep + (compound ? "(" + cs + ")" : cs) + "*";
}

}  // namespace

NCPoly NCPoly::constant(const ScalarSeries& c) {
  NCPoly p;
  p.add(Word(), c);
  return p;
}

NCPoly NCPoly::letter(int g) {
  NCPoly p;
  p.add(Word(1, static_cast<char>(g)), ScalarSeries(1));
  return p;
}

void NCPoly::add(const Word& w, const ScalarSeries& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NCPoly NCPoly::truncated(int max_len) const {
  NCPoly r;
  for (const auto& [w, c] : terms_)
    if (static_cast<int>(w.size()) <= max_len) r.terms_.emplace(w, c);
  return r;
}

int NCPoly::max_length() const {
  int m = -1;
  for (const auto& [w, c] : terms_) m = std::max(m, static_cast<int>(w.size()));
  return m;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

NCPoly NCPoly::operator-() const {
  NCPoly r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

NCPoly NCPoly::scaled(const ScalarSeries& c) const {
  NCPoly r;
  for (const auto& [w, x] : terms_) r.add(w, x * c);
  return r;
}

NCPoly NCPoly::times(const NCPoly& o, int max_len) const {
  NCPoly r;
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_)
      if (static_cast<int>(w1.size() + w2.size()) <= max_len) r.add(w1 + w2, c1 * c2);
  return r;
}

bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

std::string NCPoly::str(const GeneratorSet& g) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    s += coefficient_prefix(c, first, w.empty());
    if (!w.empty()) s += g.word_str(w);
    first = false;
  }
  return s;
}

// ---------------------------------------------------------------- PBWForm

PBWForm PBWForm::constant(const ScalarSeries& c) { return monomial(Mono{}, c); }

PBWForm PBWForm::monomial(Mono m, const ScalarSeries& c) {
  PBWForm p;
  if (!c.is_zero()) p.terms_.emplace_back(m, c);
  return p;
}

PBWForm PBWForm::from_unsorted(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  PBWForm p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

ScalarSeries PBWForm::coefficient(Mono m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Mono key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return ScalarSeries();
}

int PBWForm::max_degree() const {
  int m = -1;
  for (const auto& t : terms_) m = std::max(m, t.first.total());
  return m;
}

PBWForm& PBWForm::operator+=(const PBWForm& o) {
  if (o.terms_.empty()) return *this;
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
      ScalarSeries c = a->second + b->second;
      if (!c.is_zero()) merged.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

PBWForm& PBWForm::operator-=(const PBWForm& o) { return *this += -o; }

PBWForm PBWForm::operator-() const {
  PBWForm r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

PBWForm PBWForm::scaled(const ScalarSeries& c) const {
  return map_coefficients([&c](const ScalarSeries& x) { return x * c; });
}

bool operator==(const PBWForm& a, const PBWForm& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  return true;
}

PBWForm PBWForm::truncated(int d) const {
  PBWForm r;
  for (const auto& t : terms_)
    if (t.first.total() <= d) r.terms_.push_back(t);
  return r;
}

PBWForm PBWForm::order_truncated(int k) const {
  return map_coefficients([k](const ScalarSeries& c) { return c.truncated(k); });
}

NCPoly PBWForm::to_ncpoly() const {
  NCPoly p;
  for (const auto& [m, c] : terms_) {
    Word w;
    for (int i = 0; i < Mono::kMaxGenerators; ++i) w.append(m.get(i), static_cast<char>(i));
    p.add(w, c);
  }
  return p;
}

std::string PBWForm::str(const GeneratorSet& g) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    s += coefficient_prefix(c, first, m.is_unit());
    if (!m.is_unit()) s += g.mono_str(m);
    first = false;
  }
  return s;
}

void PBWAccumulator::add(Mono m, const ScalarSeries& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void PBWAccumulator::add(const PBWForm& p, const ScalarSeries& c) {
  if (c.is_constant()) {
    Rational k = c.constant_term();
    if (k.is_zero()) return;
    for (const auto& [m, x] : p.terms()) add(m, x * k);
    return;
  }
  for (const auto& [m, x] : p.terms()) add(m, x * c);
}

void PBWAccumulator::add(const PBWForm& p) {
  for (const auto& [m, x] : p.terms()) add(m, x);
}

PBWForm PBWAccumulator::finish() {
  std::vector<PBWForm::Term> terms;
  terms.reserve(acc_.size());
  for (auto& [m, c] : acc_)
    if (!c.is_zero()) terms.emplace_back(m, std::move(c));
  acc_.clear();
  return PBWForm::from_unsorted(std::move(terms));
}

// ---------------------------------------------------------------- RewriteSystem

RewriteSystem::RewriteSystem(GeneratorSetPtr gens, const ParamSpace* space,
                             const std::map<std::pair<int, int>, NCPoly>& corrections)
    : gens_(std::move(gens)), space_(space) {
  const int n = gens_->size();
  corrections_.assign(static_cast<std::size_t>(n * n), NCPoly());
  for (const auto& [pair, poly] : corrections) {
    auto [j, i] = pair;
    if (j < 0 || i < 0 || j >= n || i >= n || j <= i) throw ConfigError("rewrite rule must have j > i");
    for (const auto& [w, c] : poly.terms())
      for (char ch : w)
        if (static_cast<unsigned char>(ch) >= static_cast<unsigned>(n)) throw ConfigError("correction uses unknown letter");
    corrections_[j * n + i] = poly.truncated(gens_->working_cutoff());
  }
  check_termination_witness();
}

void RewriteSystem::check_termination_witness() const {
  const int n = size();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      for (const auto& [w, c] : correction(j, i).terms()) {
        // Order-zero part must strictly shrink the problem: a single letter,
        // or an ordered pair free of the rule's left generator.
        bool order_zero = false;
        for (const auto& t : c.terms())
          if (t.first.total == 0) order_zero = true;
        if (!order_zero) continue;
        bool ok = w.size() <= 1;
        if (w.size() == 2) {
          ok = w[0] <= w[1] && w[0] != static_cast<char>(j) && w[1] != static_cast<char>(j);
        }
        if (!ok) {
          throw ConfigError("rewrite rule [" + gens_->names()[j] + ", " + gens_->names()[i] +
                            "] has an undeformed correction term " + gens_->word_str(w) +
                            " that does not reduce the word");
        }
      }
    }
  }
}

PBWForm normal_order(const NCPoly& p, const RewriteSystem& rs, Strategy strategy) {
  const int dw = rs.working_cutoff();
  std::map<Word, ScalarSeries> todo;
  auto push = [&todo](const Word& w, const ScalarSeries& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = todo.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) todo.erase(it);
    }
  };
  for (const auto& [w, c] : p.terms())
    if (static_cast<int>(w.size()) <= dw) push(w, c);

  PBWAccumulator out;
  long long steps = 0;
  while (!todo.empty()) {
    // Largest word first: rewrites only produce lexicographically smaller words
    // for triangular systems, so contributions are merged before processing.
    auto it = std::prev(todo.end());
    Word w = it->first;
    ScalarSeries c = std::move(it->second);
    todo.erase(it);

    int pos = -1;
    if (strategy == Strategy::Leftmost) {
      for (std::size_t k = 0; k + 1 < w.size(); ++k)
        if (w[k] > w[k + 1]) {
          pos = static_cast<int>(k);
          break;
        }
    } else {
      for (std::size_t k = w.size(); k-- > 1;)
        if (w[k - 1] > w[k]) {
          pos = static_cast<int>(k - 1);
          break;
        }
    }
    if (pos < 0) {
      Mono m;
      for (char ch : w) m = m.plus(static_cast<unsigned char>(ch));
      out.add(m, c);
      continue;
    }
    if (++steps > kRewriteBudget) throw NonTerminating("rewrite budget exceeded in normal ordering");
    const int j = static_cast<unsigned char>(w[pos]);
    const int i = static_cast<unsigned char>(w[pos + 1]);
    Word swapped = w;
    std::swap(swapped[pos], swapped[pos + 1]);
    push(swapped, c);
    const Word prefix = w.substr(0, pos);
    const Word suffix = w.substr(pos + 2);
    for (const auto& [cw, cc] : rs.correction(j, i).terms()) {
      Word nw = prefix + cw + suffix;
      if (static_cast<int>(nw.size()) > dw) continue;
      push(nw, c * cc);
    }
  }
  return out.finish();
}

// ---------------------------------------------------------------- PbwAlgebra

PbwAlgebra::PbwAlgebra(std::shared_ptr<const RewriteSystem> rs) : rs_(std::move(rs)) {
  const int n = rs_->size();
  corrections_.resize(static_cast<std::size_t>(n * n));
}

const PBWForm& PbwAlgebra::correction(int j, int i) {
  auto& slot = corrections_[j * rs_->size() + i];
  if (!slot) slot = std::make_unique<PBWForm>(qdual::normal_order(rs_->correction(j, i), *rs_));
  return *slot;
}

void PbwAlgebra::count_step() {
  if (++steps_ > kRewriteBudget) throw NonTerminating("rewrite budget exceeded in PBW multiplication");
}

const PBWForm& PbwAlgebra::mono_times_gen(Mono m, int g) {
  Key key{m.bits, static_cast<std::uint64_t>(g)};
  if (auto it = gen_cache_.find(key); it != gen_cache_.end()) return it->second;
  if (depth_ == 0) steps_ = 0;
  count_step();

  const int last = m.last();
  if (m.total() + 1 > working_cutoff()) return gen_cache_.emplace(key, PBWForm()).first->second;
  if (last <= g) return gen_cache_.emplace(key, PBWForm::monomial(m.plus(g))).first->second;
  if (in_progress_[key]) throw NonTerminating("cyclic rewrite dependency");
  in_progress_[key] = true;
  ++depth_;
  // m g = m' X_L g = (m' g) X_L + m' [X_L, g]
  const Mono rest = m.minus(last);
  PBWAccumulator acc;
  const PBWForm& head = mono_times_gen(rest, g);
  for (const auto& [n, c] : head.terms()) acc.add(mono_times_gen(n, last), c);
  const PBWForm& corr = correction(last, g);
  for (const auto& [cm, cc] : corr.terms()) acc.add(mono_times_mono(rest, cm), cc);
  --depth_;
  in_progress_[key] = false;
  return gen_cache_.emplace(key, acc.finish()).first->second;
}

const PBWForm& PbwAlgebra::mono_times_mono(Mono a, Mono b) {
  Key key{a.bits, b.bits};
  if (auto it = mono_cache_.find(key); it != mono_cache_.end()) return it->second;
  PBWForm r;
  if (a.total() + b.total() > working_cutoff()) {
    // dropped, like any word beyond the working cutoff
  } else if (b.is_unit()) {
    r = a.total() <= working_cutoff() ? PBWForm::monomial(a) : PBWForm();
  } else {
    int first = 0;
    while (b.get(first) == 0) ++first;
    if (a.last() <= first) {
      Mono m{a.bits + b.bits};
      if (m.total() <= working_cutoff()) r = PBWForm::monomial(m);
    } else {
      // a b = (a b') X_L with L the last letter of b
      const int last = b.last();
      const PBWForm& head = mono_times_mono(a, b.minus(last));
      PBWAccumulator acc;
      for (const auto& [n, c] : head.terms()) acc.add(mono_times_gen(n, last), c);
      r = acc.finish();
    }
  }
  return mono_cache_.emplace(key, std::move(r)).first->second;
}

PBWForm PbwAlgebra::multiply(const PBWForm& a, const PBWForm& b) {
  PBWAccumulator acc;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) acc.add(mono_times_mono(ma, mb), ca * cb);
  return acc.finish();
}

PBWForm PbwAlgebra::normal_order(const NCPoly& p) {
  PBWAccumulator acc;
  for (const auto& [w, c] : p.terms()) {
    if (static_cast<int>(w.size()) > working_cutoff()) continue;
    PBWForm cur = PBWForm::monomial(Mono{});
    for (char ch : w) {
      PBWAccumulator step;
      for (const auto& [m, x] : cur.terms()) step.add(mono_times_gen(m, static_cast<unsigned char>(ch)), x);
      cur = step.finish();
    }
    acc.add(cur, c);
  }
  return acc.finish();
}

PBWForm multiply(const PBWForm& a, const PBWForm& b, const std::shared_ptr<const RewriteSystem>& rs) {
  PbwAlgebra alg(rs);
  return alg.multiply(a, b);
}

}  // namespace qdual
