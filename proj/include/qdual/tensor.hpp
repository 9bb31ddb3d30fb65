#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qdual/freealg.hpp"

namespace qdual {

/// Element of the L-fold tensor power of a PBW algebra: one multidegree per
/// leg mapped to a coefficient. Terms are kept sorted by key.
template <int L>
class Tensor {
 public:
  using Key = std::array<Mono, L>;
  using Term = std::pair<Key, ScalarSeries>;

  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 0;
      for (Mono m : k) h = h * 0x100000001b3ull ^ MonoHash{}(m);
      return h;
    }
  };

  static bool key_less(const Key& a, const Key& b) {
    for (int i = 0; i < L; ++i) {
      if (a[i] < b[i]) return true;
      if (b[i] < a[i]) return false;
    }
    return false;
  }

  class Accumulator {
   public:
    void add(const Key& k, const ScalarSeries& c) {
      if (c.is_zero()) return;
      auto [it, inserted] = acc_.try_emplace(k, c);
      if (!inserted) it->second += c;
    }
    void add(const Tensor& t, const ScalarSeries& c = ScalarSeries(1)) {
      for (const auto& [k, x] : t.terms()) add(k, x * c);
    }
    Tensor finish() {
      std::vector<Term> terms;
      terms.reserve(acc_.size());
      for (auto& [k, c] : acc_)
        if (!c.is_zero()) terms.emplace_back(k, std::move(c));
      acc_.clear();
      std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return key_less(a.first, b.first); });
      Tensor t;
      t.terms_ = std::move(terms);
      return t;
    }

   private:
    std::unordered_map<Key, ScalarSeries, KeyHash> acc_;
  };

  Tensor() = default;

  static Tensor simple(const Key& k, const ScalarSeries& c = ScalarSeries(1)) {
    Tensor t;
    if (!c.is_zero()) t.terms_.emplace_back(k, c);
    return t;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ScalarSeries coefficient(const Key& k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, const Key& key) { return key_less(t.first, key); });
    if (it != terms_.end() && it->first == k) return it->second;
    return ScalarSeries();
  }

  Tensor operator-() const {
    Tensor r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  Tensor& operator+=(const Tensor& o) {
    Accumulator acc;
    acc.add(*this);
    acc.add(o);
    *this = acc.finish();
    return *this;
  }
  Tensor& operator-=(const Tensor& o) { return *this += -o; }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  Tensor scaled(const ScalarSeries& c) const {
    Accumulator acc;
    acc.add(*this, c);
    return acc.finish();
  }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
    return true;
  }
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

  /// Keeps terms whose every leg has total degree <= d.
  Tensor leg_truncated(int d) const {
    Tensor r;
    for (const auto& t : terms_) {
      bool keep = true;
      for (Mono m : t.first) keep = keep && m.total() <= d;
      if (keep) r.terms_.push_back(t);
    }
    return r;
  }
  /// Keeps terms whose summed leg degree is <= d.
  Tensor total_truncated(int d) const {
    Tensor r;
    for (const auto& t : terms_) {
      int s = 0;
      for (Mono m : t.first) s += m.total();
      if (s <= d) r.terms_.push_back(t);
    }
    return r;
  }
  template <class F>
  Tensor map_coefficients(F f) const {
    Tensor r;
    for (const auto& [k, c] : terms_) {
      ScalarSeries v = f(c);
      if (!v.is_zero()) r.terms_.emplace_back(k, std::move(v));
    }
    return r;
  }

  std::string str(const GeneratorSet& g) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      std::string cs = c.str();
      bool compound = c.terms().size() > 1;
      if (!first) s += " + ";
      first = false;
      if (compound) {
        s += "(" + cs + ")*";
      } else if (cs != "1") {
        s += cs + "*";
      }
      for (int i = 0; i < L; ++i) {
        if (i) s += " (x) ";
        s += g.mono_str(k[i]);
      }
    }
    return s;
  }

 private:
  std::vector<Term> terms_;
};

using TensorElement = Tensor<2>;
using Tensor3 = Tensor<3>;

inline TensorElement flip(const TensorElement& t) {
  TensorElement::Accumulator acc;
  for (const auto& [k, c] : t.terms()) acc.add({k[1], k[0]}, c);
  return acc.finish();
}

/// Outer product of two normal-ordered legs.
inline TensorElement tensor_of(const PBWForm& a, const PBWForm& b) {
  TensorElement::Accumulator acc;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) acc.add({ma, mb}, ca * cb);
  return acc.finish();
}

/// Product in the tensor square; legs multiply independently.
inline TensorElement tensor_multiply(PbwAlgebra& alg, const TensorElement& x, const TensorElement& y) {
  TensorElement::Accumulator acc;
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [ky, cy] : y.terms()) {
      ScalarSeries c = cx * cy;
      if (c.is_zero()) continue;
      const PBWForm& left = alg.mono_times_mono(kx[0], ky[0]);
      if (left.is_zero()) continue;
      const PBWForm& right = alg.mono_times_mono(kx[1], ky[1]);
      for (const auto& [ml, cl] : left.terms()) {
        ScalarSeries cc = c * cl;
        if (cc.is_zero()) continue;
        for (const auto& [mr, cr] : right.terms()) acc.add({ml, mr}, cc * cr);
      }
    }
  }
  return acc.finish();
}

}  // namespace qdual
