#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qdual/scalar.hpp"

namespace qdual {

/// PBW multidegree: one exponent per generator, packed as bytes.
struct Mono {
  static constexpr int kMaxGenerators = 8;
  std::uint64_t bits = 0;

  int get(int i) const { return static_cast<int>((bits >> (8 * i)) & 0xffu); }
  int total() const;
  Mono plus(int i, int k = 1) const;
  Mono minus(int i, int k = 1) const { return plus(i, -k); }
  /// Highest generator index with a nonzero exponent, or -1 for the unit.
  int last() const;
  bool is_unit() const { return bits == 0; }
  static Mono unit(int i) { return Mono{}.plus(i); }
  static Mono from_exponents(const std::vector<int>& e);
  std::vector<int> exponents(int n) const;

  friend bool operator==(Mono a, Mono b) { return a.bits == b.bits; }
  friend bool operator!=(Mono a, Mono b) { return a.bits != b.bits; }
  friend bool operator<(Mono a, Mono b);
};

struct MonoHash {
  std::size_t operator()(Mono m) const { return std::hash<std::uint64_t>{}(m.bits * 0x9e3779b97f4a7c15ull); }
};

/// Word in the free algebra: one char per letter holding the generator index.
using Word = std::string;

class GeneratorSet {
 public:
  GeneratorSet(std::vector<std::string> names, int degree, int working);

  const std::vector<std::string>& names() const { return names_; }
  int size() const { return static_cast<int>(names_.size()); }
  int index(const std::string& name) const;
  int require(const std::string& name) const;
  int degree_cutoff() const { return degree_; }
  int working_cutoff() const { return working_; }

  std::string mono_str(Mono m) const;
  std::string word_str(const Word& w) const;

 private:
  std::vector<std::string> names_;
  int degree_;
  int working_;
};

using GeneratorSetPtr = std::shared_ptr<const GeneratorSet>;

/// Noncommutative polynomial: word -> coefficient.
class NCPoly {
 public:
  NCPoly() = default;
  static NCPoly constant(const ScalarSeries& c);
  static NCPoly letter(int g);

  const std::map<Word, ScalarSeries>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Word& w, const ScalarSeries& c);
  /// Drops words longer than `max_len`.
  NCPoly truncated(int max_len) const;
  int max_length() const;

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly operator-() const;
  NCPoly scaled(const ScalarSeries& c) const;
  /// Concatenation product, dropping words longer than `max_len`.
  NCPoly times(const NCPoly& o, int max_len) const;
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend bool operator==(const NCPoly& a, const NCPoly& b);

  std::string str(const GeneratorSet& g) const;

 private:
  std::map<Word, ScalarSeries> terms_;
};

/// Normal-ordered element: multidegree -> coefficient, sorted by multidegree.
class PBWForm {
 public:
  using Term = std::pair<Mono, ScalarSeries>;

  PBWForm() = default;
  static PBWForm constant(const ScalarSeries& c);
  static PBWForm monomial(Mono m, const ScalarSeries& c = ScalarSeries(1));
  static PBWForm from_unsorted(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ScalarSeries coefficient(Mono m) const;
  int max_degree() const;

  PBWForm& operator+=(const PBWForm& o);
  PBWForm& operator-=(const PBWForm& o);
  PBWForm operator-() const;
  PBWForm scaled(const ScalarSeries& c) const;
  friend PBWForm operator+(PBWForm a, const PBWForm& b) { return a += b; }
  friend PBWForm operator-(PBWForm a, const PBWForm& b) { return a -= b; }
  friend bool operator==(const PBWForm& a, const PBWForm& b);
  friend bool operator!=(const PBWForm& a, const PBWForm& b) { return !(a == b); }

  /// Keeps monomials with total degree <= d.
  PBWForm truncated(int d) const;
  /// Keeps coefficient terms of deformation degree <= k.
  PBWForm order_truncated(int k) const;
  /// Applies f to every coefficient (zero results dropped).
  template <class F>
  PBWForm map_coefficients(F f) const {
    std::vector<Term> out;
    for (const auto& [m, c] : terms_) {
      ScalarSeries v = f(c);
      if (!v.is_zero()) out.emplace_back(m, std::move(v));
    }
    PBWForm r;
    r.terms_ = std::move(out);
    return r;
  }
  NCPoly to_ncpoly() const;

  std::string str(const GeneratorSet& g) const;

 private:
  std::vector<Term> terms_;
};

/// Accumulates PBW terms with hashing, then emits a sorted PBWForm.
class PBWAccumulator {
 public:
  void add(Mono m, const ScalarSeries& c);
  void add(const PBWForm& p, const ScalarSeries& c);
  void add(const PBWForm& p);
  PBWForm finish();

 private:
  std::unordered_map<Mono, ScalarSeries, MonoHash> acc_;
};

/// Triangular rewrite rules X_j X_i -> X_i X_j + correction(j, i) for j > i.
class RewriteSystem {
 public:
  RewriteSystem(GeneratorSetPtr gens, const ParamSpace* space,
                const std::map<std::pair<int, int>, NCPoly>& corrections);

  const GeneratorSetPtr& generators() const { return gens_; }
  const ParamSpace* space() const { return space_; }
  int size() const { return gens_->size(); }
  /// Correction for the pair j > i (the commutator [X_j, X_i]).
  const NCPoly& correction(int j, int i) const { return corrections_[j * size() + i]; }
  int working_cutoff() const { return gens_->working_cutoff(); }

 private:
  void check_termination_witness() const;

  GeneratorSetPtr gens_;
  const ParamSpace* space_;
  std::vector<NCPoly> corrections_;
};

enum class Strategy { Leftmost, Rightmost };

constexpr long long kRewriteBudget = 10'000'000;

/// Reference normal ordering by direct word rewriting.
PBWForm normal_order(const NCPoly& p, const RewriteSystem& rs, Strategy strategy = Strategy::Leftmost);

/// Memoizing PBW multiplication engine bound to one rewrite system.
/// Not thread-safe: each thread should own its engine.
class PbwAlgebra {
 public:
  explicit PbwAlgebra(std::shared_ptr<const RewriteSystem> rs);

  const RewriteSystem& rules() const { return *rs_; }
  const GeneratorSet& generators() const { return *rs_->generators(); }
  const ParamSpace* space() const { return rs_->space(); }
  int working_cutoff() const { return rs_->working_cutoff(); }

  const PBWForm& mono_times_gen(Mono m, int g);
  const PBWForm& mono_times_mono(Mono a, Mono b);
  PBWForm multiply(const PBWForm& a, const PBWForm& b);
  PBWForm normal_order(const NCPoly& p);
  PBWForm commutator(const PBWForm& a, const PBWForm& b) { return multiply(a, b) - multiply(b, a); }
  PBWForm generator(int g) const { return PBWForm::monomial(Mono::unit(g)); }
  /// Normal-ordered correction for j > i.
  const PBWForm& correction(int j, int i);

 private:
  std::shared_ptr<const RewriteSystem> rs_;
  std::vector<std::unique_ptr<PBWForm>> corrections_;
  struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
      return std::hash<std::uint64_t>{}(p.first * 0x9e3779b97f4a7c15ull ^ (p.second + 0x7f4a7c15ull));
    }
  };
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  void count_step();

  std::unordered_map<Key, PBWForm, PairHash> gen_cache_;
  std::unordered_map<Key, PBWForm, PairHash> mono_cache_;
  std::unordered_map<Key, bool, PairHash> in_progress_;
  long long steps_ = 0;
  int depth_ = 0;
};

/// Free functions mirroring the engine for one-off use.
PBWForm multiply(const PBWForm& a, const PBWForm& b, const std::shared_ptr<const RewriteSystem>& rs);

}  // namespace qdual
