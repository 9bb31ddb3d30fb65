#include "qdual/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace qdual {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

mpq_class mpq_from(std::int64_t n, std::int64_t d) {
  mpz_class zn, zd;
  mpz_set_si(zn.get_mpz_t(), n);
  mpz_set_si(zd.get_mpz_t(), d);
  mpq_class q(zn, zd);
  q.canonicalize();
  return q;
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  u128 g = gcd128(uabs(nn), static_cast<u128>(dd));
  if (g > 1) {
    nn /= static_cast<i128>(g);
    dd /= static_cast<i128>(g);
  }
  if (fits64(nn) && fits64(dd)) {
    num_ = static_cast<std::int64_t>(nn);
    den_ = static_cast<std::int64_t>(dd);
  } else {
    assign_big(mpq_from(n, d));
  }
}

Rational::Rational(const mpq_class& q) { assign_big(q); }

void Rational::assign_big(mpq_class q) {
  q.canonicalize();
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const mpq_class>(std::move(q));
  }
}

Rational Rational::parse(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(str, 10) != 0) throw std::invalid_argument("bad rational literal: " + str);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + str);
  return Rational(q);
}

Rational Rational::factorial(int n) {
  Rational r(1);
  for (int k = 2; k <= n; ++k) r *= Rational(k);
  return r;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpq_class Rational::to_mpq() const { return big_ ? *big_ : mpq_from(num_, den_); }

std::string Rational::num_str() const {
  return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::den_str() const {
  return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

std::string Rational::str() const {
  if (is_integer()) return num_str();
  return num_str() + "/" + den_str();
}

Rational Rational::operator-() const {
  Rational r;
  if (big_ || num_ == std::numeric_limits<std::int64_t>::min()) {
    r.assign_big(-to_mpq());
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
    if (fits64(n) && fits64(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
  }
  assign_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    // Cross-cancel first so the products stay small.
    u128 g1 = gcd128(uabs(num_), static_cast<u128>(o.den_));
    u128 g2 = gcd128(uabs(o.num_), static_cast<u128>(den_));
    i128 n = (static_cast<i128>(num_) / static_cast<i128>(g1)) *
             (static_cast<i128>(o.num_) / static_cast<i128>(g2));
    i128 d = (static_cast<i128>(den_) / static_cast<i128>(g2)) *
             (static_cast<i128>(o.den_) / static_cast<i128>(g1));
    if (fits64(n) && fits64(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
  }
  assign_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  if (!o.big_) {
    Rational inv;
    if (o.num_ == std::numeric_limits<std::int64_t>::min()) {
      inv.assign_big(1 / o.to_mpq());
    } else {
      inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
      inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
    }
    return *this *= inv;
  }
  assign_big(to_mpq() / o.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical form: a big value never fits inline
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
  }
  return a.to_mpq() < b.to_mpq();
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>{}(big_->get_str());
  return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace qdual
