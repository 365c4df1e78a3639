#include "rotcalc/rational.hpp"

#include <numeric>
#include <ostream>

#include "rotcalc/errors.hpp"

namespace rotcalc {
namespace {

constexpr std::int64_t kInlineLimit = std::int64_t{1} << 62;

using u128 = unsigned __int128;

u128 uabs(__int128 v) { return v < 0 ? u128(-v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from_i128(__int128 v) {
  u128 mag = uabs(v);
  std::uint64_t words[2] = {static_cast<std::uint64_t>(mag),
                            static_cast<std::uint64_t>(mag >> 64)};
  mpz_class z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (v < 0) z = -z;
  return z;
}

bool fits_inline(const mpz_class& z) {
  return mpz_sizeinbase(z.get_mpz_t(), 2) <= 62;
}

}  // namespace

Rational::Rational(std::int64_t n) {
  if (n > -kInlineLimit && n < kInlineLimit) {
    num_ = n;
  } else {
    assign_big(mpq_class(mpz_from_i128(n)));
  }
}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error("Rational: zero denominator");
  set_from_i128(n, d);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  assign_big(std::move(c));
}

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    if (other.big_) {
      if (big_) {
        *big_ = *other.big_;
      } else {
        big_ = std::make_unique<mpq_class>(*other.big_);
      }
    } else {
      big_.reset();
    }
  }
  return *this;
}

void Rational::assign_big(mpq_class q) {
  if (fits_inline(q.get_num()) && fits_inline(q.get_den())) {
    big_.reset();
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    return;
  }
  big_ = std::make_unique<mpq_class>(std::move(q));
  num_ = 0;
  den_ = 1;
}

void Rational::set_from_i128(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    big_.reset();
    num_ = 0;
    den_ = 1;
    return;
  }
  u128 g = gcd128(uabs(n), u128(d));
  if (g > 1) {
    n /= static_cast<__int128>(g);
    d /= static_cast<__int128>(g);
  }
  if (n > -kInlineLimit && n < kInlineLimit && d < kInlineLimit) {
    big_.reset();
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    return;
  }
  mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
  assign_big(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("invalid rational: " + s);
  if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
  return Rational(q);
}

bool Rational::is_integer() const {
  return big_ ? big_->get_den() == 1 : den_ == 1;
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_from_i128(num_), mpz_from_i128(den_));
  return q;
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  Rational r;
  if (big_) {
    r.assign_big(-*big_);
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error("Rational: inverse of zero");
  Rational r;
  if (big_) {
    mpq_class q = 1 / *big_;
    r.assign_big(std::move(q));
  } else {
    r.set_from_i128(den_, num_);
  }
  return r;
}

Rational& Rational::operator+=(const Rational& b) {
  if (!big_ && !b.big_) {
    if (den_ == b.den_) {
      __int128 n = __int128(num_) + b.num_;
      if (den_ == 1) {
        if (n > -kInlineLimit && n < kInlineLimit) {
          num_ = static_cast<std::int64_t>(n);
          return *this;
        }
        set_from_i128(n, 1);
        return *this;
      }
      set_from_i128(n, den_);
      return *this;
    }
    __int128 n = __int128(num_) * b.den_ + __int128(b.num_) * den_;
    __int128 d = __int128(den_) * b.den_;
    set_from_i128(n, d);
    return *this;
  }
  assign_big(to_mpq() + b.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& b) { return *this += -b; }

Rational& Rational::operator*=(const Rational& b) {
  if (!big_ && !b.big_) {
    if (num_ == 0 || b.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && b.den_ == 1) {
      __int128 n = __int128(num_) * b.num_;
      if (n > -kInlineLimit && n < kInlineLimit) {
        num_ = static_cast<std::int64_t>(n);
        return *this;
      }
      set_from_i128(n, 1);
      return *this;
    }
    std::int64_t g1 = std::gcd(num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, den_);
    __int128 n = __int128(num_ / g1) * (b.num_ / g2);
    __int128 d = __int128(den_ / g2) * (b.den_ / g1);
    if (n > -kInlineLimit && n < kInlineLimit && d < kInlineLimit) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    set_from_i128(n, d);
    return *this;
  }
  assign_big(to_mpq() * b.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& b) { return *this *= b.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  // Canonical storage means a big value never equals an inline one.
  return false;
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
  }
  return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace rotcalc
