#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "rotcalc/generator.hpp"
#include "rotcalc/polynomial.hpp"
#include "rotcalc/rational.hpp"

namespace rotcalc {

// Product of (u_i - u_j)^m over pairs i < j.
struct Denominator {
  std::array<std::uint8_t, kNumPairs> mult{};

  bool empty() const;
  int degree() const;
  int of(int i, int j) const { return mult[pair_index(i, j)]; }

  static Denominator pair(int i, int j, int power = 1);
  static Denominator lcm(const Denominator& a, const Denominator& b);

  Denominator& operator+=(const Denominator& o);
  friend Denominator operator+(Denominator a, const Denominator& b) { return a += b; }
  friend bool operator==(const Denominator&, const Denominator&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const Denominator& d) {
    return H::combine_contiguous(std::move(h), d.mult.data(), d.mult.size());
  }
};

// Numerator over a product of u-differences, kept normalized: no Delta
// factor of the denominator divides the numerator, and zero carries the
// empty denominator. Since the Delta factors are distinct primes of the
// coefficient ring, the normalized form is canonical.
class Expression {
 public:
  Expression() = default;
  Expression(std::int64_t c);     // NOLINT(google-explicit-constructor)
  Expression(const Rational& c);  // NOLINT(google-explicit-constructor)

  static Expression var(const GeneratorSymbol& g, int power = 1);
  static Expression u(int i) { return var(GeneratorSymbol::u(i)); }
  static Expression s(int i, int power = 1) { return var(GeneratorSymbol::s(i), power); }
  static Expression g(int i) { return s(i, 2); }
  static Expression r(int i, int j) { return var(GeneratorSymbol::r(i, j)); }
  static Expression t(int level, int i) { return var(GeneratorSymbol::t(level, i)); }
  static Expression monomial(const Monomial& m, const Rational& c = Rational(1));
  // 1/(u_i - u_j)^power for any i != j.
  static Expression inverse_delta(int i, int j, int power = 1);
  static Expression normalized(Polynomial num, Denominator den);

  const Polynomial& num() const { return num_; }
  const Denominator& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  std::size_t term_count() const { return num_.size(); }
  int delta_degree(int i, int j) const { return den_.of(i, j); }
  int max_t_level() const;
  bool mentions(const GeneratorSymbol& g) const { return num_.mentions(var_index(g)); }

  Expression operator-() const;
  Expression& operator+=(const Expression& b);
  Expression& operator-=(const Expression& b);
  Expression& operator*=(const Expression& b);
  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  friend Expression operator*(const Expression& a, const Expression& b);

  // Structural equality of normalized forms, which is mathematical equality.
  friend bool operator==(const Expression& a, const Expression& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

  Expression scaled(const Rational& c, const Monomial& m = Monomial{}) const;
  Expression pow(int e) const;
  Expression with_negated_term(std::size_t index) const;

 private:
  Polynomial num_;
  Denominator den_;
};

bool equals(const Expression& a, const Expression& b);

struct Degree {
  enum class Kind { Zero, Homogeneous, NonHomogeneous };
  Kind kind = Kind::Zero;
  int value = 0;

  static Degree homogeneous(int d) { return {Kind::Homogeneous, d}; }
  bool is(int d) const { return kind == Kind::Homogeneous && value == d; }
  friend bool operator==(const Degree&, const Degree&) = default;
};

Degree degree(const Expression& e);

// Sum of the terms whose exponents on the listed generators match exactly,
// with those generators stripped. The generators must not be u's, so the
// result is a well-defined coefficient of the rational function.
Expression coefficient(const Expression& e,
                       const std::vector<std::pair<GeneratorSymbol, int>>& selector);

// Total set of t-levels that occur in e.
std::vector<int> t_levels(const Expression& e);

// Highest Delta multiplicity over all pairs.
int max_pole_order(const Expression& e);

// Canonical one-line rendering with deterministic term order.
std::string to_text(const Expression& e);

// Accumulates many scaled terms and products before a single normalization.
// Terms are grouped by denominator; finish() clears every group to the
// common denominator once.
class ExprSum {
 public:
  void add(const Expression& e, const Rational& c = Rational(1),
           const Monomial& m = Monomial{}, const Denominator& extra = Denominator{});
  void add_product(const Expression& a, const Expression& b, const Rational& c = Rational(1),
                   const Monomial& m = Monomial{}, const Denominator& extra = Denominator{});
  void add_term(const Monomial& m, const Rational& c, const Denominator& den = Denominator{});
  ExprSum& operator+=(const Expression& e) {
    add(e);
    return *this;
  }
  ExprSum& operator-=(const Expression& e) {
    add(e, Rational(-1));
    return *this;
  }
  Expression finish();

 private:
  absl::flat_hash_map<Denominator, TermMap> groups_;
};

}  // namespace rotcalc
