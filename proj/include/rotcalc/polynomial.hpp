#pragma once

#include <cstddef>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "rotcalc/generator.hpp"
#include "rotcalc/rational.hpp"

namespace rotcalc {

struct Term {
  Monomial mono;
  Rational coeff;
};

// Unordered scratch space for building polynomials term by term.
using TermMap = absl::flat_hash_map<Monomial, Rational>;

inline void accumulate(TermMap& map, const Monomial& m, const Rational& c) {
  auto [it, inserted] = map.try_emplace(m, c);
  if (!inserted) it->second += c;
}

// Sparse Laurent polynomial (negative exponents only in s) with exact
// coefficients. Terms are kept sorted by monomial with no zero coefficients,
// so structural equality is mathematical equality.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Rational& c);
  static Polynomial monomial(const Monomial& m, const Rational& c = Rational(1));
  static Polynomial from_terms(std::vector<Term> terms);
  static Polynomial from_map(TermMap&& map);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  // c * m * this; monomial translation preserves the term order.
  Polynomial scaled(const Rational& c, const Monomial& m = Monomial{}) const;

  bool mentions(int var) const;

  // Exact division by (u_i - u_j). divisible_by_delta tests P(u_i := u_j) == 0.
  bool divisible_by_delta(int i, int j) const;
  Polynomial divide_by_delta(int i, int j) const;
  Polynomial times_delta(int i, int j, int power = 1) const;

  // Replace the coefficient sign of one term; used by mutation fuzzing.
  Polynomial with_negated_term(std::size_t index) const;

 private:
  std::vector<Term> terms_;
};

}  // namespace rotcalc
