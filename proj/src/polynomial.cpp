#include "rotcalc/polynomial.hpp"

#include <algorithm>
#include <cassert>

namespace rotcalc {

Polynomial::Polynomial(const Rational& c) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  Polynomial p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Polynomial Polynomial::from_map(TermMap&& map) {
  Polynomial p;
  p.terms_.reserve(map.size());
  for (auto& [m, c] : map) {
    if (!c.is_zero()) p.terms_.push_back({m, std::move(c)});
  }
  map.clear();
  std::sort(p.terms_.begin(), p.terms_.end(),
            [](const Term& a, const Term& b) { return a.mono < b.mono; });
  return p;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

template <typename Combine>
Polynomial merge(const Polynomial& a, const Polynomial& b, Combine combine, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->mono < ib->mono)) {
      out.push_back(*ia++);
    } else if (ia == a.terms().end() || ib->mono < ia->mono) {
      out.push_back({ib->mono, negate_b ? -ib->coeff : ib->coeff});
      ++ib;
    } else {
      Rational c = combine(ia->coeff, ib->coeff);
      if (!c.is_zero()) out.push_back({ia->mono, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return Polynomial::from_terms(std::move(out));
}

}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return merge(a, b, [](const Rational& x, const Rational& y) { return x + y; }, false);
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) return a;
  return merge(a, b, [](const Rational& x, const Rational& y) { return x - y; }, true);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b.scaled(a.terms_[0].coeff, a.terms_[0].mono);
  if (b.size() == 1) return a.scaled(b.terms_[0].coeff, b.terms_[0].mono);
  TermMap map;
  map.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20));
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) accumulate(map, ta.mono * tb.mono, ta.coeff * tb.coeff);
  }
  return Polynomial::from_map(std::move(map));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a.terms_[k].mono == b.terms_[k].mono) || a.terms_[k].coeff != b.terms_[k].coeff) {
      return false;
    }
  }
  return true;
}

Polynomial Polynomial::scaled(const Rational& c, const Monomial& m) const {
  if (c.is_zero()) return {};
  Polynomial p;
  p.terms_.reserve(terms_.size());
  bool unit = c.is_one();
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, unit ? t.coeff : t.coeff * c});
  return p;
}

bool Polynomial::mentions(int var) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const Term& t) { return t.mono.exp[var] != 0; });
}

bool Polynomial::divisible_by_delta(int i, int j) const {
  if (is_zero()) return true;
  const int ui = u_var(i);
  const int uj = u_var(j);
  if (!mentions(ui) && !mentions(uj)) return false;
  TermMap map;
  map.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    m.exp[uj] = static_cast<std::int8_t>(m.exp[uj] + m.exp[ui]);
    m.exp[ui] = 0;
    accumulate(map, m, t.coeff);
  }
  return std::all_of(map.begin(), map.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

Polynomial Polynomial::divide_by_delta(int i, int j) const {
  // u_i^a = (u_i - u_j) * sum_{t<a} u_i^t u_j^{a-1-t} + u_j^a; the remainder
  // terms sum to zero when the division is exact.
  const int ui = u_var(i);
  const int uj = u_var(j);
  TermMap map;
  map.reserve(terms_.size() * 2);
  for (const auto& t : terms_) {
    const int a = t.mono.exp[ui];
    if (a == 0) continue;
    Monomial m = t.mono;
    m.exp[ui] = 0;
    m.exp[uj] = static_cast<std::int8_t>(m.exp[uj] + a - 1);
    for (int k = 0; k < a; ++k) {
      accumulate(map, m, t.coeff);
      m.exp[ui] = static_cast<std::int8_t>(m.exp[ui] + 1);
      m.exp[uj] = static_cast<std::int8_t>(m.exp[uj] - 1);
    }
  }
  return Polynomial::from_map(std::move(map));
}

Polynomial Polynomial::times_delta(int i, int j, int power) const {
  Polynomial p = *this;
  const Monomial ui = Monomial::var(u_var(i));
  const Monomial uj = Monomial::var(u_var(j));
  for (int k = 0; k < power; ++k) {
    TermMap map;
    map.reserve(p.size() * 2);
    for (const auto& t : p.terms_) {
      accumulate(map, t.mono * ui, t.coeff);
      accumulate(map, t.mono * uj, -t.coeff);
    }
    p = Polynomial::from_map(std::move(map));
  }
  return p;
}

Polynomial Polynomial::with_negated_term(std::size_t index) const {
  assert(index < terms_.size());
  Polynomial p = *this;
  p.terms_[index].coeff = -p.terms_[index].coeff;
  return p;
}

}  // namespace rotcalc
