#include "rotcalc/expression.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "rotcalc/errors.hpp"

namespace rotcalc {

bool Denominator::empty() const {
  return std::all_of(mult.begin(), mult.end(), [](std::uint8_t m) { return m == 0; });
}

int Denominator::degree() const {
  int d = 0;
  for (auto m : mult) d += m;
  return d;
}

Denominator Denominator::pair(int i, int j, int power) {
  Denominator d;
  d.mult[pair_index(i, j)] = static_cast<std::uint8_t>(power);
  return d;
}

Denominator Denominator::lcm(const Denominator& a, const Denominator& b) {
  Denominator d;
  for (int p = 0; p < kNumPairs; ++p) d.mult[p] = std::max(a.mult[p], b.mult[p]);
  return d;
}

Denominator& Denominator::operator+=(const Denominator& o) {
  for (int p = 0; p < kNumPairs; ++p) mult[p] = static_cast<std::uint8_t>(mult[p] + o.mult[p]);
  return *this;
}

namespace {

// num * prod Delta^(to - from), with from <= to componentwise.
Polynomial raise(Polynomial num, const Denominator& from, const Denominator& to) {
  for (int p = 0; p < kNumPairs; ++p) {
    int extra = to.mult[p] - from.mult[p];
    assert(extra >= 0);
    if (extra > 0) {
      auto [i, j] = pair_of(p);
      num = num.times_delta(i, j, extra);
    }
  }
  return num;
}

// Cancel Delta factors of den from num as far as possible.
void cancel(Polynomial& num, Denominator& den) {
  for (int p = 0; p < kNumPairs; ++p) {
    if (den.mult[p] == 0) continue;
    auto [i, j] = pair_of(p);
    while (den.mult[p] > 0 && num.divisible_by_delta(i, j)) {
      num = num.divide_by_delta(i, j);
      --den.mult[p];
    }
  }
}

}  // namespace

Expression::Expression(std::int64_t c) : num_(Rational(c)) {}

Expression::Expression(const Rational& c) : num_(c) {}

Expression Expression::var(const GeneratorSymbol& g, int power) {
  Expression e;
  e.num_ = Polynomial::monomial(Monomial::of(g, power));
  return e;
}

Expression Expression::monomial(const Monomial& m, const Rational& c) {
  Expression e;
  e.num_ = Polynomial::monomial(m, c);
  return e;
}

Expression Expression::inverse_delta(int i, int j, int power) {
  if (i == j) throw BadIndexPair("inverse_delta needs distinct indices");
  Expression e;
  e.num_ = Polynomial(Rational((i > j && power % 2 == 1) ? -1 : 1));
  e.den_ = Denominator::pair(i, j, power);
  return e;
}

Expression Expression::normalized(Polynomial num, Denominator den) {
  Expression e;
  if (num.is_zero()) return e;
  cancel(num, den);
  e.num_ = std::move(num);
  e.den_ = den;
  return e;
}

int Expression::max_t_level() const {
  int level = 0;
  for (const auto& t : num_.terms()) level = std::max(level, t.mono.max_t_level());
  return level;
}

Expression Expression::operator-() const {
  Expression e;
  e.num_ = -num_;
  e.den_ = den_;
  return e;
}

Expression& Expression::operator+=(const Expression& b) {
  if (b.is_zero()) return *this;
  if (is_zero()) return *this = b;
  if (den_ == b.den_) {
    *this = normalized(num_ + b.num_, den_);
  } else {
    Denominator l = Denominator::lcm(den_, b.den_);
    *this = normalized(raise(num_, den_, l) + raise(b.num_, b.den_, l), l);
  }
  return *this;
}

Expression& Expression::operator-=(const Expression& b) { return *this += -b; }

Expression operator*(const Expression& a, const Expression& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // Both operands are normalized and each Delta is prime, so a factor of
  // one denominator can only cancel against the other numerator.
  Polynomial na = a.num_;
  Polynomial nb = b.num_;
  Denominator da = a.den_;
  Denominator db = b.den_;
  cancel(nb, da);
  cancel(na, db);
  Expression e;
  e.num_ = na * nb;
  e.den_ = da + db;
  return e;
}

Expression& Expression::operator*=(const Expression& b) { return *this = *this * b; }

Expression Expression::scaled(const Rational& c, const Monomial& m) const {
  if (c.is_zero()) return {};
  Expression e;
  e.num_ = num_.scaled(c, m);
  e.den_ = den_;
  return e;
}

Expression Expression::pow(int e) const {
  assert(e >= 0);
  Expression result(1);
  for (int k = 0; k < e; ++k) result *= *this;
  return result;
}

Expression Expression::with_negated_term(std::size_t index) const {
  Expression e;
  e.num_ = num_.with_negated_term(index);
  e.den_ = den_;
  return normalized(e.num_, e.den_);
}

bool equals(const Expression& a, const Expression& b) { return (a - b).is_zero(); }

Degree degree(const Expression& e) {
  if (e.is_zero()) return {};
  const int shift = e.den().degree();
  const auto& terms = e.num().terms();
  int d = terms.front().mono.degree();
  for (const auto& t : terms) {
    if (t.mono.degree() != d) return {Degree::Kind::NonHomogeneous, 0};
  }
  return Degree::homogeneous(d + shift);
}

Expression coefficient(const Expression& e,
                       const std::vector<std::pair<GeneratorSymbol, int>>& selector) {
  std::vector<std::pair<int, int>> vars;
  for (const auto& [g, power] : selector) {
    if (g.kind == GeneratorSymbol::Kind::U) throw Error("coefficient: u is not a valid selector");
    vars.emplace_back(var_index(g), power);
  }
  std::vector<Term> picked;
  for (const auto& t : e.num().terms()) {
    bool match = std::all_of(vars.begin(), vars.end(),
                             [&](const auto& vp) { return t.mono.exp[vp.first] == vp.second; });
    if (!match) continue;
    Monomial m = t.mono;
    for (const auto& vp : vars) m.exp[vp.first] = 0;
    picked.push_back({m, t.coeff});
  }
  return Expression::normalized(Polynomial::from_terms(std::move(picked)), e.den());
}

std::vector<int> t_levels(const Expression& e) {
  std::set<int> levels;
  for (const auto& t : e.num().terms()) {
    for (int v = kTOffset; v < kNumVars; ++v) {
      if (t.mono.exp[v] != 0) levels.insert(t_level_of(v));
    }
  }
  return {levels.begin(), levels.end()};
}

int max_pole_order(const Expression& e) {
  int m = 0;
  for (auto x : e.den().mult) m = std::max<int>(m, x);
  return m;
}

namespace {

std::string monomial_text(const Monomial& m) {
  std::string out;
  for (int v = 0; v < kNumVars; ++v) {
    if (m.exp[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += var_symbol(v).name();
    if (m.exp[v] != 1) out += "^" + std::to_string(m.exp[v]);
  }
  return out;
}

std::string term_text(const Term& t) {
  if (t.mono.is_one()) return t.coeff.str();
  std::string factors = monomial_text(t.mono);
  if (t.coeff.is_one()) return factors;
  if (t.coeff == Rational(-1)) return "-" + factors;
  return t.coeff.str() + "*" + factors;
}

}  // namespace

std::string to_text(const Expression& e) {
  if (e.is_zero()) return "0";
  std::string num;
  for (const auto& t : e.num().terms()) {
    std::string s = term_text(t);
    if (num.empty()) {
      num = s;
    } else if (s[0] == '-') {
      num += " - " + s.substr(1);
    } else {
      num += " + " + s;
    }
  }
  if (e.den().empty()) return num;
  std::string den;
  for (int p = 0; p < kNumPairs; ++p) {
    int m = e.den().mult[p];
    if (m == 0) continue;
    auto [i, j] = pair_of(p);
    if (!den.empty()) den += '*';
    den += "(u" + std::to_string(i) + "-u" + std::to_string(j) + ")";
    if (m != 1) den += "^" + std::to_string(m);
  }
  return "(" + num + ")/(" + den + ")";
}

void ExprSum::add(const Expression& e, const Rational& c, const Monomial& m,
                  const Denominator& extra) {
  if (e.is_zero() || c.is_zero()) return;
  TermMap& map = groups_[e.den() + extra];
  const bool unit = c.is_one();
  for (const auto& t : e.num().terms()) accumulate(map, t.mono * m, unit ? t.coeff : t.coeff * c);
}

void ExprSum::add_product(const Expression& a, const Expression& b, const Rational& c,
                          const Monomial& m, const Denominator& extra) {
  if (a.is_zero() || b.is_zero() || c.is_zero()) return;
  TermMap& map = groups_[a.den() + b.den() + extra];
  const bool unit = c.is_one();
  for (const auto& ta : a.num().terms()) {
    Rational ca = unit ? ta.coeff : ta.coeff * c;
    Monomial ma = ta.mono * m;
    for (const auto& tb : b.num().terms()) accumulate(map, ma * tb.mono, ca * tb.coeff);
  }
}

void ExprSum::add_term(const Monomial& m, const Rational& c, const Denominator& den) {
  if (c.is_zero()) return;
  accumulate(groups_[den], m, c);
}

Expression ExprSum::finish() {
  std::vector<Expression> parts;
  parts.reserve(groups_.size());
  for (auto& [den, map] : groups_) {
    Expression e = Expression::normalized(Polynomial::from_map(std::move(map)), den);
    if (!e.is_zero()) parts.push_back(std::move(e));
  }
  groups_.clear();
  if (parts.empty()) return {};
  if (parts.size() == 1) return std::move(parts.front());
  Denominator l;
  for (const auto& e : parts) l = Denominator::lcm(l, e.den());
  TermMap total;
  for (const auto& e : parts) {
    Polynomial p = raise(e.num(), e.den(), l);
    for (const auto& t : p.terms()) accumulate(total, t.mono, t.coeff);
  }
  return Expression::normalized(Polynomial::from_map(std::move(total)), l);
}

}  // namespace rotcalc
