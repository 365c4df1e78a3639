#include "rotcalc/evaluate.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "rotcalc/errors.hpp"

namespace rotcalc {
namespace {

mpq_class power(const mpq_class& x, int e) {
  mpz_class num;
  mpz_class den;
  unsigned long mag = static_cast<unsigned long>(std::abs(e));
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), mag);
  mpq_class q = e >= 0 ? mpq_class(num, den) : mpq_class(den, num);
  q.canonicalize();
  return q;
}

const mpq_class& value_of(const Point& point, int var) {
  const auto& v = point.at(var);
  if (!v) throw MissingAssignment("no value for " + var_symbol(var).name());
  return *v;
}

}  // namespace

void Point::set(const GeneratorSymbol& g, const Rational& value) {
  values_[var_index(g)] = value.to_mpq();
}

Rational evaluate(const Expression& e, const Point& point) {
  if (e.is_zero()) return Rational(0);
  mpq_class den = 1;
  for (int p = 0; p < kNumPairs; ++p) {
    int m = e.den().mult[p];
    if (m == 0) continue;
    auto [i, j] = pair_of(p);
    mpq_class delta = value_of(point, u_var(i)) - value_of(point, u_var(j));
    if (delta == 0) {
      throw PoleHit("u" + std::to_string(i) + " - u" + std::to_string(j) + " vanishes");
    }
    den *= power(delta, m);
  }
  mpq_class total = 0;
  for (const auto& t : e.num().terms()) {
    mpq_class term = t.coeff.to_mpq();
    for (int v = 0; v < kNumVars; ++v) {
      int x = t.mono.exp[v];
      if (x == 0) continue;
      const mpq_class& base = value_of(point, v);
      if (x < 0 && base == 0) throw PoleHit(var_symbol(v).name() + " vanishes");
      term *= power(base, x);
    }
    total += term;
  }
  return Rational(mpq_class(total / den));
}

Point random_point(const Context& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 9);
  auto draw = [&] { return Rational(num(rng), den(rng)); };
  auto draw_nonzero = [&] {
    Rational q = draw();
    while (q.is_zero()) q = draw();
    return q;
  };
  Point p;
  std::vector<Rational> us;
  for (int i = 1; i <= ctx.n(); ++i) {
    Rational u = draw();
    while (std::find(us.begin(), us.end(), u) != us.end()) u = draw();
    us.push_back(u);
    p.set(GeneratorSymbol::u(i), u);
    p.set(GeneratorSymbol::s(i), draw_nonzero());
    for (int j = i; j <= ctx.n(); ++j) p.set(GeneratorSymbol::r(i, j), draw());
    for (int k = 2; k <= ctx.max_tau_level(); ++k) p.set(GeneratorSymbol::t(k, i), draw());
  }
  return p;
}

}  // namespace rotcalc
