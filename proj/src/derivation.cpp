#include "rotcalc/derivation.hpp"

#include <string>

#include "rotcalc/errors.hpp"

namespace rotcalc {
namespace {

Expression U(int i, int power = 1) { return Expression::var(GeneratorSymbol::u(i), power); }
Expression R(int i, int j) { return Expression::r(i, j); }
Expression G(int i) { return Expression::g(i); }

// s_i^a s_j^b as a bare monomial.
Expression sp(int i, int a, int j = 1, int b = 0) {
  Monomial m;
  m.exp[s_var(i)] = static_cast<std::int8_t>(m.exp[s_var(i)] + a);
  m.exp[s_var(j)] = static_cast<std::int8_t>(m.exp[s_var(j)] + b);
  return Expression::monomial(m);
}

// s_i / s_j
Expression ratio(int i, int j) { return sp(i, 1, j, -1); }

Expression upow(int i, int p) { return p == 0 ? Expression(1) : U(i, p); }

}  // namespace

Expression complete_sum(int i, int j, int m) {
  Expression out;
  for (int p = 0; p <= m; ++p) out += upow(i, p) * upow(j, m - p);
  return out;
}

Expression apply_rules(const RuleTable& rules, const Expression& e) {
  if (e.is_zero()) return {};
  ExprSum acc;
  for (const auto& t : e.num().terms()) {
    for (int v = 0; v < kNumVars; ++v) {
      const int x = t.mono.exp[v];
      if (x == 0) continue;
      const auto& img = rules.image[v];
      if (!img) {
        const GeneratorSymbol g = var_symbol(v);
        if (g.kind == GeneratorSymbol::Kind::T) {
          throw TauLevelOverflow(rules.name + " of " + g.name() + " exceeds the t-level cap");
        }
        throw ContextError(rules.name + ": generator " + g.name() + " outside the context");
      }
      if (img->is_zero()) continue;
      Monomial rest = t.mono;
      rest.exp[v] = static_cast<std::int8_t>(x - 1);
      acc.add(*img, t.coeff * Rational(x), rest, e.den());
    }
  }
  for (int p = 0; p < kNumPairs; ++p) {
    const int mu = e.den().mult[p];
    if (mu == 0 || rules.delta_image[p].is_zero()) continue;
    auto [i, j] = pair_of(p);
    acc.add_product(e, rules.delta_image[p], Rational(-mu), Monomial{}, Denominator::pair(i, j));
  }
  return acc.finish();
}

Calculus::Calculus(const Context& ctx) : ctx_(ctx) {
  const int n = ctx_.n();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      Expression num = R(i, j);
      for (int k = 1; k <= n; ++k) num += R(i, k) * v(j, k);
      theta_[i - 1][j - 1] = num * Expression::inverse_delta(j, i);
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      Expression num = theta(i, j) - theta(j, i);
      for (int k = 1; k <= n; ++k) {
        for (int l = 1; l <= n; ++l) num += R(i, l) * R(j, k) * v(k, l);
      }
      omega_[i - 1][j - 1] = num * Expression::inverse_delta(j, i);
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      Expression num = Expression(3) * omega(i, j);
      for (int k = 1; k <= n; ++k) {
        if (k == j) continue;
        num -= (U(k) - U(j)) * (k == i ? theta_diagonal(i) : theta(i, k)) * theta(j, k);
      }
      Expression ci = R(i, i);
      Expression cj = R(j, j);
      for (int k = 1; k <= n; ++k) {
        ci += R(i, k) * v(i, k);
        cj += R(j, k) * v(j, k);
      }
      num -= ci * theta(j, i) + cj * theta(i, j);
      lambda_[i - 1][j - 1] = num * Expression::inverse_delta(j, i);
    }
  }
  for (int k = 1; k <= n; ++k) derive_rules_.push_back(build_derive_rules(k));
  t_xbar_rules_ = build_t_xbar_rules();
}

Expression Calculus::v(int i, int j) const {
  if (i == j) return {};
  return (U(j) - U(i)) * R(i, j);
}

Expression Calculus::theta(int i, int j) const {
  if (i == j) throw BadIndexPair("theta needs i != j");
  return theta_[i - 1][j - 1];
}

Expression Calculus::theta_diagonal(int i) const {
  ctx_.check_index(i);
  Expression out = Expression::t(2, i) * Expression::s(i, -2);
  for (int l = 1; l <= n(); ++l) out -= Expression(2) * R(i, l) * R(i, l);
  return out;
}

Expression Calculus::omega(int i, int j) const {
  if (i == j) throw BadIndexPair("omega needs i != j");
  return omega_[i - 1][j - 1];
}

Expression Calculus::lambda(int i, int j) const {
  if (i == j) throw BadIndexPair("lambda needs i != j");
  return lambda_[i - 1][j - 1];
}

Expression Calculus::special(SpecialKind kind, int i, int j) const {
  ctx_.check_index(i);
  ctx_.check_index(j);
  switch (kind) {
    case SpecialKind::V:
      return v(i, j);
    case SpecialKind::Theta:
      return theta(i, j);
    case SpecialKind::Omega:
      return omega(i, j);
    case SpecialKind::Lambda:
      return lambda(i, j);
  }
  return {};
}

Expression Calculus::tau_s(int k, int i) const {
  if (k < 0) return {};
  if (k == 0) return G(i);
  if (k == 1) {
    Expression out;
    for (int j = 1; j <= n(); ++j) out += R(i, j) * sp(i, 1, j, 1);
    return out;
  }
  if (k > kMaxTauCap) throw TauLevelOverflow("t-level " + std::to_string(k) + " is not representable");
  return Expression::t(k, i);
}

Expression Calculus::tau_s_cov(int k, int j, int i) const {
  Expression out = R(i, j) * (ratio(i, j) * tau_s(k, j) + ratio(j, i) * tau_s(k, i));
  if (i == j) {
    for (int l = 1; l <= n(); ++l) out -= R(i, l) * ratio(i, l) * tau_s(k, l);
  }
  return out;
}

Expression Calculus::checked(Expression e) const {
  if (e.max_t_level() > ctx_.max_tau_level()) {
    throw TauLevelOverflow("result exceeds the t-level cap " + std::to_string(ctx_.max_tau_level()));
  }
  return e;
}

RuleTable Calculus::build_derive_rules(int k) const {
  RuleTable rt;
  rt.name = "E" + std::to_string(k);
  const int n = this->n();
  for (int i = 1; i <= n; ++i) {
    rt.image[u_var(i)] = Expression(i == k ? 1 : 0);
    rt.image[s_var(i)] = R(i, k) * Expression::s(k);
    for (int j = i; j <= n; ++j) {
      Expression img = R(i, k) * R(j, k);
      if (i != j) {
        if (k == i) img += theta(i, j);
        if (k == j) img += theta(j, i);
      } else if (k != i) {
        img += ratio(k, i) * theta(i, k);
      } else {
        for (int l = 1; l <= n; ++l) img -= Expression(2) * R(i, l) * R(i, l);
        for (int p = 1; p <= n; ++p) {
          if (p != i) img += ratio(p, i) * theta(p, i);
        }
        img += Expression::t(2, i) * sp(i, -2);
      }
      rt.image[r_var(i, j)] = img;
    }
    for (int level = 2; level <= ctx_.max_tau_level(); ++level) {
      if (i == k && level + 1 > ctx_.max_tau_level()) continue;
      Expression img = tau_s_cov(level, k, i);
      if (i == k) img += Expression::t(level + 1, i);
      rt.image[t_var(level, i)] = img;
    }
  }
  for (int p = 0; p < kNumPairs; ++p) {
    auto [a, b] = pair_of(p);
    rt.delta_image[p] = Expression((a == k ? 1 : 0) - (b == k ? 1 : 0));
  }
  return rt;
}

RuleTable Calculus::build_t_xbar_rules() const {
  RuleTable rt;
  rt.name = "T(X)";
  const int n = this->n();
  for (int i = 1; i <= n; ++i) {
    rt.image[u_var(i)] = Expression();
    rt.image[s_var(i)] = -(U(i) * Expression::s(i));
    for (int j = i; j <= n; ++j) {
      Expression img;
      if (i == j) {
        for (int k = 1; k <= n; ++k) img += R(i, k) * U(k) * ratio(k, i);
      }
      rt.image[r_var(i, j)] = img;
    }
    for (int level = 2; level <= ctx_.max_tau_level(); ++level) {
      rt.image[t_var(level, i)] = -(U(i) * Expression::t(level, i));
    }
  }
  return rt;
}

RuleTable Calculus::build_lemma_rules(int m) const {
  RuleTable rt;
  rt.name = "L" + std::to_string(m);
  const int n = this->n();
  for (int i = 1; i <= n; ++i) {
    rt.image[u_var(i)] = -upow(i, m + 1);
    rt.image[s_var(i)] = Expression(Rational(3 * (m + 1), 2)) * upow(i, m) * Expression::s(i);
    for (int j = i + 1; j <= n; ++j) {
      Expression cs = complete_sum(i, j, m);
      Expression img = R(i, j) * cs;
      for (int k = 1; k <= n; ++k) {
        img += R(i, k) * R(j, k) * (upow(j, m + 1) - upow(k, m + 1) + (U(k) - U(j)) * cs);
      }
      rt.image[r_var(i, j)] = img;
    }
    Expression img = Expression(m + 1) * upow(i, m) * R(i, i);
    if (m >= 1) img += Expression(Rational(15 * m * (m + 1), 8)) * upow(i, m - 1);
    for (int k = 1; k <= n; ++k) {
      img += R(i, k) * R(i, k) *
             (Expression(m + 1) * upow(i, m) * U(k) - Expression(m) * upow(i, m + 1) -
              upow(k, m + 1));
    }
    rt.image[r_var(i, i)] = img;
    for (int level = 2; level <= ctx_.max_tau_level(); ++level) {
      try {
        Expression t_img = -pairing_unchecked(VectorId::L(m), level + 1, i) -
                           upow(i, m + 1) * tau_s(level + 1, i) +
                           Expression(Rational(3 * (m + 1), 2)) * upow(i, m) * Expression::t(level, i);
        for (int j = 1; j <= n; ++j) {
          t_img += (upow(i, m + 1) - upow(j, m + 1)) * R(i, j) * ratio(i, j) *
                   Expression::t(level, j);
        }
        if (t_img.max_t_level() <= ctx_.max_tau_level()) rt.image[t_var(level, i)] = t_img;
      } catch (const TauLevelOverflow&) {
      }
    }
  }
  for (int p = 0; p < kNumPairs; ++p) {
    auto [a, b] = pair_of(p);
    rt.delta_image[p] = upow(b, m + 1) - upow(a, m + 1);
  }
  return rt;
}

RuleTable Calculus::vector_field_rules(const PairingFn& a, const std::string& name) const {
  RuleTable rt;
  rt.name = name;
  const int n = this->n();
  std::vector<Expression> a0(n + 1), a1(n + 1), a2(n + 1), w(n + 1);
  for (int i = 1; i <= n; ++i) {
    a0[i] = a(0, i);
    a1[i] = a(1, i);
    a2[i] = a(2, i);
    w[i] = a0[i] * sp(i, -2);
  }
  for (int i = 1; i <= n; ++i) {
    rt.image[u_var(i)] = w[i];
    Expression ds = -a1[i];
    for (int j = 1; j <= n; ++j) ds += R(i, j) * ratio(i, j) * a0[j];
    rt.image[s_var(i)] = ds * sp(i, -1);
    for (int j = i + 1; j <= n; ++j) {
      Expression img = w[i] * theta(i, j) + w[j] * theta(j, i);
      for (int k = 1; k <= n; ++k) img += w[k] * R(i, k) * R(j, k);
      rt.image[r_var(i, j)] = img;
    }
    Expression img = -a2[i] * sp(i, -2) + a0[i] * Expression::t(2, i) * sp(i, -4);
    for (int j = 1; j <= n; ++j) {
      if (j != i) img += (w[j] * theta(i, j) + w[i] * theta(j, i)) * ratio(j, i);
      img += R(i, j) * a1[j] * sp(i, -1, j, -1);
      img += R(i, j) * R(i, j) * (w[j] - Expression(2) * w[i]);
    }
    rt.image[r_var(i, i)] = img;
    for (int level = 2; level <= ctx_.max_tau_level(); ++level) {
      try {
        Expression t_img = -a(level + 1, i) + w[i] * tau_s(level + 1, i) -
                           a1[i] * sp(i, -2) * Expression::t(level, i);
        for (int j = 1; j <= n; ++j) t_img += w[j] * tau_s_cov(level, j, i);
        if (t_img.max_t_level() <= ctx_.max_tau_level()) rt.image[t_var(level, i)] = t_img;
      } catch (const TauLevelOverflow&) {
      }
    }
  }
  for (int p = 0; p < kNumPairs; ++p) {
    auto [x, y] = pair_of(p);
    if (y <= n) rt.delta_image[p] = w[x] - w[y];
  }
  return rt;
}

const RuleTable& Calculus::l_rules(int m, LRoute route) const {
  if (m < -1) throw UnsupportedPairing("L_m needs m >= -1");
  // The lemma formulas carry u^(m-1) and are not valid at m = -1.
  if (m == -1) route = LRoute::VectorField;
  const std::pair<int, int> key{m, static_cast<int>(route)};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = l_rules_.find(key);
    if (it != l_rules_.end()) return *it->second;
  }
  auto table = std::make_unique<RuleTable>(
      route == LRoute::Lemma
          ? build_lemma_rules(m)
          : vector_field_rules(
                [this, m](int level, int i) { return pairing_unchecked(VectorId::L(m), level, i); },
                "L" + std::to_string(m)));
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = l_rules_.try_emplace(key, std::move(table));
  return *it->second;
}

Expression Calculus::derive(int k, const Expression& e) const {
  ctx_.check_index(k);
  return apply_rules(derive_rules_[k - 1], e);
}

Expression Calculus::act_T_xbar(const Expression& e) const { return apply_rules(t_xbar_rules_, e); }

Expression Calculus::act_L(int m, const Expression& e, LRoute route) const {
  return apply_rules(l_rules(m, route), e);
}

Expression Calculus::act_vector_field(const PairingFn& pairing, const Expression& e) const {
  return apply_rules(vector_field_rules(pairing, "W"), e);
}

Expression Calculus::l0_closed(int k, int i) const {
  if (k == 0) return -(U(i) * G(i));
  Expression out = -(U(i) * tau_s(k, i)) - Expression(Rational(2 * k + 1, 2)) * tau_s(k - 1, i);
  for (int j = 1; j <= n(); ++j) out -= v(i, j) * ratio(i, j) * tau_s(k - 1, j);
  return out;
}

Expression Calculus::l1_closed(int m, int i) const {
  if (m == 0) return -(U(i, 2) * G(i));
  Expression out = -(U(i, 2) * tau_s(m, i)) - Expression(2 * m + 1) * U(i) * tau_s(m - 1, i) -
                   Expression(Rational(4 * m * m - 1, 4)) * tau_s(m - 2, i);
  for (int j = 1; j <= n(); ++j) {
    out -= (U(j, 2) - U(i, 2)) * R(i, j) * ratio(i, j) * tau_s(m - 1, j);
    out -= Expression(2 * m) * v(i, j) * ratio(i, j) * tau_s(m - 2, j);
    for (int k = 1; k <= n(); ++k) out -= v(i, j) * v(j, k) * ratio(i, k) * tau_s(m - 2, k);
  }
  return out;
}

Expression Calculus::tau_lm_rot(int m, int i) const {
  Expression out = -(Expression(Rational(3 * (m + 1), 2)) * upow(i, m) * G(i));
  for (int j = 1; j <= n(); ++j) out -= upow(j, m + 1) * R(i, j) * sp(i, 1, j, 1);
  return out;
}

Expression Calculus::tau2_lm_rot(int m, int i) const {
  Expression out = -(upow(i, m + 1) * tau_s(2, i));
  if (m >= 1) out -= Expression(Rational(15 * m * (m + 1), 8)) * upow(i, m - 1) * G(i);
  for (int j = 1; j <= n(); ++j) {
    out -= R(i, j) * sp(i, 1, j, 1) *
           (complete_sum(i, j, m) + Expression(Rational(3 * (m + 1), 2)) * upow(j, m));
    for (int k = 1; k <= n(); ++k) {
      out -= v(i, j) * R(j, k) * sp(i, 1, k, 1) * complete_sum(i, k, m);
    }
  }
  return out;
}

Expression Calculus::pairing_unchecked(VectorId w, int level, int i) const {
  if (level < 0) return {};
  switch (w.kind) {
    case VectorKind::S:
      return tau_s(level, i);
    case VectorKind::XbarPow:
      if (level != 0) throw UnsupportedPairing("X^k pairs only at level 0");
      return upow(i, w.m) * G(i);
    case VectorKind::L:
      break;
  }
  const int m = w.m;
  if (m < -1) throw UnsupportedPairing("L_m needs m >= -1");
  if (m == -1) return -tau_s(level, i);
  if (level == 0) return -(upow(i, m + 1) * G(i));
  if (m == 0) return l0_closed(level, i);
  if (m == 1) return l1_closed(level, i);
  if (level == 1) return tau_lm_rot(m, i);
  if (level == 2) return tau2_lm_rot(m, i);
  return pairing_by_recursion(m, level, i);
}

Expression Calculus::pairing(VectorId w, int level, int i) const {
  ctx_.check_index(i);
  return checked(pairing_unchecked(w, level, i));
}

Expression Calculus::pairing_by_recursion(int m, int level, int i) const {
  if (m < -1) throw UnsupportedPairing("L_m needs m >= -1");
  if (level < 0) return {};
  if (m == -1) return -tau_s(level, i);
  if (level == 0) return -(upow(i, m + 1) * G(i));
  const auto key = std::make_tuple(m, level, i);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = recursion_cache_.find(key);
    if (it != recursion_cache_.end()) return it->second;
  }
  const int k = level - 1;
  Expression out = U(i) * pairing_by_recursion(m - 1, level, i) +
                   Expression(Rational(2 * k + 3, 2)) * pairing_by_recursion(m - 1, k, i);
  for (int j = 1; j <= n(); ++j) out += v(i, j) * ratio(i, j) * pairing_by_recursion(m - 1, k, j);
  std::lock_guard<std::mutex> lock(mutex_);
  recursion_cache_.emplace(key, out);
  return out;
}

std::vector<Expression> Calculus::gstar(int i) const {
  ctx_.check_index(i);
  std::vector<Expression> row;
  for (int j = 1; j <= n(); ++j) {
    Expression e = (U(i) - U(j)) * R(i, j) * ratio(i, j);
    if (i == j) e += Expression(Rational(1, 2));
    row.push_back(e);
  }
  return row;
}

}  // namespace rotcalc
