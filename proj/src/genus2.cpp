#include "rotcalc/genus2.hpp"

#include "rotcalc/errors.hpp"
#include "rotcalc/monomial_builder.hpp"

namespace rotcalc {
namespace {

Expression U(int i) { return Expression::u(i); }
Expression Q(std::int64_t a, std::int64_t b = 1) { return Expression(Rational(a, b)); }

// u_k (2 u_i + 2 u_j - 3 u_k)
Expression weight3(int k, int i, int j) { return U(k) * (Q(2) * U(i) + Q(2) * U(j) - Q(3) * U(k)); }

// u_i (2 u_j - u_i)
Expression weight2(int i, int j) { return U(i) * (Q(2) * U(j) - U(i)); }

}  // namespace

Genus2::Genus2(const Calculus& calc, const CorrelatorStore& store)
    : calc_(calc), store_(store), n_(calc.n()) {}

void Genus2::require_cap(int level) const {
  if (calc_.ctx().max_tau_level() < level) {
    throw TauLevelOverflow("this quantity needs t-levels up to " + std::to_string(level));
  }
}

Expression Genus2::memo(const std::string& key, const std::function<Expression()>& build) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Expression value = build();
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.emplace(key, std::move(value)).first->second;
}

Expression Genus2::b_diag(int i) const {
  calc_.ctx().check_index(i);
  require_cap(kGenus2Cap);
  return memo("B" + std::to_string(i), [&] {
    ExprSum acc;
    for (int j = 1; j <= n_; ++j) {
      for (int k = 1; k <= n_; ++k) {
        const Monomial w = M().ig(j).ig(k);
        acc.add_product(z({i, i, i, j, k}), phi({j}) * phi({k}), Rational(1, 5), w);
        acc.add_product(z({i, i, i, j}), phi({j, k}) * phi({k}), Rational(-6, 5), w);
        acc.add_product(z({i, i, j, k}), phi({j}) * phi({i, k}), Rational(-6, 5), w);
        acc.add_product(z({i, i, i, j, j, k}), phi({k}), Rational(1, 120), w);
        acc.add_product(z({i, i, i, j, k}), phi({j, k}), Rational(1, 10), w);
        acc.add_product(z({i, i, i, j}), phi({j, k, k}), Rational(-1, 20), w);
        acc.add_product(z({i, i, j, j, k}), phi({i, k}), Rational(-3, 40), w);
        acc.add_product(z({i, j, j, k}), phi({i, i, k}), Rational(3, 40), w);
        acc.add_product(z({i, i, j, k}), phi({i, j, k}), Rational(-3, 10), w);
      }
      const Rational sign = i == j ? Rational(-1) : Rational(1);
      const Monomial w = M().ig(j);
      acc.add_product(phi({i, j}), phi({i, j}), Rational(9, 5) * sign, w);
      acc.add_product(phi({i, i, j}), phi({j}), Rational(-6, 5) * sign, w);
      acc.add(phi({i, i, i, j}), Rational(-1, 120), w);
      acc.add(phi({i, i, j, j}), Rational(-1, 20) * sign, w);
    }
    return acc.finish();
  });
}

const PairingLevels& Genus2::a1_brackets() const {
  std::call_once(brackets_once_, [&] {
    for (auto& level : brackets_) level.assign(n_, Expression());
    for (int i = 1; i <= n_; ++i) {
      ExprSum b0;
      b0.add(phi({i}) * phi({i}), Rational(7, 10), M().ig(i).ig(i));
      b0.add(phi({i, i}), Rational(1, 10), M().ig(i).ig(i));
      ExprSum b1;
      b1.add(phi({i}), Rational(1, 20), M().ig(i).ig(i));
      for (int j = 1; j <= n_; ++j) {
        b0.add(phi({i, j}), Rational(-1, 240), M().ig(i).ig(j));
        b1.add(z({i, i, j, j}), Rational(1, 480), M().ig(i).ig(i).ig(j));
        for (int k = 1; k <= n_; ++k) {
          const Monomial w = M().ig(i).ig(j).ig(k);
          b0.add_product(z({i, j, j, k}), phi({k}), Rational(13, 240), w);
          b0.add(z({i, j, j, k, k}), Rational(1, 960), w);
          b1.add(z({i, j, k, k}), Rational(1, 1152), w);
        }
      }
      brackets_[0][i - 1] = b0.finish();
      brackets_[1][i - 1] = b1.finish();
      brackets_[2][i - 1] = Expression::monomial(M().ig(i).ig(i), Rational(1, 1152));
    }
  });
  return brackets_;
}

Expression Genus2::a1(const PairingLevels& w) const {
  const PairingLevels& br = a1_brackets();
  ExprSum acc;
  for (int level = 0; level < 3; ++level) {
    for (int i = 0; i < n_; ++i) acc.add_product(w[level][i], br[level][i]);
  }
  return acc.finish();
}

PairingLevels Genus2::levels_of(A1Arg w) const {
  PairingLevels out;
  for (int level = 0; level < 3; ++level) {
    for (int i = 1; i <= n_; ++i) {
      switch (w) {
        case A1Arg::TauS:
          out[level].push_back(calc_.pairing(VectorId::S(), level + 1, i));
          break;
        case A1Arg::Tau2L0:
          out[level].push_back(calc_.pairing(VectorId::L(0), level + 2, i));
          break;
        case A1Arg::Tau2L1:
          out[level].push_back(calc_.pairing(VectorId::L(1), level + 2, i));
          break;
      }
    }
  }
  return out;
}

Expression Genus2::a1_of(A1Arg w) const {
  require_cap(kGenus2Cap);
  const char* name = w == A1Arg::TauS ? "A1:tauS" : w == A1Arg::Tau2L0 ? "A1:tau2L0" : "A1:tau2L1";
  return memo(name, [&] { return a1(levels_of(w)); });
}

Expression Genus2::f2(F2Route route) const {
  require_cap(route == F2Route::Assembled ? kGenus2Cap : 3);
  return route == F2Route::Assembled ? memo("F2:assembled", [&] { return f2_assembled(); })
                                     : memo("F2:rotation", [&] { return f2_rotation(); });
}

Expression Genus2::f2_assembled() const {
  ExprSum acc;
  acc.add(a1_of(A1Arg::TauS), Rational(1, 2));
  acc.add(a1_of(A1Arg::Tau2L0), Rational(1, 3));
  for (int i = 1; i <= n_; ++i) acc.add(b_diag(i), Rational(-1, 6), M().u(i));
  return acc.finish();
}

Expression Genus2::f2_rotation() const {
  const int n = n_;
  auto v = [&](int i, int j) { return calc_.v(i, j); };
  ExprSum acc;
  for (int i = 1; i <= n; ++i) {
    acc.add_term(M().t(3, i).ig(i).ig(i), Rational(-5));

    acc.add_term(M().t(2, i).ig(i).ig(i).r(i, i), Rational(24));
    Expression rv;
    for (int j = 1; j <= n; ++j) rv += Expression::r(i, j) * v(i, j);
    for (int j = 1; j <= n; ++j) {
      acc.add_term(M().t(2, i).ig(i).r(i, j).s(i).s(j, -3), Rational(5));
      acc.add(v(i, j), Rational(144), M().t(2, i).ig(i).ig(i).r(i, j));
    }

    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      acc.add(calc_.omega(i, j), Rational(5), M().s(i).s(j, -3));
      acc.add(calc_.omega(i, j), Rational(-5), M().s(i, -1).s(j, -1));
      const Expression th = calc_.theta(i, j);
      ExprSum br;
      br.add_term(M().r(i, i).s(j).s(i, -3), Rational(-24));
      br.add_term(M().r(i, j).ig(j), Rational(200));
      for (int k = 1; k <= n; ++k) {
        br.add(v(i, k), Rational(120), M().r(i, k).s(i, -1).s(j, -1));
        br.add(v(i, k), Rational(-144), M().r(i, k).s(j).s(i, -3));
        br.add(v(i, k), Rational(85), M().r(j, k).ig(i));
        br.add(v(i, k), Rational(45), M().r(j, k).ig(j));
      }
      acc.add_product(th, br.finish());
    }

    acc.add_term(M().r(i, i, 3).ig(i), Rational(-576));
    acc.add(rv.pow(3), Rational(-576), M().ig(i));

    for (int j = 1; j <= n; ++j) {
      acc.add_term(M().r(i, j, 3).s(i, -1).s(j, -1), Rational(480));
      acc.add_term(M().r(i, i).r(i, j, 2).ig(i), Rational(-23));
      acc.add(v(i, j), Rational(-1728), M().r(i, i, 2).r(i, j).ig(i));
      for (int k = 1; k <= n; ++k) {
        acc.add_term(M().r(i, i).r(i, k).r(j, k).s(j).s(i, -3), Rational(-24));
        acc.add_term(M().r(i, j).r(i, k).r(j, k).ig(i), Rational(115));
        acc.add(v(i, j), Rational(1452), M().r(i, k, 2).r(i, j).ig(i));
        acc.add_product(v(i, j), v(i, k), Rational(-1728), M().r(i, i).r(i, j).r(i, k).ig(i));
        for (int l = 1; l <= n; ++l) {
          acc.add(v(i, l), Rational(120), M().r(i, k).r(j, k).r(i, l).s(i, -1).s(j, -1));
          acc.add(v(j, k), Rational(-144), M().r(i, j).r(i, l).r(j, k).s(l).s(j, -3));
          acc.add(v(j, l), Rational(-40), M().r(i, k).r(j, k).r(i, l).ig(i));
          acc.add_product(v(i, k), v(j, l), Rational(720),
                          M().r(i, j).r(i, k).r(j, l).s(i, -1).s(j, -1));
        }
      }
    }
  }
  Expression total = acc.finish();
  return total.scaled(Rational(1, 5760));
}

Expression Genus2::l1f2_target() const {
  return memo("L1F2", [&] {
    const int n = n_;
    auto v = [&](int i, int j) { return calc_.v(i, j); };
    ExprSum acc;
    for (int i = 1; i <= n; ++i) {
      acc.add_term(M().t(2, i).ig(i).ig(i), Rational(6));
      for (int j = 1; j <= n; ++j) acc.add_product(v(i, j), v(i, j), Rational(24), M().t(2, i).ig(i).ig(i));

      for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        ExprSum br;
        br.add_term(M().s(i).s(j, -3), Rational(6));
        for (int k = 1; k <= n; ++k) {
          br.add_product(v(i, k), v(j, k), Rational(48), M().ig(i));
          br.add_product(v(i, k), v(i, k), Rational(24), M().s(i, -1).s(j, -1));
          br.add_product(v(j, k), v(j, k), Rational(24), M().s(i).s(j, -3));
        }
        acc.add_product(calc_.theta(i, j), br.finish());
      }

      acc.add_term(M().r(i, i, 2).ig(i), Rational(-72));
      for (int j = 1; j <= n; ++j) {
        acc.add_term(M().r(i, j, 2).ig(i), Rational(57));
        acc.add(v(i, j), Rational(-144), M().r(i, i).r(i, j).ig(i));
        for (int k = 1; k <= n; ++k) {
          acc.add_term(M().r(i, j).r(i, k).s(j, -1).s(k, -1), Rational(11, 4));
          acc.add(v(i, k), Rational(66), M().r(i, j).r(i, k).s(i, -1).s(j, -1));
          acc.add_product(v(i, j), v(i, k), Rational(-36), M().r(i, j).r(i, k).ig(i));
          acc.add_product(v(i, j), v(i, k), Rational(-288), M().r(j, k, 2).s(j, -1).s(k, -1));
          acc.add_product(v(i, j), v(i, j), Rational(240), M().r(j, k, 2).ig(j));
          for (int l = 1; l <= n; ++l) {
            const Expression vv = v(i, j) * v(i, k);
            const Expression vjj = v(i, j) * v(i, j);
            acc.add(vv, Rational(-24), M().r(j, l).r(k, l).ig(l));
            acc.add(vjj, Rational(24), M().r(j, k).r(k, l).s(j, -1).s(l, -1));
            acc.add_product(vv, v(k, l), Rational(-576), M().r(j, k).r(k, l).ig(k));
            acc.add_product(vjj, v(k, l), Rational(288), M().r(j, k).r(k, l).s(j, -1).s(k, -1));
            for (int p = 1; p <= n; ++p) {
              acc.add(vv, Rational(-1), M().r(j, p).r(k, l).s(l, -1).s(p, -1));
              acc.add_product(vv, v(k, l), Rational(-24), M().r(j, p).r(k, l).s(k, -1).s(p, -1));
              acc.add_product(vv, v(j, p) * v(k, l), Rational(-144),
                              M().r(j, p).r(k, l).s(j, -1).s(k, -1));
            }
          }
        }
      }
    }
    return acc.finish().scaled(Rational(1, 1152));
  });
}

Expression Genus2::prediction(PredictionRoute route) const {
  return route == PredictionRoute::Rotation
             ? memo("prediction:rotation", [&] { return prediction_rotation(); })
             : memo("prediction:gstar", [&] { return prediction_gstar(); });
}

Expression Genus2::prediction_rotation() const {
  ExprSum acc;
  for (int i = 1; i <= n_; ++i) {
    acc.add(phi({i, i}) + phi({i}) * phi({i}), Rational(-1, 8), M().ig(i));
    for (int j = 1; j <= n_; ++j) {
      for (int k = 1; k <= n_; ++k) {
        acc.add_product(calc_.v(i, j) * calc_.v(i, k), phi({j, k}) + phi({j}) * phi({k}),
                        Rational(-1, 2), M().s(j, -1).s(k, -1));
      }
    }
  }
  return acc.finish();
}

Expression Genus2::prediction_gstar() const {
  ExprSum acc;
  for (int i = 1; i <= n_; ++i) {
    const std::vector<Expression> c = calc_.gstar(i);
    Expression one;
    for (int j = 1; j <= n_; ++j) {
      one += c[j - 1] * phi({j});
      for (int k = 1; k <= n_; ++k) {
        acc.add_product(c[j - 1] * c[k - 1], phi({j, k}), Rational(-1, 2), M().ig(i));
      }
    }
    acc.add_product(one, one, Rational(-1, 2), M().ig(i));
  }
  return acc.finish();
}

Expression Genus2::c_coeff(int i, int j, int k) const {
  if (k < 2) throw UnsupportedPairing("c_{ij;k} needs k >= 2");
  calc_.ctx().check_index(i);
  calc_.ctx().check_index(j);
  auto T = [&](int level, int a) { return calc_.tau_s(level, a); };
  ExprSum acc;
  acc.add(T(k, i), Rational(2), M().u(i).u(j).ig(i));
  acc.add(T(k - 1, i) * (Q(k + 2) * U(i) + Q(2 * (1 - k)) * U(j)), Rational(-1), M().ig(i));
  acc.add(T(k - 2, i), Rational(1, 4) - Rational(k * k), M().ig(i));
  for (int p = 1; p <= n_; ++p) {
    const Monomial w = M().r(i, p).s(i, -1).s(p, -1);
    acc.add_product((U(p) - Q(2) * U(j)) * (U(i) - U(p)), T(k - 1, p), Rational(1), w);
    acc.add_product(U(i) - U(p), T(k - 2, p), Rational(2 * k), w);
    for (int q = 1; q <= n_; ++q) {
      acc.add_product((U(i) - U(p)) * (U(p) - U(q)), T(k - 2, q), Rational(-1),
                      M().r(i, p).r(p, q).s(i, -1).s(q, -1));
    }
  }
  return acc.finish();
}

Expression Genus2::c_coeff_by_definition(int i, int j, int k) const {
  Expression inner = calc_.pairing(VectorId::L(1), k, i) -
                     (U(i) + Q(2) * U(j)) * (calc_.pairing(VectorId::L(0), k, i) +
                                             Q(3, 2) * calc_.pairing(VectorId::S(), k - 1, i));
  return inner * Expression::s(i, -2);
}

Expression Genus2::d_coeff(int i, int k) const {
  if (k < 1) throw UnsupportedPairing("d_{i;k} needs k >= 1");
  calc_.ctx().check_index(i);
  auto T = [&](int level, int a) { return calc_.tau_s(level, a); };
  ExprSum acc;
  acc.add(T(k, i), Rational(-1), M().u(i).ig(i));
  acc.add(T(k - 1, i), Rational(1 - k), M().ig(i));
  for (int p = 1; p <= n_; ++p) {
    acc.add_product(U(p) - U(i), T(k - 1, p), Rational(-1), M().r(i, p).s(i, -1).s(p, -1));
  }
  return acc.finish();
}

Expression Genus2::d_coeff_by_definition(int i, int k) const {
  Expression inner =
      calc_.pairing(VectorId::L(0), k, i) + Q(3, 2) * calc_.pairing(VectorId::S(), k - 1, i);
  return inner * Expression::s(i, -2);
}

Expression Genus2::l_a() const {
  require_cap(kGenus2Cap);
  return memo("LA", [&] {
    const int n = n_;
    std::vector<std::vector<std::array<Expression, 5>>> c(n + 1, std::vector<std::array<Expression, 5>>(n + 1));
    std::vector<std::array<Expression, 4>> d(n + 1);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        for (int k = 2; k <= 4; ++k) c[i][j][k] = c_coeff(i, j, k);
      }
      for (int k = 2; k <= 3; ++k) d[i][k] = d_coeff(i, k);
    }
    ExprSum acc;
    for (int i = 1; i <= n; ++i) {
      acc.add_product(c[i][i][2], phi({i}) * phi({i}), Rational(7, 10), M().ig(i));
      acc.add_product(c[i][i][2], phi({i, i}), Rational(1, 10), M().ig(i));
      acc.add_product(c[i][i][3], phi({i}), Rational(1, 20), M().ig(i));
      acc.add(c[i][i][4], Rational(1, 1152), M().ig(i));
      for (int j = 1; j <= n; ++j) {
        acc.add_product(c[i][j][2], phi({i, j}), Rational(-1, 240), M().ig(j));
        acc.add_product(c[i][i][3], z({i, i, j, j}), Rational(1, 480), M().ig(i).ig(j));
        for (int k = 1; k <= n; ++k) {
          const Expression phi_i = phi({i});
          acc.add_product(c[k][i][2] * z({i, j, j, k}), phi_i, Rational(13, 240), M().ig(i).ig(j));
          acc.add_product(d[i][2] * z({i, j, k, k}), phi_i, Rational(-7, 120), M().u(j).ig(i).ig(k));
          acc.add_product(d[k][2] * z({i, j, k, k}), phi_i, Rational(-1, 10), M().u(j).ig(i).ig(k));
          acc.add_product(c[i][j][3], z({i, j, k, k}), Rational(1, 1152), M().ig(j).ig(k));
          acc.add_product(c[i][j][2], z({i, j, j, k, k}), Rational(1, 960), M().ig(j).ig(k));
          acc.add_product(d[i][3], z({i, j, k, k}), Rational(-1, 480), M().u(j).ig(i).ig(k));
          acc.add_product(d[i][3], z({i, i, j, k}), Rational(-1, 480), M().u(k).ig(i).ig(j));
          acc.add_product(d[i][2], z({i, i, j, k, k}), Rational(-1, 240), M().u(j).ig(i).ig(k));
          for (int p = 1; p <= n; ++p) {
            acc.add_product(d[k][2] * z({i, j, k, p}), phi_i, Rational(-1, 20), M().u(p).ig(i).ig(j));
            acc.add_product(d[i][3], z({i, j, k, p}), Rational(-1, 1152), M().u(p).ig(j).ig(k));
            acc.add_product(d[i][2], z({i, j, k, k, p}), Rational(-1, 1152), M().u(p).ig(j).ig(k));
            for (int q = 1; q <= n; ++q) {
              const Monomial w = M().u(p).ig(j).ig(k).ig(q);
              acc.add_product(d[i][2] * z({i, j, j, k}), z({k, p, q, q}), Rational(-19, 12 * 480), w);
              acc.add_product(d[i][2] * z({i, j, p, q}), z({j, k, k, q}), Rational(-1, 480), w);
            }
          }
        }
      }
    }
    return acc.finish();
  });
}

Expression Genus2::l_a_by_definition() const {
  return memo("LA:definition", [&] {
    PairingLevels shifted;
    for (int level = 0; level < 3; ++level) {
      for (int i = 1; i <= n_; ++i) {
        shifted[level].push_back(calc_.pairing(VectorId::L(0), level + 2, i) +
                                 Q(3, 2) * calc_.pairing(VectorId::S(), level + 1, i));
      }
    }
    return a1_of(A1Arg::Tau2L1) - calc_.act_T_xbar(a1(shifted));
  });
}

Expression Genus2::l_b_by_definition() const {
  return memo("LB:definition", [&] {
    ExprSum acc;
    for (int i = 1; i <= n_; ++i) {
      const Expression b = b_diag(i);
      acc.add(calc_.act_T_xbar(b), Rational(1, 2), M().u(i));
      acc.add(b, Rational(-1, 2), M().u(i, 2));
    }
    return acc.finish();
  });
}

Expression Genus2::l_b() const {
  require_cap(kGenus2Cap);
  return memo("LB", [&] {
    const int n = n_;
    ExprSum acc;
    for (int i = 1; i <= n; ++i) {
      const Expression phi_i = phi({i});
      const Expression phi_ii = phi({i, i});
      const Expression phi_iii = phi({i, i, i});
      acc.add(phi({i, i, i, i}), Rational(1, 10), M().u(i, 2).ig(i));
      acc.add_product(phi_i, phi_iii, Rational(12, 5), M().u(i, 2).ig(i));
      acc.add_product(phi_ii, phi_ii, Rational(-18, 5), M().u(i, 2).ig(i));
      for (int j = 1; j <= n; ++j) {
        const Expression phi_j = phi({j});
        const Expression phi_ij = phi({i, j});
        const Expression phi_iij = phi({i, i, j});
        const Expression w_ij = weight2(i, j);
        acc.add_product(w_ij, phi({i, i, i, j}), Rational(-1, 120), M().ig(j));
        acc.add_product(w_ij, phi({i, i, j, j}), Rational(-1, 20), M().ig(j));
        acc.add_product(weight2(j, i) * phi_i, phi({i, j, j}), Rational(-6, 5), M().ig(i));
        acc.add_product(w_ij * phi_ij, phi_ij, Rational(9, 5), M().ig(j));
        for (int k = 1; k <= n; ++k) {
          const Expression phi_k = phi({k});
          const Expression phi_jk = phi({j, k});
          const Expression w3 = weight3(k, i, j);
          acc.add(z({i, j, j, j, j, k, k}), Rational(1, 240), M().u(i).u(j).ig(j).ig(k));
          // phi_i groups
          acc.add_product(phi_i, z({i, i, i, j, k, k}), Rational(1, 10), M().u(i).u(j).ig(i).ig(k));
          acc.add_product(phi_i, z({i, j, k, k, k, k}), Rational(1, 10), M().u(j).u(k).ig(i).ig(k));
          acc.add_product(phi_i * w3, z({i, j, j, k, k, k}), Rational(1, 120), M().ig(i).ig(j));
          // phi_ii
          acc.add_product(phi_ii, z({i, i, j, k, k}), Rational(-3, 10), M().u(i).u(j).ig(i).ig(k));
          // phi_ij
          acc.add_product(phi_ij, z({i, i, i, j, k}), Rational(2, 5), M().u(i).u(k).ig(i).ig(j));
          acc.add_product(phi_ij * w3, z({i, j, k, k, k}), Rational(1, 10), M().ig(i).ig(j));
          acc.add_product(phi_ij * weight3(i, j, k), z({i, i, j, k, k}), Rational(-3, 40),
                          M().ig(j).ig(k));
          // phi_iii
          acc.add_product(phi_iii, z({i, j, k, k}), Rational(1, 10), M().u(i).u(j).ig(i).ig(k));
          // phi_iij
          acc.add_product(phi_iij, z({i, i, j, k}), Rational(3, 5), M().u(i).u(k).ig(i).ig(j));
          acc.add_product(phi_iij * w3, z({j, k, k, k}), Rational(-1, 20), M().ig(i).ig(j));
          acc.add_product(phi_iij * w_ij, z({i, j, k, k}), Rational(3, 40), M().ig(j).ig(k));
          // phi_ijk
          const Expression phi_ijk = phi({i, j, k});
          acc.add_product(phi_ijk * weight3(i, j, k), z({i, i, j, k}), Rational(-3, 10), M().ig(j).ig(k));
          // phi_i phi_j
          const Expression pp = phi_i * phi_j;
          acc.add_product(pp, z({i, i, i, j, k}), Rational(12, 5), M().u(i).u(k).ig(i).ig(j));
          acc.add_product(pp * w3, z({i, j, k, k, k}), Rational(1, 5), M().ig(i).ig(j));
          // phi_i phi_jj
          acc.add_product(phi_i * phi({j, j}), z({i, j, j, k}), Rational(-36, 5), M().u(j).u(k).ig(i).ig(j));
          // phi_i phi_ij
          const Expression pij = phi_i * phi_ij;
          acc.add_product(pij, z({i, i, j, k}), Rational(36, 5), M().u(i).u(k).ig(i).ig(j));
          acc.add_product(pij * w3, z({j, k, k, k}), Rational(-6, 5), M().ig(i).ig(j));
          // phi_i phi_jk
          acc.add_product(phi_i * phi_jk * weight3(j, i, k), z({i, j, j, k}), Rational(-6, 5),
                          M().ig(i).ig(k));

          for (int p = 1; p <= n; ++p) {
            acc.add(z({i, i, j, j, k, k, p}), Rational(-1, 480), M().u(i).u(p).ig(j).ig(k));
            acc.add(z({i, i, i, j, k, k, p}), Rational(-1, 2880), M().u(i).u(p).ig(j).ig(k));
            acc.add_product(phi_i, z({i, j, j, k, k, p}), Rational(-11, 120), M().u(k).u(p).ig(i).ig(j));
            acc.add_product(phi_i, z({i, j, k, k, k, p}), Rational(-1, 120), M().u(k).u(p).ig(i).ig(j));
            acc.add_product(phi_ij, z({i, j, k, k, p}) + z({i, i, j, k, p}), Rational(-1, 40),
                            M().u(i).u(p).ig(j).ig(k));
            acc.add_product(phi_ij, z({i, k, k, k, p}), Rational(-1, 120), M().u(k).u(p).ig(i).ig(j));
            acc.add_product(phi_iij, z({j, k, k, p}), Rational(-1, 10), M().u(i).u(p).ig(j).ig(k));
            acc.add_product(phi_iij, z({j, k, k, p}), Rational(-1, 10), M().u(k).u(p).ig(i).ig(j));
            acc.add_product(phi_iij, z({i, j, k, p}), Rational(1, 20), M().u(i).u(p).ig(j).ig(k));
            acc.add_product(phi_ijk, z({i, i, k, p}), Rational(-1, 40), M().u(i).u(p).ig(j).ig(k));
            acc.add_product(phi_ijk, z({i, j, k, p}), Rational(-1, 2), M().u(i).u(p).ig(j).ig(k));
            acc.add_product(pp, z({i, j, k, k, p}), Rational(-1), M().u(k).u(p).ig(i).ig(j));
            acc.add_product(pij, z({j, k, k, p}), Rational(-12, 5), M().u(k).u(p).ig(i).ig(j));

            for (int q = 1; q <= n; ++q) {
              const Monomial wipq = M().u(i).u(p).ig(j).ig(k).ig(q);
              acc.add_product(z({i, i, i, j, j, k}), z({k, p, q, q}), Rational(1, 2880), wipq);
              acc.add_product(z({i, i, i, j}), z({j, k, k, p, q, q}), Rational(-1, 480), wipq);
              acc.add_product(z({i, j, j, k}), z({i, i, k, p, q, q}), Rational(1, 320), wipq);
              acc.add_product(z({i, i, j, k}), z({i, j, k, p, q, q}), Rational(-1, 80), wipq);
              acc.add_product(z({i, i, i, j, k}), z({j, k, p, q, q}), Rational(1, 240), wipq);
              acc.add_product(z({i, i, j, j, k}), z({i, k, p, q, q}), Rational(-1, 320), wipq);

              const Monomial wpq = M().u(p).u(q).ig(i).ig(j).ig(k);
              acc.add_product(phi_i * z({i, j, q, q, q}), z({j, k, k, p}), Rational(1, 40), wpq);
              acc.add_product(phi_i * z({i, j, k, k, p}), z({j, q, q, q}), Rational(-11, 120), wpq);
              acc.add_product(phi_i * z({i, k, q, q}), z({j, j, k, p, q}), Rational(-1, 24), wpq);
              acc.add_product(phi_i * z({i, j, k, p}), z({j, k, q, q, q}), Rational(7, 60), wpq);
              acc.add_product(phi_i * z({i, j, k, q, q}), z({j, k, p, q}), Rational(1, 60), wpq);
              acc.add_product(phi_i * z({i, k, p, q}), z({j, j, k, q, q}), Rational(-1, 15), wpq);
              acc.add_product(phi_i * z({i, j, k, p, q}), z({j, k, q, q}), Rational(-17, 60), wpq);
              acc.add_product(phi_i * z({i, k, p, q, q}), z({j, j, k, q}), Rational(3, 40), wpq);

              acc.add_product(phi_ij * z({i, k, k, p}), z({j, q, q, q}), Rational(-4, 40), wpq);
              acc.add_product(phi_ij * z({i, k, p, q}), z({j, k, q, q}), Rational(-16, 40), wpq);
              acc.add_product(phi_ij * z({i, p, q, q}), z({j, k, k, q}), Rational(3, 40), wpq);
              acc.add_product(phi_ij * z({i, i, j, k}), z({k, p, q, q}), Rational(-5, 40), wipq);
              acc.add_product(phi_ij * z({i, i, k, q}), z({j, k, p, q}), Rational(-18, 40), wipq);
              acc.add_product(phi_ij * z({i, k, q, q}), z({i, j, k, p}), Rational(6, 40), wipq);

              acc.add_product(pp * z({i, k, p, q}), z({j, k, q, q}), Rational(-4, 5), wpq);
              acc.add_product(pp * z({i, j, k, p}), z({k, q, q, q}), Rational(-1), wpq);
            }
          }
        }
      }
    }
    return acc.finish().scaled(Rational(1, 2));
  });
}

}  // namespace rotcalc
