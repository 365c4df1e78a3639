#include <doctest.h>

#include <vector>

#include "rotcalc/derivation.hpp"
#include "rotcalc/errors.hpp"

using namespace rotcalc;

namespace {

Expression U(int i) { return Expression::u(i); }
Expression R(int i, int j) { return Expression::r(i, j); }
Expression T(int k, int i) { return Expression::t(k, i); }
Expression S(int i, int p = 1) { return Expression::s(i, p); }
Expression Q(std::int64_t a, std::int64_t b = 1) { return Expression(Rational(a, b)); }

std::vector<Expression> generators(int n, int max_level) {
  std::vector<Expression> out;
  for (int i = 1; i <= n; ++i) {
    out.push_back(U(i));
    out.push_back(S(i));
    out.push_back(S(i, -1));
    for (int j = i; j <= n; ++j) out.push_back(R(i, j));
    for (int k = 2; k <= max_level; ++k) out.push_back(T(k, i));
  }
  return out;
}

}  // namespace

TEST_CASE("derive on generators") {
  Calculus c2{Context(2)};
  CHECK(c2.derive(1, U(1)) == Expression(1));
  CHECK(c2.derive(2, U(1)).is_zero());
  CHECK(c2.derive(2, S(1)) == R(1, 2) * S(2));
  Calculus c1{Context(1)};
  CHECK(c1.derive(1, R(1, 1)) == -(R(1, 1) * R(1, 1)) + T(2, 1) * S(1, -2));
  CHECK(c1.derive(1, S(1, 2)) == Q(2) * R(1, 1) * S(1, 2));
}

TEST_CASE("derive respects the t-level cap") {
  Calculus c{Context(2, 3)};
  CHECK_NOTHROW(c.derive(2, T(3, 1)));
  CHECK_THROWS_AS(c.derive(1, T(3, 1)), TauLevelOverflow);
}

TEST_CASE("special quantities") {
  Calculus c{Context(2)};
  CHECK(c.special(SpecialKind::V, 1, 1).is_zero());
  CHECK(equals(c.v(1, 2), -c.v(2, 1)));
  Expression expected = (R(1, 2) + (U(1) - U(2)) * R(1, 1) * R(1, 2)) * Expression::inverse_delta(2, 1);
  CHECK(c.theta(1, 2) == expected);
  CHECK_THROWS_AS(c.special(SpecialKind::Theta, 1, 1), BadIndexPair);
  CHECK(c.theta(1, 2).delta_degree(1, 2) == 1);
  CHECK(c.omega(1, 2).delta_degree(1, 2) == 2);
  CHECK(c.lambda(1, 2).delta_degree(1, 2) == 3);
  CHECK(degree(c.theta(1, 2)).is(2));
  CHECK(degree(c.omega(1, 2)).is(3));
  CHECK(degree(c.lambda(1, 2)).is(4));
}

TEST_CASE("symmetry laws of theta, omega, lambda") {
  for (int n = 2; n <= 4; ++n) {
    Calculus c{Context(n)};
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        Expression rr;
        Expression tt;
        for (int k = 1; k <= n; ++k) {
          rr += R(i, k) * R(j, k);
          Expression ti = k == i ? c.theta_diagonal(i) : c.theta(i, k);
          Expression tj = k == j ? c.theta_diagonal(j) : c.theta(j, k);
          tt += ti * tj;
        }
        CHECK(equals(c.theta(i, j) + c.theta(j, i), -rr));
        CHECK(equals(c.omega(i, j), c.omega(j, i)));
        CHECK(equals(c.lambda(i, j) + c.lambda(j, i), tt));
      }
    }
  }
}

TEST_CASE("idempotent derivations commute") {
  for (int n = 2; n <= 3; ++n) {
    Calculus c{Context(n, 4)};
    for (const auto& f : generators(n, 2)) {
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          CHECK(equals(c.derive(i, c.derive(j, f)), c.derive(j, c.derive(i, f))));
        }
      }
    }
  }
}

TEST_CASE("stated derivative laws") {
  for (int n = 2; n <= 3; ++n) {
    Calculus c{Context(n)};
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        Expression lhs = c.derive(j, c.theta(i, j));
        Expression rhs = (R(j, j) - S(j) * S(i, -1) * R(i, j)) * c.theta(i, j) - c.omega(i, j);
        CHECK(equals(lhs, rhs));
        Expression bracket = S(i) * S(j, -1) * c.theta(i, j);
        for (int k = 1; k <= n; ++k) {
          bracket += R(i, k) * R(i, k);
          if (k != i) bracket += S(k) * S(i, -1) * c.theta(k, i);
        }
        CHECK(equals(c.derive(i, c.omega(i, j)), c.theta(j, i) * bracket + c.lambda(i, j)));
        CHECK(((U(i) - U(j)) * c.lambda(j, i)).delta_degree(i, j) <= 2);
      }
      Expression diag = R(i, i) * R(i, i) + c.theta_diagonal(i);
      for (int p = 1; p <= n; ++p) {
        if (p != i) diag += S(p) * S(i, -1) * c.theta(p, i);
      }
      CHECK(equals(c.derive(i, R(i, i)), diag));
    }
  }
}

TEST_CASE("T(X) on generators") {
  Calculus c{Context(2)};
  CHECK(c.act_T_xbar(U(1)).is_zero());
  CHECK(c.act_T_xbar(S(2)) == -(U(2) * S(2)));
  CHECK(c.act_T_xbar(T(2, 1)) == -(U(1) * T(2, 1)));
  CHECK(c.act_T_xbar(R(1, 2)).is_zero());
  CHECK(c.act_T_xbar(S(1, 2)) == Q(-2) * U(1) * S(1, 2));
}

TEST_CASE("general vector-field route reproduces E_k") {
  Calculus c{Context(3)};
  for (int k = 1; k <= 3; ++k) {
    PairingFn ek = [k](int level, int i) {
      return level == 0 && i == k ? Expression::g(i) : Expression();
    };
    RuleTable general = c.vector_field_rules(ek, "E");
    for (const auto& f : generators(3, 5)) CHECK(equals(apply_rules(general, f), c.derive(k, f)));
  }
}

TEST_CASE("L_m lemma rules agree with the general route") {
  for (int n = 1; n <= 3; ++n) {
    Calculus c{Context(n)};
    for (int m = 0; m <= 2; ++m) {
      for (const auto& f : generators(n, 5)) {
        CHECK(equals(c.act_L(m, f, LRoute::Lemma), c.act_L(m, f, LRoute::VectorField)));
      }
    }
  }
}

TEST_CASE("L_1 matches its simplified form") {
  for (int n = 1; n <= 3; ++n) {
    Calculus c{Context(n)};
    for (int i = 1; i <= n; ++i) {
      CHECK(c.act_L(1, U(i)) == -(U(i) * U(i)));
      CHECK(c.act_L(1, S(i, 2)) == Q(6) * U(i) * S(i, 2));
      for (int j = 1; j <= n; ++j) {
        Expression expected = (U(i) + U(j)) * R(i, j);
        if (i == j) expected += Q(15, 4);
        for (int k = 1; k <= n; ++k) expected -= c.v(i, k) * c.v(j, k);
        CHECK(equals(c.act_L(1, R(i, j)), expected));
      }
    }
  }
  Calculus c2{Context(2)};
  CHECK(equals(c2.act_L(1, R(1, 2)), (U(1) + U(2)) * R(1, 2)));
}

TEST_CASE("L_1 on v, theta, omega and t-symbols") {
  for (int n = 2; n <= 3; ++n) {
    Calculus c{Context(n)};
    for (int i = 1; i <= n; ++i) {
      Expression l1t2 = Q(10) * U(i) * T(2, i);
      Expression l1t3 = Q(63, 4) * T(2, i) * S(i, -4);
      for (int j = 1; j <= n; ++j) {
        l1t2 += Q(35, 4) * R(i, j) * S(i) * S(j);
        l1t3 += Q(8) * c.v(i, j) * S(i, -3) * S(j, -1) * T(2, j);
        for (int k = 1; k <= n; ++k) {
          l1t2 += Q(6) * c.v(i, j) * R(j, k) * S(i) * S(k);
          l1t3 += c.v(i, j) * c.v(j, k) * S(i, -3) * S(k, -1) * T(2, k);
          for (int l = 1; l <= n; ++l) l1t2 += c.v(i, j) * c.v(j, k) * R(k, l) * S(i) * S(l);
        }
      }
      CHECK(equals(c.act_L(1, T(2, i)), l1t2));
      CHECK(equals(c.act_L(1, T(3, i) * S(i, -4)), l1t3));
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        Expression vv;
        Expression theta_rhs = (Q(3) * U(i) + U(j)) * c.theta(i, j) - Q(11, 4) * R(i, j);
        Expression omega_rhs = Q(3) * (U(i) + U(j)) * c.omega(i, j);
        for (int k = 1; k <= n; ++k) {
          vv += c.v(i, k) * c.v(j, k);
          omega_rhs -= Q(11, 4) * R(i, k) * R(j, k);
          for (int l = 1; l <= n; ++l) {
            theta_rhs += R(i, k) * c.v(j, l) * c.v(k, l);
            for (int p = 1; p <= n; ++p) omega_rhs += R(i, l) * R(j, k) * c.v(k, p) * c.v(l, p);
          }
        }
        CHECK(equals(c.act_L(1, c.v(i, j)), (U(i) - U(j)) * vv));
        CHECK(equals(c.act_L(1, c.theta(i, j)), theta_rhs));
        CHECK(equals(c.act_L(1, c.omega(i, j)), omega_rhs));
      }
    }
  }
}

TEST_CASE("L_-1 acts as -S") {
  Calculus c{Context(3)};
  for (int i = 1; i <= 3; ++i) {
    CHECK(c.act_L(-1, U(i)) == Expression(-1));
    CHECK(c.act_L(-1, S(i)).is_zero());
    CHECK(c.act_L(-1, R(i, i)).is_zero());
  }
}

TEST_CASE("degree bookkeeping on generators") {
  Calculus c{Context(3)};
  for (const auto& f : generators(3, 4)) {
    const int d = degree(f).value;
    for (int k = 1; k <= 3; ++k) {
      Degree dd = degree(c.derive(k, f));
      CHECK((dd.kind == Degree::Kind::Zero || dd.is(d + 1)));
    }
    Degree dt = degree(c.act_T_xbar(f));
    CHECK((dt.kind == Degree::Kind::Zero || dt.is(d - 1)));
    for (int m = 0; m <= 2; ++m) {
      Degree dl = degree(c.act_L(m, f));
      CHECK((dl.kind == Degree::Kind::Zero || dl.is(d - m)));
    }
  }
}

TEST_CASE("pairing closed forms") {
  Calculus c1{Context(1)};
  CHECK(c1.pairing(VectorId::S(), 0, 1) == Expression::g(1));
  CHECK(c1.pairing(VectorId::L(1), 1, 1) ==
        Q(-3) * U(1) * S(1, 2) - U(1) * U(1) * R(1, 1) * S(1, 2));
  Calculus c{Context(3)};
  for (int i = 1; i <= 3; ++i) {
    Expression expected = -(U(i) * T(2, i)) - Q(5, 2) * c.tau_s(1, i);
    for (int j = 1; j <= 3; ++j) expected -= c.v(i, j) * S(i) * S(j, -1) * c.tau_s(1, j);
    CHECK(equals(c.pairing(VectorId::L(0), 2, i), expected));
    CHECK(c.pairing(VectorId::S(), 3, i) == T(3, i));
    CHECK(c.pairing(VectorId::xbar_pow(2), 0, i) == U(i) * U(i) * S(i, 2));
  }
  CHECK_THROWS_AS(c.pairing(VectorId::xbar_pow(1), 1, 1), UnsupportedPairing);
  Calculus capped{Context(3, 3)};
  CHECK_THROWS_AS(capped.pairing(VectorId::L(1), 4, 1), TauLevelOverflow);
}

TEST_CASE("level recursion reproduces the closed forms") {
  for (int n = 1; n <= 3; ++n) {
    Calculus c{Context(n)};
    for (int i = 1; i <= n; ++i) {
      for (int m = 0; m <= 4; ++m) {
        CHECK(equals(c.pairing_by_recursion(m, 1, i), c.tau_lm_rot(m, i)));
        CHECK(equals(c.pairing_by_recursion(m, 2, i), c.tau2_lm_rot(m, i)));
      }
      for (int level = 1; level <= 5; ++level) {
        CHECK(equals(c.pairing_by_recursion(0, level, i), c.l0_closed(level, i)));
        CHECK(equals(c.pairing_by_recursion(1, level, i), c.l1_closed(level, i)));
      }
    }
  }
}

TEST_CASE("L_m satisfy the Virasoro bracket") {
  for (int n = 1; n <= 2; ++n) {
    Calculus c{Context(n, 4)};
    auto L = [&](int m, const Expression& e) { return c.act_L(m, e); };
    for (const auto& f : generators(n, 2)) {
      for (int a = -1; a <= 3; ++a) {
        for (int b = a + 1; b <= 3 && a + b <= 3; ++b) {
          Expression bracket = L(a, L(b, f)) - L(b, L(a, f));
          CHECK(equals(bracket, Expression(a - b) * L(a + b, f)));
        }
      }
    }
  }
}

TEST_CASE("G* rows") {
  Calculus c1{Context(1)};
  CHECK(c1.gstar(1) == std::vector<Expression>{Q(1, 2)});
  Calculus c2{Context(2)};
  auto row = c2.gstar(1);
  CHECK(row[0] == Q(1, 2));
  CHECK(row[1] == (U(1) - U(2)) * R(1, 2) * S(1) * S(2, -1));
}
