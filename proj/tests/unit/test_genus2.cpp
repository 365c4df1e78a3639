#include <doctest.h>

#include <algorithm>

#include "rotcalc/errors.hpp"
#include "rotcalc/genus2.hpp"

using namespace rotcalc;

namespace {

Expression U(int i) { return Expression::u(i); }
Expression R(int i, int j) { return Expression::r(i, j); }
Expression T(int k, int i) { return Expression::t(k, i); }
Expression S(int i, int p = 1) { return Expression::s(i, p); }
Expression Q(std::int64_t a, std::int64_t b = 1) { return Expression(Rational(a, b)); }

struct Setup {
  explicit Setup(int n, int cap = 6) : calc{Context(n, cap)}, store(calc), g2(calc, store) {}
  Calculus calc;
  CorrelatorStore store;
  Genus2 g2;
};

bool only_t_levels(const Expression& e, const std::vector<int>& allowed) {
  for (int k : t_levels(e)) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) return false;
  }
  return true;
}

}  // namespace

// Values from tests/oracles/n1_genus2.py.
TEST_CASE("one-dimensional reference values") {
  Setup s(1);
  const Expression r = R(1, 1);
  const Expression g = S(1, 2);
  const Expression ig = S(1, -2);

  CHECK(s.store.z({1, 1, 1, 1, 1, 1}) == Q(-15) * g * r.pow(3) + Q(10) * r * T(2, 1) - T(3, 1));
  CHECK(s.store.phi({1, 1, 1}) ==
        (Q(-8) * g * r.pow(3) + Q(7) * r * T(2, 1) - T(3, 1)) * ig * Q(1, 24));
  CHECK(s.store.phi({1, 1, 1, 1}) ==
        (Q(48) * g.pow(2) * r.pow(4) + g * (Q(-59) * r.pow(2) * T(2, 1) + Q(11) * r * T(3, 1) - T(4, 1)) +
         Q(7) * T(2, 1).pow(2)) *
            ig.pow(2) * Q(1, 24));

  CHECK(s.g2.b_diag(1) == (Q(-84) * g * r.pow(2) * T(2, 1) + Q(29) * g * r * T(3, 1) -
                           Q(5) * g * T(4, 1) + Q(29) * T(2, 1).pow(2)) *
                              ig.pow(3) * Q(1, 2880));

  const Expression f2 = (Q(-28) * g * r.pow(3) + Q(29) * r * T(2, 1) - Q(5) * T(3, 1)) * ig.pow(2) * Q(1, 5760);
  CHECK(s.g2.f2(F2Route::Rotation) == f2);
  CHECK(s.g2.f2(F2Route::Assembled) == f2);

  const Expression l1 = (Q(6) * T(2, 1) * ig.pow(2) - Q(49, 4) * r.pow(2) * ig) * Q(1, 1152);
  CHECK(s.g2.l1f2_target() == l1);
  CHECK(s.g2.prediction(PredictionRoute::Rotation) == l1);
  CHECK(s.g2.prediction(PredictionRoute::Gstar) == l1);
  CHECK(s.g2.l_a() + s.g2.l_b() == l1);
}

TEST_CASE("B carries the fourth t-level with coefficient -1/576") {
  for (int n = 1; n <= 2; ++n) {
    Setup s(n);
    for (int i = 1; i <= n; ++i) {
      const Expression b = s.g2.b_diag(i);
      CHECK(degree(b).is(4));
      CHECK(coefficient(b, {{GeneratorSymbol::t(4, i), 1}, {GeneratorSymbol::s(i), -4}}) == Q(-1, 576));
      CHECK(coefficient(b, {{GeneratorSymbol::t(4, i), 1}, {GeneratorSymbol::s(i), -2}}).is_zero());
    }
  }
}

TEST_CASE("A1 brackets and degrees") {
  Setup s(2);
  CHECK(degree(s.g2.a1_of(A1Arg::TauS)).is(3));
  CHECK(degree(s.g2.a1_of(A1Arg::Tau2L0)).is(3));
  CHECK(degree(s.g2.a1_of(A1Arg::Tau2L1)).is(2));

  PairingLevels probe;
  for (auto& level : probe) level.assign(2, Expression());
  probe[2][0] = Q(1);
  CHECK(s.g2.a1(probe) == Q(1, 1152) * S(1, -4));
}

TEST_CASE("genus-2 generating function: both routes agree") {
  for (int n = 1; n <= 2; ++n) {
    Setup s(n);
    const Expression rot = s.g2.f2(F2Route::Rotation);
    const Expression asm_ = s.g2.f2(F2Route::Assembled);
    CHECK(asm_ == rot);
    CHECK(degree(rot).is(3));
    CHECK(only_t_levels(rot, {2, 3}));
    CHECK(max_pole_order(rot) <= 2);
  }
}

TEST_CASE("L1 on F2, the closed target and the prediction coincide") {
  for (int n = 1; n <= 2; ++n) {
    Setup s(n);
    const Expression target = s.g2.l1f2_target();
    CHECK(degree(target).is(2));
    CHECK(only_t_levels(target, {2}));
    CHECK(max_pole_order(target) <= 1);
    CHECK(s.calc.act_L(1, s.g2.f2(F2Route::Rotation)) == target);
    CHECK(s.g2.prediction(PredictionRoute::Rotation) == target);
    CHECK(s.g2.prediction(PredictionRoute::Gstar) == target);
  }
}

TEST_CASE("c and d closed forms match their definitions") {
  Setup s(3);
  for (int i = 1; i <= 3; ++i) {
    for (int k = 2; k <= 4; ++k) {
      for (int j = 1; j <= 3; ++j) {
        const Expression c = s.g2.c_coeff(i, j, k);
        CHECK(c == s.g2.c_coeff_by_definition(i, j, k));
        CHECK((c.is_zero() || degree(c).is(k - 2)));
      }
    }
    for (int k = 1; k <= 4; ++k) {
      const Expression d = s.g2.d_coeff(i, k);
      CHECK(d == s.g2.d_coeff_by_definition(i, k));
      CHECK((d.is_zero() || degree(d).is(k - 1)));
    }
  }
  CHECK_THROWS_AS(s.g2.c_coeff(1, 1, 1), UnsupportedPairing);
  CHECK_THROWS_AS(s.g2.d_coeff(1, 0), UnsupportedPairing);
}

TEST_CASE("L_A and L_B displays match their definitions and sum to L1 F2") {
  for (int n = 1; n <= 2; ++n) {
    Setup s(n);
    const auto [la, lb] = s.g2.appendix_decomposition();
    CHECK(la == s.g2.l_a_by_definition());
    CHECK(lb == s.g2.l_b_by_definition());
    CHECK(degree(la).is(2));
    CHECK(degree(lb).is(2));
    const Expression sum = la + lb;
    CHECK(sum == s.g2.l1f2_target());
    for (int i = 1; i <= n; ++i) {
      CHECK(!sum.mentions(GeneratorSymbol::t(3, i)));
      CHECK(!sum.mentions(GeneratorSymbol::t(4, i)));
      CHECK((la.mentions(GeneratorSymbol::t(3, i)) || la.mentions(GeneratorSymbol::t(4, i))));
    }
  }
}

TEST_CASE("genus-2 quantities need t-levels up to 5") {
  Setup s(1, 4);
  CHECK_THROWS_AS(s.g2.b_diag(1), TauLevelOverflow);
  CHECK_THROWS_AS(s.g2.f2(F2Route::Assembled), TauLevelOverflow);
}
