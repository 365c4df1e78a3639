#include <doctest.h>

#include <random>

#include "random_expr.hpp"
#include "rotcalc/errors.hpp"
#include "rotcalc/evaluate.hpp"
#include "rotcalc/expression.hpp"
#include "rotcalc/json_io.hpp"

using namespace rotcalc;

TEST_CASE("rational arithmetic crosses the inline boundary exactly") {
  Rational big(std::int64_t{1} << 61);
  Rational sq = big * big * big;
  CHECK(sq.str() == "12259964326927110866866776217202473468949912977468817408");
  CHECK((sq / big / big) == big);
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK_THROWS_AS(Rational::parse("x"), ParseError);
  Rational x = Rational(3, 7);
  for (int k = 0; k < 40; ++k) x *= Rational(1000003, 999983);
  for (int k = 0; k < 40; ++k) x /= Rational(1000003, 999983);
  CHECK(x == Rational(3, 7));
}

TEST_CASE("generator layout round-trips") {
  for (int v = 0; v < kNumVars; ++v) CHECK(var_index(var_symbol(v)) == v);
  CHECK(r_var(2, 1) == r_var(1, 2));
  for (int p = 0; p < kNumPairs; ++p) {
    auto [i, j] = pair_of(p);
    CHECK(pair_index(i, j) == p);
  }
}

TEST_CASE("basic arithmetic examples") {
  CHECK((Expression::u(1) - Expression::u(1)).is_zero());
  CHECK(Expression::s(1) * Expression::s(1) == Expression::s(1, 2));
  CHECK((Expression::inverse_delta(1, 2) + Expression::inverse_delta(2, 1)).is_zero());
  CHECK(Expression::s(1, 3) * Expression::s(1, -3) == Expression(1));
  CHECK_FALSE(equals(Expression::u(1), Expression::u(2)));
}

TEST_CASE("normalization cancels exact Delta factors") {
  Expression num = Expression::u(1).pow(2) - Expression::u(2).pow(2);
  Expression q = num * Expression::inverse_delta(1, 2);
  CHECK(q == Expression::u(1) + Expression::u(2));
  CHECK(q.den().empty());
  Expression p = Expression::r(1, 2) * Expression::inverse_delta(1, 2, 2);
  CHECK(p.delta_degree(1, 2) == 2);
  Expression back = p * (Expression::u(1) - Expression::u(2));
  CHECK(back.delta_degree(1, 2) == 1);
  CHECK(Expression::normalized(back.num(), back.den()) == back);
}

TEST_CASE("degree grading") {
  CHECK(degree(Expression::r(1, 2)).is(1));
  CHECK(degree(Expression::u(1) * Expression::r(1, 1).pow(2)).is(1));
  CHECK(degree(Expression::r(1, 2) * Expression::inverse_delta(1, 2)).is(2));
  CHECK(degree(Expression::t(3, 1) * Expression::s(1, -4)).is(3));
  CHECK(degree(Expression()).kind == Degree::Kind::Zero);
  CHECK(degree(Expression::u(1) + Expression::r(1, 1)).kind == Degree::Kind::NonHomogeneous);
}

TEST_CASE("evaluate substitutes exactly") {
  Point p;
  p.set(GeneratorSymbol::u(1), Rational(2));
  p.set(GeneratorSymbol::s(1), Rational(3));
  CHECK(evaluate(Expression::u(1) * Expression::s(1, -2), p) == Rational(2, 9));
  p.set(GeneratorSymbol::u(2), Rational(2));
  CHECK_THROWS_AS(evaluate(Expression::inverse_delta(1, 2), p), PoleHit);
  CHECK_THROWS_AS(evaluate(Expression::r(1, 2), p), MissingAssignment);
}

TEST_CASE("ring axioms and evaluation morphism on random expressions") {
  std::mt19937_64 rng(7);
  Context ctx(3);
  for (int round = 0; round < 60; ++round) {
    Expression a = testing_support::random_expression(rng, 3);
    Expression b = testing_support::random_expression(rng, 3);
    Expression c = testing_support::random_expression(rng, 3);
    CHECK(equals((a + b) + c, a + (b + c)));
    CHECK(equals(a * (b + c), a * b + a * c));
    CHECK(equals(a * b, b * a));
    CHECK(Expression::normalized(a.num(), a.den()) == a);
    Point pt = random_point(ctx, rng);
    CHECK(evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt));
    CHECK(evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt));
  }
}

TEST_CASE("ExprSum agrees with repeated addition") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 30; ++round) {
    Expression direct;
    ExprSum acc;
    for (int k = 0; k < 6; ++k) {
      Expression a = testing_support::random_expression(rng, 3, 3);
      Expression b = testing_support::random_expression(rng, 3, 2);
      direct += a * b * Expression(Rational(k - 2, 5));
      acc.add_product(a, b, Rational(k - 2, 5));
      direct += a;
      acc += a;
    }
    CHECK(acc.finish() == direct);
  }
}

TEST_CASE("json rendering round-trips") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 40; ++round) {
    Expression a = testing_support::random_expression(rng, 4);
    CHECK(expression_from_json(nlohmann::json::parse(to_json(a).dump())) == a);
  }
  CHECK(parse_generator("t3_2") == GeneratorSymbol::t(3, 2));
  CHECK(parse_generator("r21") == GeneratorSymbol::r(1, 2));
  CHECK_THROWS_AS(parse_generator("q1"), ParseError);
}

TEST_CASE("text rendering is canonical") {
  Expression e = Expression(Rational(-5, 5760)) * Expression::t(3, 1) * Expression::s(1, -4);
  CHECK(to_text(e) == "-1/1152*s1^-4*t3_1");
  CHECK(to_text(Expression::inverse_delta(2, 1)) == "(-1)/((u1-u2))");
  CHECK(to_text(Expression()) == "0");
}

TEST_CASE("coefficient extraction") {
  Expression e = Expression(3) * Expression::t(4, 1) * Expression::s(1, -4) +
                 Expression::t(4, 1) * Expression::s(1, -2) + Expression::r(1, 1);
  CHECK(coefficient(e, {{GeneratorSymbol::t(4, 1), 1}, {GeneratorSymbol::s(1), -4}}) ==
        Expression(3));
  CHECK(coefficient(e, {{GeneratorSymbol::t(4, 1), 0}}) == Expression::r(1, 1));
  CHECK(t_levels(e) == std::vector<int>{4});
}
