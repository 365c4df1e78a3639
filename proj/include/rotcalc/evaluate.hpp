#pragma once

#include <array>
#include <optional>
#include <random>

#include <gmpxx.h>

#include "rotcalc/context.hpp"
#include "rotcalc/expression.hpp"

namespace rotcalc {

// Rational values for generators.
class Point {
 public:
  void set(const GeneratorSymbol& g, const Rational& value);
  const std::optional<mpq_class>& at(int var) const { return values_[var]; }

 private:
  std::array<std::optional<mpq_class>, kNumVars> values_;
};

Rational evaluate(const Expression& e, const Point& point);

// Distinct u's, nonzero s's, arbitrary r's and t's up to the context cap,
// all small rationals.
Point random_point(const Context& ctx, std::mt19937_64& rng);

}  // namespace rotcalc
