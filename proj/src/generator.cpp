#include "rotcalc/generator.hpp"

#include <cassert>

#include "rotcalc/errors.hpp"

namespace rotcalc {

int GeneratorSymbol::degree() const {
  switch (kind) {
    case Kind::U:
      return -1;
    case Kind::S:
      return 0;
    case Kind::R:
      return 1;
    case Kind::T:
      return a;
  }
  return 0;
}

std::string GeneratorSymbol::name() const {
  switch (kind) {
    case Kind::U:
      return "u" + std::to_string(a);
    case Kind::S:
      return "s" + std::to_string(a);
    case Kind::R:
      return "r" + std::to_string(a) + std::to_string(b);
    case Kind::T:
      return "t" + std::to_string(a) + "_" + std::to_string(b);
  }
  return {};
}

int r_var(int i, int j) {
  if (i > j) std::swap(i, j);
  // Row-major over the upper triangle including the diagonal.
  int offset = 0;
  for (int row = 1; row < i; ++row) offset += kMaxDimension - row + 1;
  return kROffset + offset + (j - i);
}

int var_index(const GeneratorSymbol& g) {
  auto in_range = [](int i) { return i >= 1 && i <= kMaxDimension; };
  switch (g.kind) {
    case GeneratorSymbol::Kind::U:
      if (!in_range(g.a)) break;
      return u_var(g.a);
    case GeneratorSymbol::Kind::S:
      if (!in_range(g.a)) break;
      return s_var(g.a);
    case GeneratorSymbol::Kind::R:
      if (!in_range(g.a) || !in_range(g.b)) break;
      return r_var(g.a, g.b);
    case GeneratorSymbol::Kind::T:
      if (g.a < 2 || g.a > kMaxTauCap || !in_range(g.b)) break;
      return t_var(g.a, g.b);
  }
  throw ContextError("generator out of layout range: " + g.name());
}

GeneratorSymbol var_symbol(int v) {
  assert(v >= 0 && v < kNumVars);
  if (v < kSOffset) return GeneratorSymbol::u(v - kUOffset + 1);
  if (v < kROffset) return GeneratorSymbol::s(v - kSOffset + 1);
  if (v < kTOffset) {
    int rest = v - kROffset;
    for (int i = 1; i <= kMaxDimension; ++i) {
      int row = kMaxDimension - i + 1;
      if (rest < row) return GeneratorSymbol::r(i, i + rest);
      rest -= row;
    }
  }
  int rel = v - kTOffset;
  return GeneratorSymbol::t(rel / kMaxDimension + 2, rel % kMaxDimension + 1);
}

int var_degree(int v) {
  if (v < kSOffset) return -1;
  if (v < kROffset) return 0;
  if (v < kTOffset) return 1;
  return t_level_of(v);
}

int pair_index(int i, int j) {
  assert(i != j);
  if (i > j) std::swap(i, j);
  int offset = 0;
  for (int row = 1; row < i; ++row) offset += kMaxDimension - row;
  return offset + (j - i - 1);
}

std::pair<int, int> pair_of(int index) {
  for (int i = 1; i < kMaxDimension; ++i) {
    int row = kMaxDimension - i;
    if (index < row) return {i, i + 1 + index};
    index -= row;
  }
  assert(false);
  return {0, 0};
}

int Monomial::degree() const {
  int d = 0;
  for (int v = 0; v < kNumVars; ++v) d += exp[v] * var_degree(v);
  return d;
}

int Monomial::max_t_level() const {
  for (int v = kNumVars - 1; v >= kTOffset; --v) {
    if (exp[v] != 0) return t_level_of(v);
  }
  return 0;
}

}  // namespace rotcalc
