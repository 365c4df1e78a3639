#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <utility>

namespace rotcalc {

// Hard limits of the fixed variable layout. A Context may use less.
inline constexpr int kMaxDimension = 4;
inline constexpr int kMaxTauCap = 8;

inline constexpr int kNumPairs = kMaxDimension * (kMaxDimension - 1) / 2;
inline constexpr int kUOffset = 0;
inline constexpr int kSOffset = kUOffset + kMaxDimension;
inline constexpr int kROffset = kSOffset + kMaxDimension;
inline constexpr int kTOffset = kROffset + kMaxDimension * (kMaxDimension + 1) / 2;
inline constexpr int kNumVars = kTOffset + (kMaxTauCap - 1) * kMaxDimension;
inline constexpr int kMonomialSlots = 48;
static_assert(kNumVars <= kMonomialSlots);

// u_i: canonical coordinate; s_i: square root of the metric coefficient g_i;
// r_ij: rotation coefficient (symmetric, stored with i <= j);
// t_{k,i}: pairing of tau_-^k(S) with E_i for k >= 2.
struct GeneratorSymbol {
  enum class Kind : std::uint8_t { U, S, R, T };

  Kind kind = Kind::U;
  int a = 1;  // U,S: index i. R: i. T: level k.
  int b = 0;  // R: j. T: index i.

  static GeneratorSymbol u(int i) { return {Kind::U, i, 0}; }
  static GeneratorSymbol s(int i) { return {Kind::S, i, 0}; }
  static GeneratorSymbol r(int i, int j) {
    return i <= j ? GeneratorSymbol{Kind::R, i, j} : GeneratorSymbol{Kind::R, j, i};
  }
  static GeneratorSymbol t(int level, int i) { return {Kind::T, level, i}; }

  int degree() const;
  std::string name() const;
  friend bool operator==(const GeneratorSymbol&, const GeneratorSymbol&) = default;
};

// Slot of a generator in the fixed layout.
int var_index(const GeneratorSymbol& g);
GeneratorSymbol var_symbol(int index);
int var_degree(int index);

inline int u_var(int i) { return kUOffset + i - 1; }
inline int s_var(int i) { return kSOffset + i - 1; }
int r_var(int i, int j);
inline int t_var(int level, int i) { return kTOffset + (level - 2) * kMaxDimension + i - 1; }
inline bool is_t_var(int v) { return v >= kTOffset && v < kNumVars; }
inline int t_level_of(int v) { return (v - kTOffset) / kMaxDimension + 2; }

// Index of the unordered pair (i, j), i < j, in a Denominator.
int pair_index(int i, int j);
std::pair<int, int> pair_of(int index);

// Exponent vector over the fixed layout; only S slots may be negative.
struct Monomial {
  std::array<std::int8_t, kMonomialSlots> exp{};

  static Monomial var(int v, int power = 1) {
    Monomial m;
    m.exp[v] = static_cast<std::int8_t>(power);
    return m;
  }
  static Monomial of(const GeneratorSymbol& g, int power = 1) { return var(var_index(g), power); }

  bool is_one() const {
    static const Monomial one{};
    return *this == one;
  }
  int degree() const;
  int max_t_level() const;  // 0 when no t-symbol is present

  Monomial& operator*=(const Monomial& o) {
    for (int i = 0; i < kMonomialSlots; ++i) exp[i] = static_cast<std::int8_t>(exp[i] + o.exp[i]);
    return *this;
  }
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.exp.data(), b.exp.data(), kMonomialSlots) == 0;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exp < b.exp; }

  template <typename H>
  friend H AbslHashValue(H h, const Monomial& m) {
    std::uint64_t w[kMonomialSlots / 8];
    std::memcpy(w, m.exp.data(), kMonomialSlots);
    return H::combine_contiguous(std::move(h), w, kMonomialSlots / 8);
  }
};

}  // namespace rotcalc
