#pragma once

#include <cstdint>

#include "rotcalc/generator.hpp"

namespace rotcalc {

// Fluent product of generator powers: M().u(p).ig(q) is u_p / g_q.
class M {
 public:
  M& u(int i, int e = 1) { return bump(u_var(i), e); }
  M& s(int i, int e = 1) { return bump(s_var(i), e); }
  M& ig(int i) { return bump(s_var(i), -2); }
  M& r(int i, int j, int e = 1) { return bump(r_var(i, j), e); }
  M& t(int level, int i, int e = 1) { return bump(t_var(level, i), e); }

  operator Monomial() const { return m_; }  // NOLINT(google-explicit-constructor)

 private:
  M& bump(int v, int e) {
    m_.exp[v] = static_cast<std::int8_t>(m_.exp[v] + e);
    return *this;
  }
  Monomial m_;
};

}  // namespace rotcalc
