#pragma once

#include "rotcalc/generator.hpp"

namespace rotcalc {

// Dimension and t-level cap shared by every computation in a run.
class Context {
 public:
  explicit Context(int n, int max_tau_level = 6);

  int n() const { return n_; }
  int max_tau_level() const { return max_tau_level_; }

  void check_index(int i) const;

 private:
  int n_;
  int max_tau_level_;
};

}  // namespace rotcalc
