#include "rotcalc/context.hpp"

#include <string>

#include "rotcalc/errors.hpp"

namespace rotcalc {

Context::Context(int n, int max_tau_level) : n_(n), max_tau_level_(max_tau_level) {
  if (n < 1 || n > kMaxDimension) {
    throw ContextError("dimension must lie in 1.." + std::to_string(kMaxDimension));
  }
  if (max_tau_level < 2 || max_tau_level > kMaxTauCap) {
    throw ContextError("max tau level must lie in 2.." + std::to_string(kMaxTauCap));
  }
}

void Context::check_index(int i) const {
  if (i < 1 || i > n_) throw ContextError("index " + std::to_string(i) + " outside 1..N");
}

}  // namespace rotcalc
