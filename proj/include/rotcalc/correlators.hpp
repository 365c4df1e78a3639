#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "rotcalc/derivation.hpp"
#include "rotcalc/expression.hpp"

namespace rotcalc {

inline constexpr int kMinGenus0Arity = 4;
inline constexpr int kMaxGenus0Arity = 7;
inline constexpr int kMinGenus1Arity = 1;
inline constexpr int kMaxGenus1Arity = 4;

using IndexTuple = std::vector<int>;

// Genus-0 functions z_{i1..ik} and genus-1 functions phi_{i1..ik} in
// idempotent frame. Base cases are the four-point z and the one-point phi;
// higher arities come from differentiating along the last index. Entries are
// memoized on the exact tuple, so symmetry stays a checkable property.
class CorrelatorStore {
 public:
  explicit CorrelatorStore(const Calculus& calc) : calc_(calc) {}

  const Calculus& calculus() const { return calc_; }

  Expression correlator(int genus, const IndexTuple& indices) const;
  Expression z(const IndexTuple& indices) const { return correlator(0, indices); }
  Expression phi(const IndexTuple& indices) const { return correlator(1, indices); }

  // Closed forms of the one- and two-point genus-1 functions.
  Expression phi_closed(const IndexTuple& indices) const;

  // T(X) on a correlator through the topological recursion sums.
  Expression t_xbar_on_correlator(int genus, const IndexTuple& indices) const;

  std::size_t cached() const;

 private:
  void check(int genus, const IndexTuple& indices) const;
  Expression compute(int genus, const IndexTuple& indices) const;
  Expression z4(const IndexTuple& indices) const;
  Expression phi1(int i) const;

  const Calculus& calc_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, IndexTuple>, Expression> cache_;
};

}  // namespace rotcalc
