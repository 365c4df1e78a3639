#pragma once

#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "rotcalc/correlators.hpp"
#include "rotcalc/derivation.hpp"
#include "rotcalc/expression.hpp"

namespace rotcalc {

// Arguments of A_1 that enter the genus-2 generating function.
enum class A1Arg { TauS, Tau2L0, Tau2L1 };

// Smallest t-level cap for B, A_1 and everything assembled from them.
inline constexpr int kGenus2Cap = 5;

enum class F2Route { Assembled, Rotation };
enum class PredictionRoute { Rotation, Gstar };

// Pairings <tau_-^k(W), E_i> for k = 0, 1, 2, indexed [k][i - 1].
using PairingLevels = std::array<std::vector<Expression>, 3>;

class Genus2 {
 public:
  Genus2(const Calculus& calc, const CorrelatorStore& store);

  const Calculus& calculus() const { return calc_; }
  const CorrelatorStore& correlators() const { return store_; }

  // B(E_i, E_i, E_i).
  Expression b_diag(int i) const;

  Expression a1_of(A1Arg w) const;
  Expression a1(const PairingLevels& w) const;
  PairingLevels levels_of(A1Arg w) const;

  Expression f2(F2Route route) const;
  Expression l1f2_target() const;
  Expression prediction(PredictionRoute route) const;

  // c_{ij;k} and d_{i;k}: closed forms and the defining pairing combinations.
  Expression c_coeff(int i, int j, int k) const;
  Expression c_coeff_by_definition(int i, int j, int k) const;
  Expression d_coeff(int i, int k) const;
  Expression d_coeff_by_definition(int i, int k) const;

  // The two contributions to <<L_1>>_2, each from its expanded display
  // and from its definition through T(X) and the tensors A_1, B.
  Expression l_a() const;
  Expression l_a_by_definition() const;
  Expression l_b() const;
  Expression l_b_by_definition() const;
  std::pair<Expression, Expression> appendix_decomposition() const { return {l_a(), l_b()}; }

 private:
  void require_cap(int level) const;
  Expression memo(const std::string& key, const std::function<Expression()>& build) const;
  Expression f2_assembled() const;
  Expression f2_rotation() const;
  Expression prediction_rotation() const;
  Expression prediction_gstar() const;
  // Coefficient brackets of <tau_-^k W, E_i> in A_1, indexed [k][i - 1].
  const PairingLevels& a1_brackets() const;

  Expression z(const IndexTuple& t) const { return store_.z(t); }
  Expression phi(const IndexTuple& t) const { return store_.phi(t); }

  const Calculus& calc_;
  const CorrelatorStore& store_;
  int n_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, Expression> memo_;
  mutable std::once_flag brackets_once_;
  mutable PairingLevels brackets_;
};

}  // namespace rotcalc
