#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "rotcalc/context.hpp"
#include "rotcalc/expression.hpp"

namespace rotcalc {

// Images of every generator and of every u-difference under one derivation.
// A missing generator image means the derivation would leave the t-level cap.
struct RuleTable {
  std::string name;
  std::array<std::optional<Expression>, kNumVars> image;
  std::array<Expression, kNumPairs> delta_image;
};

// Linear extension with the Leibniz and quotient rules.
Expression apply_rules(const RuleTable& rules, const Expression& e);

enum class SpecialKind { V, Theta, Omega, Lambda };

enum class VectorKind { S, L, XbarPow };

// S, L_m (m >= -1; L_{-1} = -S) or the primary power X^k.
struct VectorId {
  VectorKind kind = VectorKind::S;
  int m = 0;

  static VectorId S() { return {VectorKind::S, 0}; }
  static VectorId L(int m) { return {VectorKind::L, m}; }
  static VectorId xbar_pow(int k) { return {VectorKind::XbarPow, k}; }
};

// Pairing <tau_-^level(W), E_i> of some vector field W, as a function.
using PairingFn = std::function<Expression(int level, int i)>;

enum class LRoute { Lemma, VectorField };

class Calculus {
 public:
  explicit Calculus(const Context& ctx);

  const Context& ctx() const { return ctx_; }
  int n() const { return ctx_.n(); }

  Expression v(int i, int j) const;
  Expression theta(int i, int j) const;
  // Diagonal extension t_{2,i}/g_i - 2 sum_l r_il^2, so that
  // E_k r_ii = r_ik^2 + sqrt(g_k/g_i) theta_ik holds for k = i as well.
  Expression theta_diagonal(int i) const;
  Expression omega(int i, int j) const;
  Expression lambda(int i, int j) const;
  Expression special(SpecialKind kind, int i, int j) const;

  // <tau_-^k(S), E_i>: g_i, sum_j r_ij s_i s_j, then the bare t-symbol.
  Expression tau_s(int k, int i) const;
  // <tau_-^k(S), nabla_{E_j} E_i>.
  Expression tau_s_cov(int k, int j, int i) const;

  Expression derive(int k, const Expression& e) const;
  Expression act_T_xbar(const Expression& e) const;
  Expression act_L(int m, const Expression& e, LRoute route = LRoute::Lemma) const;
  Expression act_vector_field(const PairingFn& pairing, const Expression& e) const;

  // Closed forms where available, the level recursion otherwise.
  Expression pairing(VectorId w, int level, int i) const;
  // The level recursion alone, started from S-pairings.
  Expression pairing_by_recursion(int m, int level, int i) const;

  // Individual closed forms, exposed for cross-checks.
  Expression l0_closed(int level, int i) const;
  Expression l1_closed(int level, int i) const;
  Expression tau_lm_rot(int m, int i) const;
  Expression tau2_lm_rot(int m, int i) const;

  // Coefficients of E_j in G* E_i, j = 1..N.
  std::vector<Expression> gstar(int i) const;

  const RuleTable& derive_rules(int k) const { return derive_rules_[k - 1]; }
  const RuleTable& t_xbar_rules() const { return t_xbar_rules_; }
  const RuleTable& l_rules(int m, LRoute route) const;
  RuleTable vector_field_rules(const PairingFn& pairing, const std::string& name) const;

 private:
  Expression pairing_unchecked(VectorId w, int level, int i) const;
  RuleTable build_derive_rules(int k) const;
  RuleTable build_t_xbar_rules() const;
  RuleTable build_lemma_rules(int m) const;
  Expression checked(Expression e) const;

  Context ctx_;
  std::array<std::array<Expression, kMaxDimension>, kMaxDimension> theta_;
  std::array<std::array<Expression, kMaxDimension>, kMaxDimension> omega_;
  std::array<std::array<Expression, kMaxDimension>, kMaxDimension> lambda_;
  std::vector<RuleTable> derive_rules_;
  RuleTable t_xbar_rules_;

  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<RuleTable>> l_rules_;
  mutable std::map<std::tuple<int, int, int>, Expression> recursion_cache_;
};

// sum_{p=0}^{m} u_i^p u_j^{m-p}
Expression complete_sum(int i, int j, int m);

}  // namespace rotcalc
