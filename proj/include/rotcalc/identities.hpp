#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rotcalc/correlators.hpp"
#include "rotcalc/derivation.hpp"
#include "rotcalc/genus2.hpp"

namespace rotcalc {

inline constexpr int kMinDimension = 1;
inline constexpr int kDefaultTauCap = 6;

// Calculus, correlator store and genus-2 quantities for one dimension. All
// caches inside are synchronized, so one workspace serves many threads.
class Workspace {
 public:
  explicit Workspace(int n, int max_tau_level = kDefaultTauCap);

  int n() const { return calc_.n(); }
  const Calculus& calc() const { return calc_; }
  const CorrelatorStore& store() const { return *store_; }
  const Genus2& genus2() const { return *genus2_; }

 private:
  Calculus calc_;
  std::unique_ptr<CorrelatorStore> store_;
  std::unique_ptr<Genus2> genus2_;
};

// One instance of an identity. Equalities keep both sides; structural
// properties have no sides and carry the offending expression on failure.
struct Check {
  std::string label;
  Expression lhs;
  Expression rhs;
  bool structural = false;
  bool holds = true;

  Expression witness() const;
  bool passed() const;
};

Check equality(std::string label, Expression lhs, Expression rhs);
Check property(std::string label, bool holds, const Expression& subject);

struct Identity {
  std::string id;
  std::string anchor;
  std::string lhs;
  std::string rhs;
  int min_n = 1;
  int max_n = kMaxDimension;
  int min_tau_cap = 3;
  std::function<std::vector<Check>(const Workspace&)> build;
  // Largest N reachable when heavy runs are requested; 0 when there is none.
  int heavy_max_n = 0;

  bool supports(int n, bool heavy = false) const {
    return n >= min_n && n <= (heavy && heavy_max_n > 0 ? heavy_max_n : max_n);
  }
};

struct IdentityReport {
  std::string identity_id;
  int n = 0;
  bool passed = false;
  Expression witness;
  std::chrono::milliseconds elapsed{0};
  std::string anchor;
  std::size_t checks = 0;
  std::string failed_check;
};

const std::vector<Identity>& identity_registry();
// Throws UnknownIdentity.
const Identity& find_identity(std::string_view id);

// Throws ContextError when the workspace cannot host the identity. `heavy`
// admits the N ranges that are slow (N = 4 for the genus-2 identities).
IdentityReport verify(const Identity& identity, const Workspace& ws, bool heavy = false);
IdentityReport verify(std::string_view identity_id, int n, bool heavy = false);

// Runs the identities on up to `threads` workers; reports come back in the
// order of `ids` whatever the scheduling.
std::vector<IdentityReport> verify_many(const std::vector<std::string>& ids, const Workspace& ws,
                                        int threads, bool heavy = false);

}  // namespace rotcalc
