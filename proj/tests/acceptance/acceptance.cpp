// Acceptance suite: one PASS/FAIL line per criterion, exact equality only.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "rotcalc/errors.hpp"
#include "rotcalc/evaluate.hpp"
#include "rotcalc/identities.hpp"

using namespace rotcalc;

namespace {

Expression U(int i) { return Expression::u(i); }
Expression R(int i, int j) { return Expression::r(i, j); }
Expression T(int k, int i) { return Expression::t(k, i); }
Expression S(int i, int p = 1) { return Expression::s(i, p); }
Expression Q(std::int64_t a, std::int64_t b = 1) { return Expression(Rational(a, b)); }

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void fail(const std::string& note) {
    passed = false;
    notes.push_back(note);
  }
  void expect(bool ok, const std::string& note) {
    if (!ok) fail(note);
  }
};

std::map<int, std::unique_ptr<Workspace>> workspaces;

const Workspace& workspace(int n) {
  auto& slot = workspaces[n];
  if (!slot) slot = std::make_unique<Workspace>(n);
  return *slot;
}

void identities(Outcome& out, const std::vector<std::string>& ids, const std::vector<int>& ns) {
  for (int n : ns) {
    for (const auto& id : ids) {
      const IdentityReport r = verify(find_identity(id), workspace(n));
      out.expect(r.passed, id + " N=" + std::to_string(n) + " fails at " + r.failed_check + " (witness " +
                               std::to_string(r.witness.term_count()) + " terms)");
    }
  }
}

// The level-2 pairing of L_m exactly as printed alongside the level recursion.
Expression printed_tau2_lm(const Calculus& c, int m, int i) {
  const int n = c.n();
  auto complete = [&](int a, int b) {
    Expression sum;
    for (int p = 0; p <= m; ++p) sum += U(a).pow(p) * U(b).pow(m - p);
    return sum;
  };
  Expression out = -(U(i).pow(m + 1) * T(2, i));
  if (m >= 1) out -= Q(m * (11 * m + 19), 8) * U(i).pow(m - 1) * S(i, 2);
  for (int j = 1; j <= n; ++j) {
    out -= R(i, j) * S(i) * S(j) * (Q(2 * m) * U(i).pow(m) + Q(3 * m + 7, 2) * U(j).pow(m) - complete(i, j));
    for (int k = 1; k <= n; ++k) out -= c.v(i, j) * R(j, k) * S(i) * S(k) * complete(i, k);
  }
  return out;
}

Outcome criterion_pairings() {
  Outcome out;
  identities(out, {"pairing-consistency"}, {2, 3});
  for (int n : {2, 3}) {
    const Calculus& c = workspace(n).calc();
    for (int m = 0; m <= 2; ++m) {
      for (int i = 1; i <= n; ++i) {
        out.expect(equals(c.pairing_by_recursion(m, 1, i), c.tau_lm_rot(m, i)),
                   "level-1 closed form, m=" + std::to_string(m) + " N=" + std::to_string(n));
        const Expression diff = c.pairing_by_recursion(m, 2, i) - printed_tau2_lm(c, m, i);
        out.expect(diff.is_zero(), "printed level-2 closed form differs from the recursion at m=" +
                                       std::to_string(m) + " N=" + std::to_string(n) + " i=" + std::to_string(i) +
                                       ": " + to_text(diff));
      }
    }
  }
  return out;
}

Outcome criterion_virasoro_main() {
  Outcome out;
  identities(out, {"virasoro-main"}, {1, 2, 3});
  const Genus2& g = workspace(1).genus2();
  const Expression hand = (Q(6) * T(2, 1) * S(1, -4) - Q(49, 4) * R(1, 1).pow(2) * S(1, -2)) * Q(1, 1152);
  out.expect(g.l1f2_target() == hand, "N=1 closed form differs from the hand value");
  out.expect(g.prediction(PredictionRoute::Rotation) == hand, "N=1 prediction differs from the hand value");
  return out;
}

// Every equality of every registered identity at N=2 vanishes at 100 random
// points; a sign flip in one term of each identity is caught.
Outcome criterion_random() {
  Outcome out;
  const Workspace& ws = workspace(2);
  std::mt19937_64 rng(20240611);
  constexpr int kPoints = 100;
  for (const Identity& identity : identity_registry()) {
    if (!identity.supports(2)) continue;
    const std::vector<Check> checks = identity.build(ws);
    std::vector<const Check*> equalities;
    for (const Check& c : checks) {
      if (!c.structural) equalities.push_back(&c);
    }
    if (equalities.empty()) continue;
    for (int p = 0; p < kPoints; ++p) {
      const Point point = random_point(ws.calc().ctx(), rng);
      for (const Check* c : equalities) {
        if (evaluate(c->lhs, point) != evaluate(c->rhs, point)) {
          out.fail(identity.id + ": " + c->label + " is nonzero at a random point");
          break;
        }
      }
    }

    const Check* target = nullptr;
    for (const Check* c : equalities) {
      if (!c->lhs.is_zero()) {
        target = c;
        break;
      }
    }
    if (target == nullptr) continue;
    std::uniform_int_distribution<std::size_t> pick(0, target->lhs.term_count() - 1);
    const Check mutated = equality(target->label, target->lhs.with_negated_term(pick(rng)), target->rhs);
    out.expect(!mutated.passed() && !mutated.witness().is_zero(),
               identity.id + ": sign-flipped " + target->label + " still compares equal");
    bool seen = false;
    for (int p = 0; p < 5 && !seen; ++p) {
      const Point point = random_point(ws.calc().ctx(), rng);
      seen = evaluate(mutated.witness(), point) != Rational(0);
    }
    out.expect(seen, identity.id + ": sign flip invisible at random points");
  }
  return out;
}

struct Criterion {
  int number;
  std::string title;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  auto ids = [](std::vector<std::string> names, std::vector<int> ns) {
    return [names, ns] {
      Outcome out;
      identities(out, names, ns);
      return out;
    };
  };
  const std::vector<Criterion> criteria = {
      {1, "theta-sym / omega-sym / lambda-sym, N=2,3,4", 1, ids({"theta-sym", "omega-sym", "lambda-sym"}, {2, 3, 4})},
      {2, "idem-commute, N=2,3", 5, ids({"idem-commute"}, {2, 3})},
      {3, "stated-derivatives, N=2,3", 10, ids({"stated-derivatives"}, {2, 3})},
      {4, "corr-symmetry + phi2-closed, N=1,2,3", 30, ids({"corr-symmetry", "phi2-closed"}, {1, 2, 3})},
      {5, "pairing-consistency incl. printed level-2 form, N=2,3", 30, criterion_pairings},
      {6, "t-xbar-corr, N=2", 60, ids({"t-xbar-corr"}, {2})},
      {7, "f2-equivalence, N=1,2,3", 600, ids({"f2-equivalence"}, {1, 2, 3})},
      {8, "f2-structure, N=2,3", 60, ids({"f2-structure"}, {2, 3})},
      {9, "l1-consistency, N=1,2,3", 600, ids({"l1-consistency"}, {1, 2, 3})},
      {10, "virasoro-main, N=1,2,3", 600, criterion_virasoro_main},
      {11, "prediction-paths, N=1,2,3", 600, ids({"prediction-paths"}, {1, 2, 3})},
      {12, "appendix-route with t3/t4 cancellation, N=1,2,3", 600, ids({"appendix-route"}, {1, 2, 3})},
      {13, "homogeneity, N=1,2,3", 10, ids({"homogeneity"}, {1, 2, 3})},
      {14, "randomized cross-check and sign-flip mutation, N=2", 60, criterion_random},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.passed) ++failed;
    std::printf("%s  %2d  %-58s %7.2fs%s\n", out.passed ? "PASS" : "FAIL", c.number, c.title.c_str(), secs,
                secs > c.budget_s ? "  (over budget)" : "");
    for (const auto& note : out.notes) std::printf("          %s\n", note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
