#include "rotcalc/identities.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "rotcalc/errors.hpp"

namespace rotcalc {
namespace {

using Checks = std::vector<Check>;

Expression U(int i) { return Expression::u(i); }
Expression R(int i, int j) { return Expression::r(i, j); }
Expression T(int k, int i) { return Expression::t(k, i); }
Expression S(int i, int p = 1) { return Expression::s(i, p); }
Expression Q(std::int64_t a, std::int64_t b = 1) { return Expression(Rational(a, b)); }

std::string idx(std::initializer_list<int> list) {
  std::string out;
  for (int i : list) out += std::to_string(i);
  return out;
}

std::string idx(const IndexTuple& t) {
  std::string out;
  for (int i : t) out += std::to_string(i);
  return out;
}

std::vector<Expression> generators(int n, int max_level) {
  std::vector<Expression> out;
  for (int i = 1; i <= n; ++i) {
    out.push_back(U(i));
    out.push_back(S(i));
    out.push_back(S(i, -1));
    for (int j = i; j <= n; ++j) out.push_back(R(i, j));
    for (int k = 2; k <= max_level; ++k) out.push_back(T(k, i));
  }
  return out;
}

// Nondecreasing tuples of length len over 1..n.
std::vector<IndexTuple> multisets(int n, int len) {
  std::vector<IndexTuple> out;
  IndexTuple t(len, 1);
  while (true) {
    out.push_back(t);
    int a = len - 1;
    while (a >= 0 && t[a] == n) --a;
    if (a < 0) return out;
    const int v = t[a] + 1;
    for (int b = a; b < len; ++b) t[b] = v;
  }
}

void for_each_tuple(int n, int len, const std::function<void(const IndexTuple&)>& f) {
  IndexTuple t(len, 1);
  while (true) {
    f(t);
    int a = len - 1;
    while (a >= 0 && t[a] == n) t[a--] = 1;
    if (a < 0) return;
    ++t[a];
  }
}

int max_genus0_arity(int n) { return n <= 3 ? kMaxGenus0Arity : kMaxGenus0Arity - 1; }

bool has_degree(const Expression& e, int d) { return e.is_zero() || degree(e).is(d); }

bool t_levels_within(const Expression& e, const std::vector<int>& allowed) {
  for (int k : t_levels(e)) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) return false;
  }
  return true;
}

Checks theta_sym(const Workspace& ws) {
  const Calculus& c = ws.calc();
  Checks out;
  for (int i = 1; i <= ws.n(); ++i) {
    for (int j = 1; j <= ws.n(); ++j) {
      if (i == j) continue;
      Expression rr;
      for (int k = 1; k <= ws.n(); ++k) rr += R(i, k) * R(j, k);
      out.push_back(equality("theta" + idx({i, j}), c.theta(i, j) + c.theta(j, i), -rr));
    }
  }
  return out;
}

Checks omega_sym(const Workspace& ws) {
  const Calculus& c = ws.calc();
  Checks out;
  for (int i = 1; i <= ws.n(); ++i) {
    for (int j = i + 1; j <= ws.n(); ++j) {
      out.push_back(equality("omega" + idx({i, j}), c.omega(i, j), c.omega(j, i)));
    }
  }
  return out;
}

Checks lambda_sym(const Workspace& ws) {
  const Calculus& c = ws.calc();
  auto theta = [&](int i, int k) { return i == k ? c.theta_diagonal(i) : c.theta(i, k); };
  Checks out;
  for (int i = 1; i <= ws.n(); ++i) {
    for (int j = i + 1; j <= ws.n(); ++j) {
      Expression tt;
      for (int k = 1; k <= ws.n(); ++k) tt += theta(i, k) * theta(j, k);
      out.push_back(equality("lambda" + idx({i, j}), c.lambda(i, j) + c.lambda(j, i), tt));
    }
  }
  return out;
}

Checks idem_commute(const Workspace& ws) {
  const Calculus& c = ws.calc();
  Checks out;
  for (const auto& f : generators(ws.n(), 2)) {
    for (int i = 1; i <= ws.n(); ++i) {
      for (int j = i + 1; j <= ws.n(); ++j) {
        out.push_back(equality("E" + idx({i, j}) + " on " + to_text(f), c.derive(i, c.derive(j, f)),
                               c.derive(j, c.derive(i, f))));
      }
    }
  }
  return out;
}

Checks stated_derivatives(const Workspace& ws) {
  const Calculus& c = ws.calc();
  const int n = ws.n();
  Checks out;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      out.push_back(equality("E_j theta" + idx({i, j}), c.derive(j, c.theta(i, j)),
                             (R(j, j) - S(j) * S(i, -1) * R(i, j)) * c.theta(i, j) - c.omega(i, j)));
      Expression bracket = S(i) * S(j, -1) * c.theta(i, j);
      for (int k = 1; k <= n; ++k) {
        bracket += R(i, k) * R(i, k);
        if (k != i) bracket += S(k) * S(i, -1) * c.theta(k, i);
      }
      out.push_back(equality("E_i omega" + idx({i, j}), c.derive(i, c.omega(i, j)),
                             c.theta(j, i) * bracket + c.lambda(i, j)));
      const Expression scaled = (U(i) - U(j)) * c.lambda(j, i);
      out.push_back(property("pole order of (u_i - u_j) lambda" + idx({j, i}),
                             scaled.delta_degree(i, j) <= 2, scaled));
    }
  }
  return out;
}

Checks corr_symmetry(const Workspace& ws) {
  const CorrelatorStore& st = ws.store();
  const int n = ws.n();
  Checks out;
  for (int genus = 0; genus <= 1; ++genus) {
    const int lo = genus == 0 ? kMinGenus0Arity : kMinGenus1Arity;
    const int hi = genus == 0 ? max_genus0_arity(n) : kMaxGenus1Arity;
    for (int len = lo; len <= hi; ++len) {
      for (const IndexTuple& t : multisets(n, len)) {
        const Expression base = st.correlator(genus, t);
        // Every distinct rearrangement is compared; the recorded instance is
        // the first mismatch, or the reversed tuple when all agree.
        IndexTuple shown(t.rbegin(), t.rend());
        IndexTuple p = t;
        while (std::next_permutation(p.begin(), p.end())) {
          if (!(st.correlator(genus, p) == base)) {
            shown = p;
            break;
          }
        }
        const std::string name = (genus == 0 ? "z" : "phi") + idx(shown);
        out.push_back(equality(name + " vs " + idx(t), st.correlator(genus, shown), base));
      }
    }
  }
  return out;
}

Checks phi2_closed(const Workspace& ws) {
  const CorrelatorStore& st = ws.store();
  Checks out;
  for (int i = 1; i <= ws.n(); ++i) {
    for (int j = i; j <= ws.n(); ++j) {
      out.push_back(equality("phi" + idx({i, j}), st.phi({i, j}), st.phi_closed({i, j})));
    }
  }
  return out;
}

Checks pairing_consistency(const Workspace& ws) {
  const Calculus& c = ws.calc();
  const CorrelatorStore& st = ws.store();
  const int n = ws.n();
  Checks out;
  for (int i = 1; i <= n; ++i) {
    for (int m = 0; m <= 2; ++m) {
      out.push_back(equality("level-1 L" + std::to_string(m) + " at " + std::to_string(i),
                             c.pairing_by_recursion(m, 1, i), c.tau_lm_rot(m, i)));
      out.push_back(equality("level-2 L" + std::to_string(m) + " at " + std::to_string(i),
                             c.pairing_by_recursion(m, 2, i), c.tau2_lm_rot(m, i)));
    }
    for (int level = 1; level <= std::min(5, c.ctx().max_tau_level() - 1); ++level) {
      out.push_back(equality("L0 level " + std::to_string(level), c.pairing_by_recursion(0, level, i),
                             c.l0_closed(level, i)));
      out.push_back(equality("L1 level " + std::to_string(level), c.pairing_by_recursion(1, level, i),
                             c.l1_closed(level, i)));
    }
    for (int k = 0; k <= 3; ++k) {
      Expression rhs = -(Q(3 * (k + 1), 2) * U(i).pow(k) * S(i, 2));
      for (int j = 1; j <= n; ++j) rhs += U(j).pow(k + 1) * st.z({j, j, j, i});
      out.push_back(equality("tau L" + std::to_string(k) + " vs z4", c.pairing(VectorId::L(k), 1, i), rhs));
    }
  }
  for (const auto& f : generators(n, 4)) {
    out.push_back(equality("L1 lemma vs vector field on " + to_text(f), c.act_L(1, f, LRoute::Lemma),
                           c.act_L(1, f, LRoute::VectorField)));
  }
  for (int i = 1; i <= n; ++i) {
    out.push_back(equality("L1 u" + idx({i}), c.act_L(1, U(i)), -(U(i) * U(i))));
    out.push_back(equality("L1 g" + idx({i}), c.act_L(1, S(i, 2)), Q(6) * U(i) * S(i, 2)));
    for (int j = i; j <= n; ++j) {
      Expression expected = (U(i) + U(j)) * R(i, j);
      if (i == j) expected += Q(15, 4);
      for (int k = 1; k <= n; ++k) expected -= c.v(i, k) * c.v(j, k);
      out.push_back(equality("L1 r" + idx({i, j}), c.act_L(1, R(i, j)), expected));
    }
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      Expression vv;
      Expression theta_rhs = (Q(3) * U(i) + U(j)) * c.theta(i, j) - Q(11, 4) * R(i, j);
      Expression omega_rhs = Q(3) * (U(i) + U(j)) * c.omega(i, j);
      for (int k = 1; k <= n; ++k) {
        vv += c.v(i, k) * c.v(j, k);
        omega_rhs -= Q(11, 4) * R(i, k) * R(j, k);
        for (int l = 1; l <= n; ++l) {
          theta_rhs += R(i, k) * c.v(j, l) * c.v(k, l);
          for (int p = 1; p <= n; ++p) omega_rhs += R(i, l) * R(j, k) * c.v(k, p) * c.v(l, p);
        }
      }
      out.push_back(equality("L1 v" + idx({i, j}), c.act_L(1, c.v(i, j)), (U(i) - U(j)) * vv));
      out.push_back(equality("L1 theta" + idx({i, j}), c.act_L(1, c.theta(i, j)), theta_rhs));
      out.push_back(equality("L1 omega" + idx({i, j}), c.act_L(1, c.omega(i, j)), omega_rhs));
    }
  }
  return out;
}

Checks virasoro_bracket(const Workspace& ws) {
  const Calculus& c = ws.calc();
  Checks out;
  for (const auto& f : generators(ws.n(), 2)) {
    for (int a = -1; a <= 3; ++a) {
      for (int b = a + 1; b <= 3 && a + b <= 3; ++b) {
        const Expression bracket = c.act_L(a, c.act_L(b, f)) - c.act_L(b, c.act_L(a, f));
        out.push_back(equality("[L" + std::to_string(a) + ",L" + std::to_string(b) + "] on " + to_text(f),
                               bracket, Expression(a - b) * c.act_L(a + b, f)));
      }
    }
  }
  return out;
}

Checks t_xbar_corr(const Workspace& ws) {
  const Calculus& c = ws.calc();
  const CorrelatorStore& st = ws.store();
  const int n = ws.n();
  Checks out;
  for (int genus = 0; genus <= 1; ++genus) {
    const int lo = genus == 0 ? kMinGenus0Arity : kMinGenus1Arity;
    // T(X) raises the arity by two on the right-hand side's sums.
    const int hi = genus == 0 ? max_genus0_arity(n) : kMaxGenus1Arity;
    for (int len = lo; len <= hi; ++len) {
      for_each_tuple(n, len, [&](const IndexTuple& t) {
        out.push_back(equality((genus == 0 ? "z" : "phi") + idx(t), st.t_xbar_on_correlator(genus, t),
                               c.act_T_xbar(st.correlator(genus, t))));
      });
    }
  }
  return out;
}

Checks f2_equivalence(const Workspace& ws) {
  const Genus2& g = ws.genus2();
  return {equality("F2", g.f2(F2Route::Assembled), g.f2(F2Route::Rotation))};
}

Checks f2_structure(const Workspace& ws) {
  Checks out;
  for (F2Route route : {F2Route::Rotation, F2Route::Assembled}) {
    const Expression f = ws.genus2().f2(route);
    const std::string name = route == F2Route::Rotation ? "rotation F2" : "assembled F2";
    out.push_back(property(name + " t-levels within {2,3}", t_levels_within(f, {2, 3}), f));
    out.push_back(property(name + " pole order <= 2", max_pole_order(f) <= 2, f));
  }
  return out;
}

Checks l1_consistency(const Workspace& ws) {
  const Genus2& g = ws.genus2();
  return {equality("L1 F2", ws.calc().act_L(1, g.f2(F2Route::Rotation)), g.l1f2_target())};
}

Checks virasoro_main(const Workspace& ws) {
  const Genus2& g = ws.genus2();
  return {equality("L1 F2 vs prediction", g.l1f2_target(), g.prediction(PredictionRoute::Rotation))};
}

Checks prediction_paths(const Workspace& ws) {
  const Genus2& g = ws.genus2();
  return {equality("prediction", g.prediction(PredictionRoute::Gstar), g.prediction(PredictionRoute::Rotation))};
}

Checks appendix_route(const Workspace& ws) {
  const Genus2& g = ws.genus2();
  const auto [la, lb] = g.appendix_decomposition();
  const Expression sum = la + lb;
  Checks out;
  out.push_back(equality("L_A + L_B vs L1 F2", sum, ws.calc().act_L(1, g.f2(F2Route::Rotation))));
  out.push_back(equality("L_A + L_B vs closed form", sum, g.l1f2_target()));
  for (int i = 1; i <= ws.n(); ++i) {
    for (int k = 3; k <= 4; ++k) {
      out.push_back(property("t" + std::to_string(k) + "_" + std::to_string(i) + " cancels",
                             !sum.mentions(GeneratorSymbol::t(k, i)), sum));
    }
  }
  return out;
}

Checks la_display(const Workspace& ws) {
  return {equality("L_A", ws.genus2().l_a(), ws.genus2().l_a_by_definition())};
}

Checks lb_display(const Workspace& ws) {
  return {equality("L_B", ws.genus2().l_b(), ws.genus2().l_b_by_definition())};
}

Checks cd_closed_forms(const Workspace& ws) {
  const Genus2& g = ws.genus2();
  Checks out;
  for (int i = 1; i <= ws.n(); ++i) {
    for (int k = 2; k <= 4; ++k) {
      for (int j = 1; j <= ws.n(); ++j) {
        out.push_back(equality("c" + idx({i, j}) + ";" + std::to_string(k), g.c_coeff(i, j, k),
                               g.c_coeff_by_definition(i, j, k)));
      }
    }
    for (int k = 1; k <= 4; ++k) {
      out.push_back(equality("d" + idx({i}) + ";" + std::to_string(k), g.d_coeff(i, k), g.d_coeff_by_definition(i, k)));
    }
  }
  return out;
}

Checks b_top_level(const Workspace& ws) {
  Checks out;
  for (int i = 1; i <= ws.n(); ++i) {
    const Expression b = ws.genus2().b_diag(i);
    out.push_back(equality("t4 coefficient of B" + idx({i}),
                           coefficient(b, {{GeneratorSymbol::t(4, i), 1}, {GeneratorSymbol::s(i), -4}}),
                           Q(-1, 576)));
  }
  return out;
}

Checks homogeneity(const Workspace& ws) {
  const Genus2& g = ws.genus2();
  const CorrelatorStore& st = ws.store();
  const int n = ws.n();
  Checks out;
  auto graded = [&](const std::string& name, const Expression& e, int d) {
    out.push_back(property(name + " has degree " + std::to_string(d), has_degree(e, d), e));
  };
  for (int len = kMinGenus0Arity; len <= max_genus0_arity(n); ++len) {
    for (const IndexTuple& t : multisets(n, len)) graded("z" + idx(t), st.z(t), len - 3);
  }
  for (int len = kMinGenus1Arity; len <= kMaxGenus1Arity; ++len) {
    for (const IndexTuple& t : multisets(n, len)) graded("phi" + idx(t), st.phi(t), len);
  }
  graded("rotation F2", g.f2(F2Route::Rotation), 3);
  graded("assembled F2", g.f2(F2Route::Assembled), 3);
  for (int i = 1; i <= n; ++i) graded("B" + idx({i}), g.b_diag(i), 4);
  graded("L1 F2 closed form", g.l1f2_target(), 2);
  graded("prediction", g.prediction(PredictionRoute::Rotation), 2);
  graded("L_A", g.l_a(), 2);
  graded("L_B", g.l_b(), 2);
  return out;
}

std::vector<Identity> build_registry() {
  auto entry = [](std::string id, std::string anchor, std::string lhs, std::string rhs, int min_n,
                  int max_n, int cap, std::function<Checks(const Workspace&)> fn) {
    return Identity{std::move(id), std::move(anchor), std::move(lhs), std::move(rhs), min_n, max_n, cap,
                    std::move(fn)};
  };
  const int top = kMaxDimension;
  auto heavy = [top](Identity e) {
    e.heavy_max_n = top;
    return e;
  };
  return {
      entry("theta-sym", "theta_ij + theta_ji = -sum_k r_ik r_jk", "theta_ij + theta_ji", "-sum_k r_ik r_jk", 2,
            top, 3, theta_sym),
      entry("omega-sym", "Omega_ij = Omega_ji", "Omega_ij", "Omega_ji", 2, top, 3, omega_sym),
      entry("lambda-sym", "Lambda_ij + Lambda_ji = sum_k theta_ik theta_jk", "Lambda_ij + Lambda_ji",
            "sum_k theta_ik theta_jk", 2, top, 3, lambda_sym),
      entry("idem-commute", "[E_i, E_j] = 0", "E_i E_j f", "E_j E_i f", 2, top, 4, idem_commute),
      entry("stated-derivatives", "E_j theta_ij and E_i Omega_ij laws; Lambda pole order",
            "derive(theta, Omega)", "displayed laws", 2, top, 3, stated_derivatives),
      heavy(entry("corr-symmetry", "correlators are symmetric in their indices", "z, phi permuted", "z, phi", 1,
                  3, 5, corr_symmetry)),
      entry("phi2-closed", "two-point genus-1 closed forms", "phi_ij by recursion", "phi_ij closed", 1, top, 3,
            phi2_closed),
      entry("pairing-consistency", "descendant pairings of L_m and the action of L_1",
            "level recursion, lemma route", "closed forms, vector-field route", 1, top, 5, pairing_consistency),
      entry("virasoro-bracket", "[L_a, L_b] = (a - b) L_{a+b}", "[L_a, L_b] f", "(a - b) L_{a+b} f", 1, 2, 4,
            virasoro_bracket),
      entry("t-xbar-corr", "T(X) on z and phi by splitting sums", "splitting sums", "derivation rules", 1, 2, 5,
            t_xbar_corr),
      heavy(entry("f2-equivalence", "F2 assembled from A_1 and B = F2 in rotation coefficients",
                  "assembled F2", "rotation F2", 1, 3, 5, f2_equivalence)),
      heavy(entry("f2-structure", "F2 holds t_2, t_3 only and poles of order at most 2", "F2", "structure", 1,
                  3, 5, f2_structure)),
      heavy(entry("l1-consistency", "L_1 F2 = closed form / 1152", "L_1 F2", "closed form / 1152", 1, 3, 5,
                  l1_consistency)),
      heavy(entry("virasoro-main", "genus-2 L_1 constraint", "closed L_1 F2", "prediction", 1, 3, 5,
                  virasoro_main)),
      heavy(entry("prediction-paths", "prediction through G* and through v", "G* route", "rotation route", 1, 3, 5,
                  prediction_paths)),
      heavy(entry("appendix-route", "<<L_1>>_2 = L_A + L_B", "L_A + L_B", "L_1 F2", 1, 3, 5,
                  appendix_route)),
      heavy(entry("la-display", "L_A expanded display", "L_A display", "A_1 terms with T(X)", 1, 3, 5,
                  la_display)),
      heavy(entry("lb-display", "2 L_B expanded display", "L_B display", "B terms with T(X)", 1, 3, 5,
                  lb_display)),
      entry("cd-closed-forms", "c_{ij;k} and d_{i;k} closed forms", "closed forms", "pairing definitions", 1, top,
            6, cd_closed_forms),
      heavy(entry("b-top-level", "B(E_i,E_i,E_i) carries -1/576 t_{4,i}/g_i^2", "coefficient", "-1/576", 1, 3,
                  5, b_top_level)),
      heavy(entry("homogeneity", "grading of named quantities", "degree", "expected degree", 1, 3, 5,
                  homogeneity)),
  };
}

}  // namespace

Workspace::Workspace(int n, int max_tau_level)
    : calc_(Context(n, max_tau_level)),
      store_(std::make_unique<CorrelatorStore>(calc_)),
      genus2_(std::make_unique<Genus2>(calc_, *store_)) {}

Expression Check::witness() const {
  if (!structural) return lhs - rhs;
  return holds ? Expression() : (lhs.is_zero() ? Expression(1) : lhs);
}

bool Check::passed() const { return structural ? holds : lhs == rhs; }

Check equality(std::string label, Expression lhs, Expression rhs) {
  return Check{std::move(label), std::move(lhs), std::move(rhs), false, true};
}

Check property(std::string label, bool holds, const Expression& subject) {
  return Check{std::move(label), holds ? Expression() : subject, Expression(), true, holds};
}

const std::vector<Identity>& identity_registry() {
  static const std::vector<Identity> registry = build_registry();
  return registry;
}

const Identity& find_identity(std::string_view id) {
  for (const Identity& entry : identity_registry()) {
    if (entry.id == id) return entry;
  }
  throw UnknownIdentity("unknown identity: " + std::string(id));
}

IdentityReport verify(const Identity& identity, const Workspace& ws, bool heavy) {
  if (!identity.supports(ws.n(), heavy)) {
    std::string message = identity.id + " is supported for N in " + std::to_string(identity.min_n) + ".." +
                          std::to_string(identity.max_n);
    if (identity.heavy_max_n > identity.max_n) {
      message += ", up to " + std::to_string(identity.heavy_max_n) + " as a heavy run";
    }
    throw ContextError(message);
  }
  if (ws.calc().ctx().max_tau_level() < identity.min_tau_cap) {
    throw ContextError(identity.id + " needs max tau level >= " + std::to_string(identity.min_tau_cap));
  }
  const auto start = std::chrono::steady_clock::now();
  IdentityReport report;
  report.identity_id = identity.id;
  report.n = ws.n();
  report.anchor = identity.anchor;
  const Checks checks = identity.build(ws);
  report.checks = checks.size();
  report.passed = true;
  for (const Check& check : checks) {
    if (check.passed()) continue;
    report.passed = false;
    report.witness = check.witness();
    report.failed_check = check.label;
    break;
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

IdentityReport verify(std::string_view identity_id, int n, bool heavy) {
  const Identity& identity = find_identity(identity_id);
  Workspace ws(n, std::max(kDefaultTauCap, identity.min_tau_cap));
  return verify(identity, ws, heavy);
}

std::vector<IdentityReport> verify_many(const std::vector<std::string>& ids, const Workspace& ws, int threads,
                                        bool heavy) {
  std::vector<const Identity*> selected;
  for (const auto& id : ids) selected.push_back(&find_identity(id));
  std::vector<IdentityReport> reports(selected.size());
  std::vector<std::exception_ptr> errors(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < selected.size(); k = next++) {
      try {
        reports[k] = verify(*selected[k], ws, heavy);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int count = std::max(1, std::min<int>(threads, static_cast<int>(selected.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

}  // namespace rotcalc
