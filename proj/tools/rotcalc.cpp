#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "rotcalc/errors.hpp"
#include "rotcalc/identities.hpp"
#include "rotcalc/json_io.hpp"

using namespace rotcalc;

namespace {

struct RunConfig {
  int n = 2;
  std::vector<std::string> identities;
  bool all = false;
  int max_tau = kDefaultTauCap;
  std::string format_name = "text";
  int threads = 1;
  bool heavy = false;
  std::optional<std::string> dump_target;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

IndexTuple digits(const std::string& s) {
  IndexTuple out;
  for (char ch : s) out.push_back(ch - '0');
  return out;
}

Expression dump_quantity(const Workspace& ws, const std::string& target) {
  const Calculus& c = ws.calc();
  const Genus2& g = ws.genus2();
  if (target == "f2-rotation") return g.f2(F2Route::Rotation);
  if (target == "f2-assembled") return g.f2(F2Route::Assembled);
  if (target == "l1f2") return g.l1f2_target();
  if (target == "l1-on-f2") return c.act_L(1, g.f2(F2Route::Rotation));
  if (target == "prediction-rotation") return g.prediction(PredictionRoute::Rotation);
  if (target == "prediction-gstar") return g.prediction(PredictionRoute::Gstar);
  if (target == "la") return g.l_a();
  if (target == "lb") return g.l_b();
  if (target == "a1-taus") return g.a1_of(A1Arg::TauS);
  if (target == "a1-tau2l0") return g.a1_of(A1Arg::Tau2L0);
  if (target == "a1-tau2l1") return g.a1_of(A1Arg::Tau2L1);

  std::smatch m;
  static const std::regex indexed("(z|phi|b|v|theta|omega|lambda)([1-9]+)");
  if (std::regex_match(target, m, indexed)) {
    const std::string kind = m[1];
    const IndexTuple idx = digits(m[2]);
    if (kind == "z") return ws.store().z(idx);
    if (kind == "phi") return ws.store().phi(idx);
    if (kind == "b" && idx.size() == 1) return g.b_diag(idx[0]);
    if (idx.size() == 2) {
      if (kind == "v") return c.v(idx[0], idx[1]);
      if (kind == "theta") return c.theta(idx[0], idx[1]);
      if (kind == "omega") return c.omega(idx[0], idx[1]);
      if (kind == "lambda") return c.lambda(idx[0], idx[1]);
    }
  }
  static const std::regex pairing("tau(\\d)-(s|l0|l1|l2)-([1-9])");
  if (std::regex_match(target, m, pairing)) {
    const int level = std::stoi(m[1]);
    const std::string w = m[2];
    const VectorId id = w == "s" ? VectorId::S() : VectorId::L(w[1] - '0');
    return c.pairing(id, level, std::stoi(m[3]));
  }
  throw UsageError("unknown dump target: " + target);
}

int run_dump(const RunConfig& cfg) {
  Workspace ws(cfg.n, cfg.max_tau);
  const Expression e = dump_quantity(ws, *cfg.dump_target);
  if (cfg.format_name == "json") {
    nlohmann::json out = {{"target", *cfg.dump_target}, {"n", cfg.n}, {"expression", to_json(e)}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << to_text(e) << "\n";
  }
  return 0;
}

std::vector<std::string> selected_identities(const RunConfig& cfg) {
  std::vector<std::string> ids;
  if (cfg.all) {
    for (const Identity& entry : identity_registry()) {
      if (entry.supports(cfg.n, cfg.heavy) && entry.min_tau_cap <= cfg.max_tau) ids.push_back(entry.id);
    }
    return ids;
  }
  for (const auto& id : cfg.identities) {
    const Identity& entry = find_identity(id);
    if (!entry.supports(cfg.n, cfg.heavy)) {
      std::string message = id + " is supported for N in " + std::to_string(entry.min_n) + ".." +
                            std::to_string(entry.max_n);
      if (entry.supports(cfg.n, true)) message += "; pass --heavy for N=" + std::to_string(cfg.n);
      throw UsageError(message);
    }
    if (entry.min_tau_cap > cfg.max_tau) {
      throw UsageError(id + " needs --max-tau >= " + std::to_string(entry.min_tau_cap));
    }
    ids.push_back(id);
  }
  return ids;
}

void print_text(const std::vector<IdentityReport>& reports) {
  std::size_t width = 8;
  for (const auto& r : reports) width = std::max(width, r.identity_id.size());
  for (const auto& r : reports) {
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << r.identity_id << "N=" << r.n << "  "
              << (r.passed ? "PASS" : "FAIL") << "  checks=" << std::setw(6) << r.checks
              << " witness_terms=" << std::setw(6) << r.witness.term_count() << " elapsed_ms=" << r.elapsed.count();
    if (!r.passed) std::cout << "  at " << r.failed_check << "\n    witness: " << to_text(r.witness);
    std::cout << "\n";
  }
}

void print_json(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports) {
    nlohmann::json rec = {{"identity", r.identity_id},
                          {"n", r.n},
                          {"passed", r.passed},
                          {"witness_terms", r.witness.term_count()},
                          {"elapsed_ms", r.elapsed.count()},
                          {"anchor", r.anchor}};
    if (!r.passed) {
      rec["failed_check"] = r.failed_check;
      rec["witness"] = to_json(r.witness);
    }
    std::cout << rec.dump() << "\n";
  }
}

int run_verify(const RunConfig& cfg) {
  if (!cfg.all && cfg.identities.empty()) throw UsageError("verify needs --all or at least one --identity");
  const std::vector<std::string> ids = selected_identities(cfg);
  Workspace ws(cfg.n, cfg.max_tau);
  const auto reports = verify_many(ids, ws, cfg.threads, cfg.heavy);
  if (cfg.format_name == "json") {
    print_json(reports);
  } else {
    print_text(reports);
  }
  for (const auto& r : reports) {
    if (!r.passed) return 1;
  }
  return 0;
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--n", cfg.n, "dimension N")->check(CLI::Range(kMinDimension, kMaxDimension));
  app->add_option("--max-tau", cfg.max_tau, "highest t-level kept symbolic")->check(CLI::Range(2, kMaxTauCap));
  app->add_option("--format", cfg.format_name, "text or json")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rotation-coefficient identities for semisimple quantum cohomology"};
  RunConfig cfg;
  std::string dump_flag;
  app.add_option("--dump", dump_flag, "render a quantity (same as the dump subcommand)");
  add_common(&app, cfg);

  CLI::App* verify = app.add_subcommand("verify", "check registered identities");
  add_common(verify, cfg);
  verify->add_option("--identity", cfg.identities, "identity id, repeatable");
  verify->add_flag("--all", cfg.all, "every identity supported at this N");
  verify->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--heavy", cfg.heavy, "admit slow ranges (genus-2 identities at N=4, minutes each)");

  CLI::App* dump = app.add_subcommand("dump", "render one symbolic quantity");
  std::string target;
  add_common(dump, cfg);
  dump->add_option("target", target, "f2-rotation, l1f2, z1123, phi12, b1, theta12, tau2-l1-1, ...")->required();

  CLI::App* list = app.add_subcommand("list", "list registered identities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      for (const Identity& entry : identity_registry()) {
        std::cout << std::left << std::setw(22) << entry.id << "N=" << entry.min_n << ".." << entry.max_n;
        if (entry.heavy_max_n > entry.max_n) {
          std::cout << " (" << entry.heavy_max_n << " heavy)";
        } else {
          std::cout << "          ";
        }
        std::cout << "  " << entry.anchor << "\n";
      }
      return 0;
    }
    if (*verify) {
      if (!dump_flag.empty()) throw UsageError("--dump cannot be combined with verify");
      return run_verify(cfg);
    }
    if (*dump || !dump_flag.empty()) {
      cfg.dump_target = *dump ? target : dump_flag;
      return run_dump(cfg);
    }
    std::cerr << app.help();
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
