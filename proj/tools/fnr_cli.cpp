// Command-line front end. Talks to the engine only through fnr.h.

#include <sys/resource.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fnr/fnr.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitError = 2;

struct RunConfig {
  std::string command;
  int k = 1;
  int n = 1;
  int m = 2;
  int depth = 0;  // 0: pick from k, n, m
  std::string format = "text";
  std::string output;
  std::string sub;
  std::string via = "zc";
  bool zero_form = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EngineFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using PsiPtr = std::unique_ptr<fnr_psi, decltype(&fnr_psi_free)>;
using PdePtr = std::unique_ptr<fnr_pde, decltype(&fnr_pde_free)>;
using ReportPtr = std::unique_ptr<fnr_report, decltype(&fnr_report_free)>;

void check(fnr_status st) {
  if (st == FNR_OK) return;
  std::string msg = fnr_status_name(st);
  if (*fnr_last_error() != '\0') msg += ": " + std::string(fnr_last_error());
  if (st == FNR_ERR_INVALID_ARGUMENT) throw UsageError(msg);
  throw EngineFailure(msg);
}

std::string take(char* s) {
  std::string out(s);
  fnr_string_free(s);
  return out;
}

fnr_format format_of(const std::string& name) {
  if (name == "text") return FNR_FORMAT_TEXT;
  if (name == "latex") return FNR_FORMAT_LATEX;
  if (name == "json") return FNR_FORMAT_JSON;
  throw UsageError("unknown format '" + name + "' (expected text, latex or json)");
}

int default_depth(const RunConfig& cfg) {
  if (cfg.depth > 0) return cfg.depth;
  int top = cfg.n;
  if (cfg.command == "strong-zc") top = std::max(cfg.n, cfg.m);
  return cfg.k + top + 2;
}

PsiPtr build(int k, int depth) {
  if (k < 1) throw UsageError("--k must be at least 1");
  fnr_psi* raw = nullptr;
  check(fnr_psi_build(k, depth, &raw));
  return PsiPtr(raw, fnr_psi_free);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Renders a report; returns true iff every check passed.
bool render_report(fnr_status st, fnr_report* raw, fnr_format fmt, std::string& out) {
  check(st);
  ReportPtr report(raw, fnr_report_free);
  char* s = nullptr;
  check(fnr_report_render(report.get(), fmt, &s));
  out = take(s);
  return fnr_report_passed(report.get()) != 0;
}

int run(const RunConfig& cfg, std::string& out) {
  const fnr_format fmt = format_of(cfg.format);
  const int depth = default_depth(cfg);
  char* s = nullptr;
  fnr_report* report = nullptr;

  if (cfg.command == "duality") {
    if (cfg.n < 1 || cfg.n >= cfg.k) throw UsageError("duality needs 1 <= --n < --k");
    const fnr_status st = fnr_verify_duality(cfg.n, cfg.k, depth, &report);
    return render_report(st, report, fmt, out) ? kExitOk : kExitFailed;
  }

  PsiPtr psi = build(cfg.k, depth);
  if (cfg.command == "psi") {
    check(fnr_psi_render(psi.get(), fmt, &s));
  } else if (cfg.command == "lax") {
    check(fnr_lax_render(psi.get(), cfg.n, fmt, &s));
  } else if (cfg.command == "derive") {
    if (cfg.n < 1) throw UsageError("--n must be at least 1");
    fnr_pde* raw = nullptr;
    if (cfg.via == "zc") {
      check(fnr_pde_derive(psi.get(), cfg.n, &raw));
    } else if (cfg.via == "hamiltonian") {
      check(fnr_pde_from_hamiltonian(psi.get(), cfg.n, &raw));
    } else {
      throw UsageError("unknown --via '" + cfg.via + "' (expected zc or hamiltonian)");
    }
    PdePtr pde(raw, fnr_pde_free);
    if (!cfg.sub.empty()) check(fnr_pde_substitute(pde.get(), read_file(cfg.sub).c_str()));
    check(fnr_pde_render(pde.get(), fmt, cfg.zero_form ? 1 : 0, &s));
  } else if (cfg.command == "hamiltonian") {
    if (cfg.n < 1) throw UsageError("--n must be at least 1");
    check(fnr_hamiltonian_render(psi.get(), cfg.n, fmt, &s));
  } else if (cfg.command == "brackets") {
    check(fnr_brackets_render(psi.get(), fmt, &s));
  } else {
    fnr_status st = FNR_OK;
    if (cfg.command == "sklyanin") {
      st = fnr_verify_sklyanin(psi.get(), &report);
    } else if (cfg.command == "flow") {
      st = fnr_verify_flow(psi.get(), cfg.n, &report);
    } else if (cfg.command == "strong-zc") {
      st = fnr_verify_strong_zc(psi.get(), cfg.n, cfg.m, &report);
    } else if (cfg.command == "resolvent") {
      st = fnr_verify_resolvent(psi.get(), depth, &report);
    } else if (cfg.command == "diag") {
      st = fnr_verify_diag(psi.get(), &report);
    } else {
      throw UsageError("unknown command '" + cfg.command + "'");
    }
    return render_report(st, report, fmt, out) ? kExitOk : kExitFailed;
  }
  out = take(s);
  return kExitOk;
}

void apply_memory_cap() {
  const char* env = std::getenv("FNR_MAX_MEMORY_MB");
  if (env == nullptr || *env == '\0') return;
  errno = 0;
  char* end = nullptr;
  const unsigned long long mb = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || mb == 0) throw UsageError("FNR_MAX_MEMORY_MB must be a positive integer");
  rlimit lim{};
  lim.rlim_cur = static_cast<rlim_t>(mb) * 1024 * 1024;
  lim.rlim_max = lim.rlim_cur;
  if (setrlimit(RLIMIT_AS, &lim) != 0) throw UsageError("cannot apply FNR_MAX_MEMORY_MB");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Symbolic engine for the sl(2) FNR/AKNS hierarchy", "fnr"};
  app.set_version_flag("--version", std::string(fnr_version()));
  app.set_config("--config", "", "Flat key=value file with option defaults");
  app.require_subcommand(1);

  app.add_option("--k", cfg.k, "Time index of the phase space (free fields b1..bk, c1..ck)");
  app.add_option("--n", cfg.n, "Partner time, Lax degree or Hamiltonian index");
  app.add_option("--m", cfg.m, "Second partner time for verify strong-zc");
  app.add_option("--depth", cfg.depth, "Rows of the constraint table (default k + n + 2)");
  app.add_option("--format", cfg.format, "text, latex or json")->check(CLI::IsMember({"text", "latex", "json"}));
  app.add_option("--output,-o", cfg.output, "Write to this file instead of standard output");
  app.add_option("--sub", cfg.sub, "Substitution file applied to a derived system");
  app.add_option("--via", cfg.via, "Derivation route: zc or hamiltonian")->check(CLI::IsMember({"zc", "hamiltonian"}));
  app.add_flag("--zero-form", cfg.zero_form, "Write systems as d_n u - rhs = 0");

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help)->fallthrough();
    sub->callback([&cfg, name] { cfg.command = name; });
    return sub;
  };
  leaf(&app, "psi", "Constraint table Psi_k");
  leaf(&app, "lax", "Lax matrix V^(n) on the t_k phase space");
  leaf(&app, "derive", "t_n system on the t_k phase space");
  leaf(&app, "hamiltonian", "Density of H_k^(n)");
  leaf(&app, "brackets", "Field brackets on the t_k phase space");
  CLI::App* verify = app.add_subcommand("verify", "Verification passes; exit 1 if a check fails")->fallthrough();
  verify->require_subcommand(1);
  leaf(verify, "sklyanin", "Bracket bivector and the linear r-matrix algebra of V^(k)");
  leaf(verify, "duality", "Same system from the t_n and t_k phase spaces (n < k)");
  leaf(verify, "flow", "Hamiltonian flow of H_k^(n) against zero curvature");
  leaf(verify, "strong-zc", "Zero curvature between V^(n) and V^(m)");
  leaf(verify, "resolvent", "Resolvent identity to --depth");
  leaf(verify, "diag", "Diagonal consistency and squared trace of Psi_k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  std::string out;
  int code = kExitOk;
  try {
    apply_memory_cap();
    code = run(cfg, out);
  } catch (const UsageError& e) {
    std::cerr << "fnr: usage error: " << e.what() << "\n";
    return kExitError;
  } catch (const EngineFailure& e) {
    std::cerr << "fnr: error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::bad_alloc&) {
    std::cerr << "fnr: error: out of memory\n";
    return kExitError;
  }

  if (cfg.output.empty()) {
    std::cout << out << std::flush;
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    file << out;
    if (!file) {
      std::cerr << "fnr: error: cannot write " << cfg.output << "\n";
      return kExitError;
    }
  }
  return code;
}
