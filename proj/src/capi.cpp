#include "fnr/fnr.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "fnr/emit.hpp"
#include "fnr/errors.hpp"
#include "fnr/poisson.hpp"
#include "fnr/psi.hpp"
#include "fnr/report.hpp"
#include "fnr/text.hpp"
#include "fnr/zerocurv.hpp"

struct fnr_psi {
  fnr::PsiTable table;
};

struct fnr_pde {
  fnr::PdeSystem system;
  fnr::SymbolTable symbols;
};

struct fnr_report {
  fnr::Report report;
  int time_index = 0;
};

namespace {

thread_local std::string g_last_error;

fnr_status status_of(fnr::ErrorKind kind) {
  switch (kind) {
    case fnr::ErrorKind::invalid_argument: return FNR_ERR_INVALID_ARGUMENT;
    case fnr::ErrorKind::parse: return FNR_ERR_PARSE;
    case fnr::ErrorKind::depth_exhausted: return FNR_ERR_DEPTH_EXHAUSTED;
    case fnr::ErrorKind::not_a_total_derivative: return FNR_ERR_NOT_TOTAL_DERIVATIVE;
    case fnr::ErrorKind::residual_nonzero: return FNR_ERR_RESIDUAL_NONZERO;
    case fnr::ErrorKind::elimination_failure: return FNR_ERR_ELIMINATION_FAILURE;
  }
  return FNR_ERR_INTERNAL;
}

template <class F>
fnr_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return FNR_OK;
  } catch (const fnr::EngineError& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FNR_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FNR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return FNR_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw fnr::InvalidArgument(what);
}

fnr::Format format_of(fnr_format f) {
  switch (f) {
    case FNR_FORMAT_TEXT: return fnr::Format::text;
    case FNR_FORMAT_LATEX: return fnr::Format::latex;
    case FNR_FORMAT_JSON: return fnr::Format::json;
  }
  throw fnr::InvalidArgument("unknown output format");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

fnr_status emit_report(fnr::Report report, int time_index, fnr_report** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new fnr_report{std::move(report), time_index};
  });
}

}  // namespace

extern "C" {

const char* fnr_version(void) { return "0.1.0"; }

const char* fnr_status_name(fnr_status status) {
  switch (status) {
    case FNR_OK: return "ok";
    case FNR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FNR_ERR_PARSE: return "parse error";
    case FNR_ERR_DEPTH_EXHAUSTED: return "depth exhausted";
    case FNR_ERR_NOT_TOTAL_DERIVATIVE: return "not a total derivative";
    case FNR_ERR_RESIDUAL_NONZERO: return "residual nonzero";
    case FNR_ERR_ELIMINATION_FAILURE: return "elimination failure";
    case FNR_ERR_OUT_OF_MEMORY: return "out of memory";
    case FNR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fnr_last_error(void) { return g_last_error.c_str(); }

void fnr_string_free(char* s) { std::free(s); }

fnr_status fnr_psi_build(int k, int depth, fnr_psi** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = nullptr;
    *out = new fnr_psi{fnr::build_psi(k, depth)};
  });
}

void fnr_psi_free(fnr_psi* psi) { delete psi; }

int fnr_psi_k(const fnr_psi* psi) { return psi == nullptr ? 0 : psi->table.k(); }

int fnr_psi_depth(const fnr_psi* psi) { return psi == nullptr ? -1 : psi->table.depth(); }

fnr_status fnr_psi_render(const fnr_psi* psi, fnr_format format, char** out) {
  return guarded([&] {
    require(psi != nullptr && out != nullptr, "null argument");
    *out = dup_string(fnr::render_psi(psi->table, format_of(format)));
  });
}

fnr_status fnr_lax_render(const fnr_psi* psi, int n, fnr_format format, char** out) {
  return guarded([&] {
    require(psi != nullptr && out != nullptr, "null argument");
    require(n >= 0, "n must be nonnegative");
    *out = dup_string(fnr::render_lax(psi->table, n, format_of(format)));
  });
}

fnr_status fnr_pde_derive(const fnr_psi* psi, int n, fnr_pde** out) {
  return guarded([&] {
    require(psi != nullptr && out != nullptr, "null argument");
    require(n >= 1, "n must be at least 1");
    *out = new fnr_pde{fnr::zero_curvature(psi->table, n), {}};
  });
}

fnr_status fnr_pde_from_hamiltonian(const fnr_psi* psi, int n, fnr_pde** out) {
  return guarded([&] {
    require(psi != nullptr && out != nullptr, "null argument");
    require(n >= 1, "n must be at least 1");
    *out = new fnr_pde{fnr::flow_from_hamiltonian(psi->table, n), {}};
  });
}

fnr_status fnr_pde_substitute(fnr_pde* pde, const char* rules) {
  return guarded([&] {
    require(pde != nullptr && rules != nullptr, "null argument");
    fnr::SymbolTable symbols = pde->symbols;
    const auto parsed = fnr::parse_substitutions(rules, symbols);
    pde->system = fnr::substitute(pde->system, parsed);
    pde->symbols = std::move(symbols);
  });
}

fnr_status fnr_pde_render(const fnr_pde* pde, fnr_format format, int zero_form, char** out) {
  return guarded([&] {
    require(pde != nullptr && out != nullptr, "null argument");
    const fnr::SymbolTable* symbols = pde->symbols.empty() ? nullptr : &pde->symbols;
    *out = dup_string(fnr::render_pde(pde->system, format_of(format), zero_form != 0, symbols));
  });
}

void fnr_pde_free(fnr_pde* pde) { delete pde; }

fnr_status fnr_hamiltonian_render(const fnr_psi* psi, int n, fnr_format format, char** out) {
  return guarded([&] {
    require(psi != nullptr && out != nullptr, "null argument");
    require(n >= 1, "n must be at least 1");
    const fnr::DiffPoly h = fnr::hamiltonian_density(psi->table, n);
    *out = dup_string(fnr::render_hamiltonian(psi->table.k(), n, h, format_of(format)));
  });
}

fnr_status fnr_brackets_render(const fnr_psi* psi, fnr_format format, char** out) {
  return guarded([&] {
    require(psi != nullptr && out != nullptr, "null argument");
    *out = dup_string(fnr::render_brackets(fnr::field_bracket_table(psi->table), format_of(format)));
  });
}

fnr_status fnr_verify_sklyanin(const fnr_psi* psi, fnr_report** out) {
  fnr::Report r;
  const fnr_status st = guarded([&] {
    require(psi != nullptr, "null argument");
    r.name = "sklyanin k=" + std::to_string(psi->table.k());
    const fnr::BracketTable bt = fnr::field_bracket_table(psi->table);
    r.merge(fnr::bracket_table_check(bt), "bivector: ");
    r.merge(fnr::leibniz_check(psi->table), "leibniz: ");
    r.merge(fnr::sklyanin_check(psi->table), "r-matrix: ");
  });
  return st != FNR_OK ? st : emit_report(std::move(r), psi->table.k(), out);
}

fnr_status fnr_verify_duality(int n, int k, int depth, fnr_report** out) {
  fnr::Report r;
  const fnr_status st = guarded([&] { r = fnr::dual_equivalence(n, k, depth); });
  return st != FNR_OK ? st : emit_report(std::move(r), n, out);
}

fnr_status fnr_verify_flow(const fnr_psi* psi, int n, fnr_report** out) {
  fnr::Report r;
  const fnr_status st = guarded([&] {
    require(psi != nullptr, "null argument");
    require(n >= 1, "n must be at least 1");
    r = fnr::flow_matches_zc(psi->table, n);
  });
  return st != FNR_OK ? st : emit_report(std::move(r), psi->table.k(), out);
}

fnr_status fnr_verify_strong_zc(const fnr_psi* psi, int n, int m, fnr_report** out) {
  fnr::Report r;
  const fnr_status st = guarded([&] {
    require(psi != nullptr, "null argument");
    require(n >= 1 && m >= 1, "times must be at least 1");
    r = fnr::strong_zc_check(psi->table, n, m);
  });
  return st != FNR_OK ? st : emit_report(std::move(r), psi->table.k(), out);
}

fnr_status fnr_verify_resolvent(const fnr_psi* psi, int depth, fnr_report** out) {
  fnr::Report r;
  const fnr_status st = guarded([&] {
    require(psi != nullptr, "null argument");
    r = fnr::resolvent_check(psi->table, depth);
  });
  return st != FNR_OK ? st : emit_report(std::move(r), psi->table.k(), out);
}

fnr_status fnr_verify_diag(const fnr_psi* psi, fnr_report** out) {
  fnr::Report r;
  const fnr_status st = guarded([&] {
    require(psi != nullptr, "null argument");
    r.name = "psi k=" + std::to_string(psi->table.k()) + " depth=" + std::to_string(psi->table.depth());
    r.merge(fnr::diag_consistency(psi->table), "diagonal: ");
    r.merge(fnr::squared_trace_check(psi->table), "trace: ");
  });
  return st != FNR_OK ? st : emit_report(std::move(r), psi->table.k(), out);
}

int fnr_report_passed(const fnr_report* report) { return report != nullptr && report->report.passed() ? 1 : 0; }

size_t fnr_report_failures(const fnr_report* report) { return report == nullptr ? 0 : report->report.failures(); }

fnr_status fnr_report_render(const fnr_report* report, fnr_format format, char** out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    *out = dup_string(fnr::render_report(report->report, format_of(format), report->time_index));
  });
}

void fnr_report_free(fnr_report* report) { delete report; }

}  // extern "C"
