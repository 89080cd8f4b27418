#pragma once

// Rendering of engine objects for the command line. Every renderer is
// deterministic and ends its output with a newline.

#include <string>

#include "json.hpp"

#include "fnr/poisson.hpp"
#include "fnr/psi.hpp"
#include "fnr/report.hpp"
#include "fnr/text.hpp"
#include "fnr/zerocurv.hpp"

namespace fnr {

enum class Format { text, latex, json };

/// "text", "latex" or "json"; throws InvalidArgument otherwise.
Format parse_format(const std::string& name);

std::string render_psi(const PsiTable& table, Format format);
std::string render_lax(const PsiTable& table, int n, Format format);
/// `zero_form` writes each rule as d_n u - rhs = 0.
std::string render_pde(const PdeSystem& system, Format format, bool zero_form, const SymbolTable* symbols = nullptr);
std::string render_hamiltonian(int k, int n, const DiffPoly& density, Format format);
std::string render_brackets(const BracketTable& bt, Format format);
std::string render_report(const Report& report, Format format, int time_index);

nlohmann::json pde_to_json(const PdeSystem& system, const SymbolTable* symbols = nullptr);
/// Inverse of pde_to_json. Throws ParseError.
PdeSystem pde_from_json(const nlohmann::json& j, SymbolTable* symbols = nullptr);

}  // namespace fnr
