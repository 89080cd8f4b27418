#include "fnr/emit.hpp"

#include <algorithm>
#include <vector>

#include "fnr/errors.hpp"

namespace fnr {

Format parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "latex") return Format::latex;
  if (name == "json") return Format::json;
  throw InvalidArgument("unknown format '" + name + "' (expected text, latex or json)");
}

namespace {

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// Fields ordered b1, c1, b2, c2, ... with symbols last.
std::vector<FieldVar> display_order(const std::map<FieldVar, DiffPoly>& rules) {
  std::vector<FieldVar> out;
  for (const auto& [u, rhs] : rules) out.push_back(u);
  std::sort(out.begin(), out.end(), [](FieldVar x, FieldVar y) {
    const bool xs = x.kind != FieldKind::b && x.kind != FieldKind::c;
    const bool ys = y.kind != FieldKind::b && y.kind != FieldKind::c;
    if (xs != ys) return ys;
    if (x.index != y.index) return x.index < y.index;
    return x.kind < y.kind;
  });
  return out;
}

std::string rhs_text(const DiffPoly& p, const SymbolTable* symbols) { return to_text(p, symbols); }

}  // namespace

std::string render_psi(const PsiTable& table, Format format) {
  switch (format) {
    case Format::json: {
      nlohmann::json rows = nlohmann::json::array();
      for (int j = 0; j <= table.depth(); ++j) {
        const PsiRow& r = table.row(j);
        rows.push_back({{"j", j}, {"a", to_json(r.a)}, {"b", to_json(r.b)}, {"c", to_json(r.c)}});
      }
      return dump({{"k", table.k()}, {"depth", table.depth()}, {"rows", std::move(rows)}});
    }
    case Format::latex: {
      std::string out = "\\begin{align*}\n";
      for (int j = 0; j <= table.depth(); ++j) {
        const PsiRow& r = table.row(j);
        const std::string idx = std::to_string(j);
        out += "a_{" + idx + "} &= " + to_latex(r.a, table.k()) + ", & b_{" + idx + "} &= " +
               to_latex(r.b, table.k()) + ", & c_{" + idx + "} &= " + to_latex(r.c, table.k()) + " \\\\\n";
      }
      return out + "\\end{align*}\n";
    }
    case Format::text:
      break;
  }
  std::string out = "psi k=" + std::to_string(table.k()) + " depth=" + std::to_string(table.depth()) +
                    " (' = d/dt_" + std::to_string(table.k()) + ")\n";
  for (int j = 0; j <= table.depth(); ++j) {
    const PsiRow& r = table.row(j);
    const std::string idx = std::to_string(j);
    out += "a" + idx + " = " + to_text(r.a) + "\n";
    out += "b" + idx + " = " + to_text(r.b) + "\n";
    out += "c" + idx + " = " + to_text(r.c) + "\n";
  }
  return out;
}

std::string render_lax(const PsiTable& table, int n, Format format) {
  const LaurentMatrix v = lax_matrix(table, n);
  const std::string name = "V_" + std::to_string(table.k()) + "^(" + std::to_string(n) + ")";
  switch (format) {
    case Format::json: {
      nlohmann::json j = to_json(v);
      j["k"] = table.k();
      j["n"] = n;
      return dump(j);
    }
    case Format::latex:
      return "V_{" + std::to_string(table.k()) + "}^{(" + std::to_string(n) + ")} = " +
             to_latex_matrix(v, table.k()) + "\n";
    case Format::text:
      break;
  }
  return name + " (' = d/dt_" + std::to_string(table.k()) + ")\n" + to_text(v);
}

nlohmann::json pde_to_json(const PdeSystem& system, const SymbolTable* symbols) {
  auto rules = [&](const std::map<FieldVar, DiffPoly>& table) {
    nlohmann::json out = nlohmann::json::array();
    for (const FieldVar u : display_order(table)) {
      nlohmann::json entry = {{"field", to_text(u, symbols)}, {"rhs", to_json(table.at(u), symbols)}};
      if (auto it = system.lhs.find(u); it != system.lhs.end()) entry["lhs"] = to_json(it->second, symbols);
      out.push_back(std::move(entry));
    }
    return out;
  };
  return {{"k", system.k}, {"n", system.n}, {"evolution", rules(system.evolution)},
          {"auxiliary", rules(system.auxiliary)}};
}

PdeSystem pde_from_json(const nlohmann::json& j, SymbolTable* symbols) {
  try {
    PdeSystem sys;
    sys.k = j.at("k").get<int>();
    sys.n = j.at("n").get<int>();
    auto read = [&](const nlohmann::json& list, std::map<FieldVar, DiffPoly>& target) {
      for (const auto& entry : list) {
        const auto name = entry.at("field").get<std::string>();
        FieldVar u;
        if (SymbolTable::is_field_name(name)) {
          u = parse_fieldvar(name);
        } else if (symbols != nullptr) {
          u = symbols->declare(name, false);
        } else {
          throw ParseError("symbol field '" + name + "' without a symbol table");
        }
        target[u] = poly_from_json(entry.at("rhs"), symbols);
        if (entry.contains("lhs")) sys.lhs[u] = poly_from_json(entry.at("lhs"), symbols);
      }
    };
    read(j.at("evolution"), sys.evolution);
    read(j.at("auxiliary"), sys.auxiliary);
    return sys;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed system JSON: ") + e.what());
  }
}

std::string render_pde(const PdeSystem& system, Format format, bool zero_form, const SymbolTable* symbols) {
  if (format == Format::json) {
    nlohmann::json j = pde_to_json(system, symbols);
    j["form"] = zero_form ? "zero" : "evolution";
    return dump(j);
  }
  const std::string n = std::to_string(system.n);
  const bool latex = format == Format::latex;
  auto lhs = [&](FieldVar u) {
    auto it = system.lhs.find(u);
    if (latex) {
      const std::string body = it == system.lhs.end() ? to_latex(u, system.k, symbols)
                                                      : "\\left(" + to_latex(it->second, system.k, symbols) + "\\right)";
      return "\\partial_{t_{" + n + "}} " + body;
    }
    if (it == system.lhs.end()) return "d_" + n + " " + to_text(u, symbols);
    return "d_" + n + "(" + to_text(it->second, symbols) + ")";
  };
  auto line = [&](FieldVar u, const DiffPoly& rhs) {
    if (zero_form) {
      const DiffPoly neg = -rhs;
      std::string body = latex ? to_latex(neg, system.k, symbols) : rhs_text(neg, symbols);
      if (neg.is_zero()) return lhs(u) + (latex ? " &= 0" : " = 0");
      if (body[0] == '-') {
        body = " - " + body.substr(1);
      } else {
        body = " + " + body;
      }
      return lhs(u) + body + (latex ? " &= 0" : " = 0");
    }
    const std::string body = latex ? to_latex(rhs, system.k, symbols) : rhs_text(rhs, symbols);
    return lhs(u) + (latex ? " &= " : " = ") + body;
  };
  std::string out;
  if (latex) {
    out = "\\begin{align*}\n";
    for (const FieldVar u : display_order(system.auxiliary)) out += line(u, system.auxiliary.at(u)) + " \\\\\n";
    for (const FieldVar u : display_order(system.evolution)) out += line(u, system.evolution.at(u)) + " \\\\\n";
    return out + "\\end{align*}\n";
  }
  out = "system k=" + std::to_string(system.k) + " n=" + n + " (' = d/dt_" + std::to_string(system.k) + ")\n";
  for (const FieldVar u : display_order(system.auxiliary)) out += "aux " + line(u, system.auxiliary.at(u)) + "\n";
  for (const FieldVar u : display_order(system.evolution)) out += line(u, system.evolution.at(u)) + "\n";
  return out;
}

std::string render_hamiltonian(int k, int n, const DiffPoly& density, Format format) {
  switch (format) {
    case Format::json:
      return dump({{"k", k}, {"n", n}, {"density", to_json(density)}, {"text", to_text(density)}});
    case Format::latex:
      return "H_{" + std::to_string(k) + "}^{(" + std::to_string(n) + ")} = \\int \\left(" + to_latex(density, k) +
             "\\right) dt_{" + std::to_string(k) + "}\n";
    case Format::text:
      break;
  }
  return "H_" + std::to_string(k) + "^(" + std::to_string(n) + ") density (' = d/dt_" + std::to_string(k) +
         ")\n" + to_text(density) + "\n";
}

std::string render_brackets(const BracketTable& bt, Format format) {
  const auto fields = bt.fields();
  if (format == Format::json) {
    nlohmann::json entries = nlohmann::json::array();
    for (const FieldVar u : fields) {
      for (const FieldVar v : fields) {
        const DiffPoly p = bt.get(u, v);
        if (p.is_zero()) continue;
        entries.push_back({{"u", to_text(u)}, {"v", to_text(v)}, {"value", to_json(p)}});
      }
    }
    return dump({{"k", bt.k}, {"brackets", std::move(entries)}});
  }
  std::string out = format == Format::latex ? "\\begin{align*}\n" : "brackets k=" + std::to_string(bt.k) + "\n";
  for (const FieldVar u : fields) {
    for (const FieldVar v : fields) {
      if (v <= u) continue;
      const DiffPoly p = bt.get(u, v);
      if (p.is_zero()) continue;
      if (format == Format::latex) {
        out += "\\{" + to_latex(u, bt.k) + ", " + to_latex(v, bt.k) + "\\} &= " + to_latex(p, bt.k) +
               " \\, \\delta \\\\\n";
      } else {
        out += "{" + to_text(u) + ", " + to_text(v) + "} = " + to_text(p) + "\n";
      }
    }
  }
  if (format == Format::latex) out += "\\end{align*}\n";
  return out;
}

std::string render_report(const Report& report, Format format, int time_index) {
  switch (format) {
    case Format::json:
      return dump(to_json(report));
    case Format::latex:
      return to_latex(report, time_index);
    case Format::text:
      break;
  }
  return to_text(report);
}

}  // namespace fnr
