#include "fnr/report.hpp"

#include <algorithm>

namespace fnr {

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [](const CheckItem& i) { return !i.passed; }));
}

void Report::expect_zero(std::string label, DiffPoly residual, std::string detail) {
  const bool ok = residual.is_zero();
  items.push_back({std::move(label), ok, std::move(residual), std::move(detail)});
}

void Report::add(std::string label, bool ok, std::string detail) {
  items.push_back({std::move(label), ok, DiffPoly(), std::move(detail)});
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& item : other.items) {
    CheckItem copy = item;
    copy.label = prefix + copy.label;
    items.push_back(std::move(copy));
  }
}

std::string to_text(const Report& r, const SymbolTable* symbols) {
  std::string out = r.name + ": " + (r.passed() ? "PASS" : "FAIL") + " (" +
                    std::to_string(r.items.size() - r.failures()) + "/" + std::to_string(r.items.size()) + ")\n";
  for (const auto& item : r.items) {
    out += "  [" + std::string(item.passed ? "ok" : "FAIL") + "] " + item.label;
    if (!item.detail.empty()) out += " (" + item.detail + ")";
    if (!item.residual.is_zero()) out += "\n      residual: " + to_text(item.residual, symbols);
    out += "\n";
  }
  return out;
}

std::string to_latex(const Report& r, int time_index, const SymbolTable* symbols) {
  std::string out = "\\begin{itemize}\n";
  for (const auto& item : r.items) {
    out += "  \\item \\texttt{" + item.label + "}: " + (item.passed ? "pass" : "fail");
    if (!item.residual.is_zero()) out += ", residual $" + to_latex(item.residual, time_index, symbols) + "$";
    out += "\n";
  }
  out += "\\end{itemize}\n";
  return out;
}

nlohmann::json to_json(const Report& r, const SymbolTable* symbols) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& item : r.items) {
    nlohmann::json j = {{"label", item.label}, {"passed", item.passed}, {"residual", to_json(item.residual, symbols)}};
    if (!item.detail.empty()) j["detail"] = item.detail;
    checks.push_back(std::move(j));
  }
  return {{"name", r.name}, {"passed", r.passed()}, {"checks", std::move(checks)}};
}

}  // namespace fnr
