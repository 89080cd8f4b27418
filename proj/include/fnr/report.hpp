#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "fnr/diffpoly.hpp"
#include "fnr/text.hpp"

namespace fnr {

/// One verified identity; `residual` is what should have vanished.
struct CheckItem {
  std::string label;
  bool passed = true;
  DiffPoly residual;
  std::string detail;
};

/// Outcome of a verification pass. Failures are recorded, never thrown.
struct Report {
  std::string name;
  std::vector<CheckItem> items;

  bool passed() const;
  std::size_t failures() const;
  /// Records a check that passes iff `residual` is zero.
  void expect_zero(std::string label, DiffPoly residual, std::string detail = {});
  void add(std::string label, bool passed, std::string detail = {});
  /// Appends the items of `other`, prefixing their labels.
  void merge(const Report& other, const std::string& prefix);
};

std::string to_text(const Report& r, const SymbolTable* symbols = nullptr);
std::string to_latex(const Report& r, int time_index, const SymbolTable* symbols = nullptr);
nlohmann::json to_json(const Report& r, const SymbolTable* symbols = nullptr);

}  // namespace fnr
