#pragma once

// Text, LaTeX and JSON forms of differential polynomials.
//
// Text grammar:
//   rational := ['-'] digits ['/' digits]
//   fieldvar := ('b'|'c') index {'\''}        e.g. b1'' is the second derivative of b1
//   monomial := fieldvar ['^' exp] {'*' fieldvar ['^' exp]}
//   term     := rational ['*' monomial] | monomial
//   poly     := term {('+'|'-') term}
//
// Any other identifier is a symbol and must be known to the SymbolTable in use.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fnr/diffpoly.hpp"

namespace fnr {

/// Names for symbol and constant generators. Field names b<i>, c<i> are reserved.
class SymbolTable {
 public:
  /// Registers `name`; re-declaring with the same kind returns the existing variable.
  FieldVar declare(const std::string& name, bool constant);
  std::optional<FieldVar> lookup(std::string_view name) const;
  /// Name of a symbol or constant generator (derivative order ignored).
  const std::string& name(FieldVar v) const;
  bool empty() const { return names_.empty(); }

  static bool is_identifier(std::string_view name);
  static bool is_field_name(std::string_view name);

 private:
  std::vector<std::string> names_;
  std::vector<bool> constant_;
};

std::string to_text(FieldVar v, const SymbolTable* symbols = nullptr);
std::string to_text(const DiffPoly& p, const SymbolTable* symbols = nullptr);

/// Parses the text grammar. Throws ParseError.
DiffPoly parse_poly(std::string_view text, const SymbolTable* symbols = nullptr);
/// Like parse_poly, declaring unknown identifiers as symbols in `symbols`.
DiffPoly parse_poly_declaring(std::string_view text, SymbolTable& symbols);

/// Substitution file: one `lhs = rhs` per line, `#` comments, and
/// `const NAME[, NAME...]` lines declaring constants. The left side is an
/// underived field or symbol; fresh identifiers on the right become symbols.
std::map<FieldVar, DiffPoly> parse_substitutions(std::string_view text, SymbolTable& symbols);

/// Parses a single field variable such as `c2'`. Throws ParseError.
FieldVar parse_fieldvar(std::string_view text, const SymbolTable* symbols = nullptr);

/// LaTeX form; derivatives are written as powers of \partial_{t_k} (k = 0 prints a bare \partial).
std::string to_latex(FieldVar v, int time_index, const SymbolTable* symbols = nullptr);
std::string to_latex(const DiffPoly& p, int time_index, const SymbolTable* symbols = nullptr);

/// JSON form: [{"coeff": "num/den", "vars": [{"kind", "index", "dorder", "exp"}]}].
/// Symbols carry "kind": "symbol" or "constant" plus a "name".
nlohmann::json to_json(const DiffPoly& p, const SymbolTable* symbols = nullptr);
/// Inverse of to_json. Symbol names are declared in `symbols` when given. Throws ParseError.
DiffPoly poly_from_json(const nlohmann::json& j, SymbolTable* symbols = nullptr);

}  // namespace fnr
