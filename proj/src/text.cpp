#include "fnr/text.hpp"

#include <cctype>

#include "fnr/errors.hpp"

namespace fnr {

// ---------------------------------------------------------------- SymbolTable

bool SymbolTable::is_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char ch : name) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  }
  return true;
}

bool SymbolTable::is_field_name(std::string_view name) {
  if (name.size() < 2 || (name[0] != 'b' && name[0] != 'c')) return false;
  if (name[1] == '0') return false;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  }
  return true;
}

FieldVar SymbolTable::declare(const std::string& name, bool constant) {
  if (!is_identifier(name)) throw ParseError("invalid symbol name '" + name + "'");
  if (is_field_name(name)) throw ParseError("'" + name + "' is a field name, not a symbol");
  if (auto existing = lookup(name)) {
    if (existing->is_constant() != constant) {
      throw ParseError("symbol '" + name + "' redeclared with a different kind");
    }
    return *existing;
  }
  if (names_.size() >= static_cast<std::size_t>(FieldVar::kMaxIndex)) throw InvalidArgument("too many symbols");
  names_.push_back(name);
  constant_.push_back(constant);
  return FieldVar{constant ? FieldKind::constant : FieldKind::symbol, static_cast<std::uint16_t>(names_.size()), 0};
}

std::optional<FieldVar> SymbolTable::lookup(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) {
      return FieldVar{constant_[i] ? FieldKind::constant : FieldKind::symbol, static_cast<std::uint16_t>(i + 1), 0};
    }
  }
  return std::nullopt;
}

const std::string& SymbolTable::name(FieldVar v) const {
  if (v.kind != FieldKind::symbol && v.kind != FieldKind::constant) throw InvalidArgument("not a symbol");
  if (v.index < 1 || v.index > names_.size()) throw InvalidArgument("unknown symbol id");
  return names_[v.index - 1];
}

// ---------------------------------------------------------------- printing

namespace {

std::string base_name(FieldVar v, const SymbolTable* symbols) {
  switch (v.kind) {
    case FieldKind::b:
      return "b" + std::to_string(v.index);
    case FieldKind::c:
      return "c" + std::to_string(v.index);
    default:
      if (symbols == nullptr) throw InvalidArgument("symbol printed without a symbol table");
      return symbols->name(v);
  }
}

}  // namespace

std::string to_text(FieldVar v, const SymbolTable* symbols) {
  return base_name(v, symbols) + std::string(v.dorder, '\'');
}

std::string to_text(const DiffPoly& p, const SymbolTable* symbols) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c.sign() < 0;
    const Rational mag = negative ? -c : c;
    std::string mono;
    for (const auto& f : m.factors()) {
      if (!mono.empty()) mono += '*';
      mono += to_text(FieldVar::from_key(f.var), symbols);
      if (f.exp > 1) mono += "^" + std::to_string(f.exp);
    }
    std::string body;
    if (mono.empty()) {
      body = mag.to_string();
    } else if (mag.is_one()) {
      body = mono;
    } else {
      body = mag.to_string() + "*" + mono;
    }
    if (first) {
      out = (negative ? "-" : "") + body;
      first = false;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const SymbolTable* symbols, SymbolTable* declare_into = nullptr)
      : text_(text), symbols_(declare_into != nullptr ? declare_into : symbols), declare_into_(declare_into) {}

  DiffPoly poly() {
    PolyAccumulator acc;
    skip_ws();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = get() == '-';
      skip_ws();
    }
    while (true) {
      auto [m, c] = term();
      acc.add(std::move(m), negative ? -c : c);
      skip_ws();
      if (at_end()) break;
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      negative = op == '-';
      skip_ws();
      // a term may open with a signed rational
      if (peek() == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        get();
        negative = !negative;
      }
    }
    return acc.finish();
  }

  FieldVar single_var() {
    skip_ws();
    FieldVar v = var();
    skip_ws();
    if (!at_end()) fail("trailing input after variable");
    return v;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() { return at_end() ? '\0' : text_[pos_++]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string_view digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return text_.substr(start, pos_ - start);
  }

  Rational rational() {
    const std::size_t start = pos_;
    digits();
    if (peek() == '/') {
      ++pos_;
      digits();
    }
    return Rational::parse(text_.substr(start, pos_ - start));
  }

  FieldVar var() {
    const std::size_t start = pos_;
    if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_') fail("expected a variable");
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    int primes = 0;
    while (peek() == '\'') {
      ++pos_;
      ++primes;
    }
    FieldVar v;
    if (SymbolTable::is_field_name(name)) {
      long index = 0;
      for (char ch : name.substr(1)) {
        index = index * 10 + (ch - '0');
        if (index > FieldVar::kMaxIndex) fail("field index too large");
      }
      v = FieldVar{name[0] == 'b' ? FieldKind::b : FieldKind::c, static_cast<std::uint16_t>(index), 0};
    } else {
      auto found = symbols_ != nullptr ? symbols_->lookup(name) : std::nullopt;
      if (!found && declare_into_ != nullptr) found = declare_into_->declare(std::string(name), false);
      if (!found) fail("unknown symbol '" + std::string(name) + "'");
      v = *found;
    }
    if (primes > 0) {
      if (v.is_constant()) return FieldVar{v.kind, v.index, static_cast<std::uint16_t>(0xffff)};
      if (primes > 0xfffe) fail("derivative order too large");
      v.dorder = static_cast<std::uint16_t>(primes);
    }
    return v;
  }

  Monomial monomial() {
    std::vector<Monomial::Factor> factors;
    while (true) {
      skip_ws();
      const FieldVar v = var();
      std::uint32_t exp = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        const auto d = digits();
        if (d.size() > 6) fail("exponent too large");
        exp = static_cast<std::uint32_t>(std::stoul(std::string(d)));
        if (exp == 0) fail("zero exponent");
      }
      factors.push_back({v.key(), exp});
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return Monomial::from_factors(std::move(factors));
  }

  std::pair<Monomial, Rational> term() {
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Rational c = rational();
      skip_ws();
      if (peek() != '*') return {Monomial(), c};
      ++pos_;
      return {monomial(), c};
    }
    return {monomial(), Rational(1)};
  }

  std::string_view text_;
  const SymbolTable* symbols_;
  SymbolTable* declare_into_;
  std::size_t pos_ = 0;
};

// A derivative of a declared constant parses to this sentinel and is dropped.
DiffPoly drop_constant_derivatives(DiffPoly p) {
  std::vector<DiffPoly::Term> kept;
  bool changed = false;
  for (const auto& t : p.terms()) {
    bool zero = false;
    for (const auto& f : t.first.factors()) {
      const FieldVar v = FieldVar::from_key(f.var);
      if (v.is_constant() && v.dorder != 0) zero = true;
    }
    if (zero) {
      changed = true;
    } else {
      kept.push_back(t);
    }
  }
  return changed ? DiffPoly::from_terms(std::move(kept)) : p;
}

}  // namespace

DiffPoly parse_poly(std::string_view text, const SymbolTable* symbols) {
  Parser parser(text, symbols);
  return drop_constant_derivatives(parser.poly());
}

DiffPoly parse_poly_declaring(std::string_view text, SymbolTable& symbols) {
  Parser parser(text, nullptr, &symbols);
  return drop_constant_derivatives(parser.poly());
}

std::map<FieldVar, DiffPoly> parse_substitutions(std::string_view text, SymbolTable& symbols) {
  std::map<FieldVar, DiffPoly> rules;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.substr(0, 6) == "const ") {
      std::string_view names = line.substr(6);
      while (!names.empty()) {
        const auto comma = names.find(',');
        std::string_view name = names.substr(0, comma);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.remove_prefix(1);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
        try {
          symbols.declare(std::string(name), true);
        } catch (const ParseError& e) {
          throw ParseError(where + e.what());
        }
        if (comma == std::string_view::npos) break;
        names = names.substr(comma + 1);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(where + "expected 'lhs = rhs'");
    std::string_view lhs = line.substr(0, eq);
    while (!lhs.empty() && std::isspace(static_cast<unsigned char>(lhs.back()))) lhs.remove_suffix(1);
    try {
      FieldVar target;
      if (SymbolTable::is_field_name(lhs)) {
        target = parse_fieldvar(lhs);
      } else if (SymbolTable::is_identifier(lhs)) {
        target = symbols.declare(std::string(lhs), false);
      } else {
        throw ParseError("left-hand side must be an underived field or symbol");
      }
      if (rules.count(target) != 0) throw ParseError("duplicate rule for '" + std::string(lhs) + "'");
      rules[target] = parse_poly_declaring(line.substr(eq + 1), symbols);
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    }
  }
  return rules;
}

FieldVar parse_fieldvar(std::string_view text, const SymbolTable* symbols) {
  Parser parser(text, symbols);
  const FieldVar v = parser.single_var();
  if (v.is_constant() && v.dorder != 0) throw ParseError("derivative of a constant in '" + std::string(text) + "'");
  return v;
}

// ---------------------------------------------------------------- LaTeX

namespace {

std::string latex_rational(const Rational& r) {
  if (r.is_integer()) return r.to_string();
  return "\\frac{" + r.numerator().get_str() + "}{" + r.denominator().get_str() + "}";
}

std::string latex_base(FieldVar v, const SymbolTable* symbols) {
  switch (v.kind) {
    case FieldKind::b:
      return "b_{" + std::to_string(v.index) + "}";
    case FieldKind::c:
      return "c_{" + std::to_string(v.index) + "}";
    default:
      return "\\mathrm{" + base_name(v, symbols) + "}";
  }
}

}  // namespace

std::string to_latex(FieldVar v, int time_index, const SymbolTable* symbols) {
  std::string out = latex_base(v, symbols);
  if (v.dorder == 0) return out;
  std::string d = time_index > 0 ? "\\partial_{t_{" + std::to_string(time_index) + "}}" : "\\partial";
  if (v.dorder > 1) d += "^{" + std::to_string(v.dorder) + "}";
  return d + " " + out;
}

std::string to_latex(const DiffPoly& p, int time_index, const SymbolTable* symbols) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c.sign() < 0;
    const Rational mag = negative ? -c : c;
    std::string mono;
    for (const auto& f : m.factors()) {
      const FieldVar v = FieldVar::from_key(f.var);
      std::string factor = to_latex(v, time_index, symbols);
      if (f.exp > 1) {
        if (v.dorder > 0) factor = "(" + factor + ")";
        factor += "^{" + std::to_string(f.exp) + "}";
      }
      if (!mono.empty()) mono += " ";
      mono += factor;
    }
    std::string body;
    if (mono.empty()) {
      body = latex_rational(mag);
    } else if (mag.is_one()) {
      body = mono;
    } else {
      body = latex_rational(mag) + " " + mono;
    }
    if (first) {
      out = (negative ? "-" : "") + body;
      first = false;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

// ---------------------------------------------------------------- JSON

namespace {

const char* kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::b:
      return "b";
    case FieldKind::c:
      return "c";
    case FieldKind::symbol:
      return "symbol";
    case FieldKind::constant:
      return "constant";
  }
  return "?";
}

}  // namespace

nlohmann::json to_json(const DiffPoly& p, const SymbolTable* symbols) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& f : m.factors()) {
      const FieldVar v = FieldVar::from_key(f.var);
      nlohmann::json jv = {{"kind", kind_name(v.kind)}, {"index", v.index}, {"dorder", v.dorder}, {"exp", f.exp}};
      if (v.kind == FieldKind::symbol || v.kind == FieldKind::constant) jv["name"] = base_name(v, symbols);
      vars.push_back(std::move(jv));
    }
    out.push_back({{"coeff", c.to_fraction_string()}, {"vars", std::move(vars)}});
  }
  return out;
}

DiffPoly poly_from_json(const nlohmann::json& j, SymbolTable* symbols) {
  if (!j.is_array()) throw ParseError("polynomial JSON must be an array of terms");
  try {
    PolyAccumulator acc;
    for (const auto& term : j) {
      const Rational c = Rational::parse(term.at("coeff").get<std::string>());
      std::vector<Monomial::Factor> factors;
      for (const auto& jv : term.at("vars")) {
        const auto kind = jv.at("kind").get<std::string>();
        const auto dorder = jv.at("dorder").get<int>();
        const auto exp = jv.at("exp").get<std::uint32_t>();
        if (exp == 0 || dorder < 0 || dorder > 0xfffe) throw ParseError("bad exponent or derivative order");
        FieldVar v;
        if (kind == "b" || kind == "c") {
          const auto index = jv.at("index").get<int>();
          v = kind == "b" ? field_b(index, dorder) : field_c(index, dorder);
        } else if (kind == "symbol" || kind == "constant") {
          if (symbols == nullptr) throw ParseError("symbol in JSON without a symbol table");
          v = symbols->declare(jv.at("name").get<std::string>(), kind == "constant");
          if (v.is_constant() && dorder != 0) throw ParseError("derivative of a constant");
          v.dorder = static_cast<std::uint16_t>(dorder);
        } else {
          throw ParseError("unknown variable kind '" + kind + "'");
        }
        factors.push_back({v.key(), exp});
      }
      acc.add(Monomial::from_factors(std::move(factors)), c);
    }
    return acc.finish();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed polynomial JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace fnr
