#pragma once

// Exact-rational differential polynomial ring in the fields b_i, c_i and their
// derivatives with respect to one distinguished time, plus the variational
// calculus needed for Hamiltonian flows.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fnr/rational.hpp"

namespace fnr {

/// `b` and `c` are the hierarchy fields. `symbol` and `constant` are fresh
/// symbols introduced by substitution files; a `constant` is killed by the
/// derivation, a `symbol` behaves like a field. For the two symbol kinds the
/// index is an id into a SymbolTable.
enum class FieldKind : std::uint8_t { b = 0, c = 1, symbol = 2, constant = 3 };

struct FieldVar {
  FieldKind kind = FieldKind::b;
  std::uint16_t index = 1;
  std::uint16_t dorder = 0;

  static constexpr int kMaxIndex = (1 << 14) - 1;

  /// Packed so that integer order equals (kind, index, dorder) order.
  constexpr std::uint32_t key() const {
    return (static_cast<std::uint32_t>(kind) << 30) | (static_cast<std::uint32_t>(index) << 16) | dorder;
  }
  static constexpr FieldVar from_key(std::uint32_t key) {
    return FieldVar{static_cast<FieldKind>(key >> 30), static_cast<std::uint16_t>((key >> 16) & 0x3fff),
                    static_cast<std::uint16_t>(key & 0xffff)};
  }

  FieldVar derived(int times = 1) const;
  FieldVar base() const { return FieldVar{kind, index, 0}; }
  bool is_constant() const { return kind == FieldKind::constant; }

  friend constexpr bool operator==(const FieldVar& a, const FieldVar& b) { return a.key() == b.key(); }
  friend constexpr std::strong_ordering operator<=>(const FieldVar& a, const FieldVar& b) {
    return a.key() <=> b.key();
  }
};

FieldVar field_b(int index, int dorder = 0);
FieldVar field_c(int index, int dorder = 0);

/// Product of generator powers; factors sorted by FieldVar order, no zero exponents.
class Monomial {
 public:
  struct Factor {
    std::uint32_t var;
    std::uint32_t exp;
    friend bool operator==(const Factor&, const Factor&) = default;
  };

  Monomial() = default;
  static Monomial of(FieldVar v, std::uint32_t exp = 1);
  /// Builds from arbitrary factors, merging duplicates and dropping zero exponents.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t exponent_of(FieldVar v) const;
  int max_dorder() const;

  Monomial operator*(const Monomial& other) const;
  /// Divides out `exp` powers of `var`; the caller guarantees they are present.
  Monomial divided_by(FieldVar v, std::uint32_t exp = 1) const;

  std::size_t hash() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Canonical term order: total degree, then lexicographic on the expanded
/// factor sequence (b < c, then index, then derivative order).
bool graded_less(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Polynomial with exact rational coefficients. The term vector is kept in
/// canonical order without zero coefficients, so structural equality is
/// mathematical equality.
class DiffPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  DiffPoly() = default;
  DiffPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  DiffPoly(long constant) : DiffPoly(Rational(constant)) {}  // NOLINT(google-explicit-constructor)
  DiffPoly(FieldVar v);  // NOLINT(google-explicit-constructor)

  static DiffPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// Coefficient of the given monomial (zero if absent).
  Rational coefficient(const Monomial& m) const;

  /// Every variable (with its derivative order) occurring in some term.
  std::set<FieldVar> variables() const;
  /// Base generators (derivative order zero) of every occurring variable.
  std::set<FieldVar> generators() const;
  int max_dorder() const;
  bool derivative_free() const { return max_dorder() <= 0; }
  std::uint32_t degree() const;

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly& operator*=(const DiffPoly& o);

  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const Rational& s, const DiffPoly& p);
  friend DiffPoly operator*(const DiffPoly& p, const Rational& s) { return s * p; }

  friend bool operator==(const DiffPoly&, const DiffPoly&) = default;

 private:
  friend class PolyAccumulator;
  std::vector<Term> terms_;
};

/// Hash-based accumulator used to assemble large polynomials term by term.
class PolyAccumulator {
 public:
  void add(const Monomial& m, const Rational& c);
  void add(Monomial&& m, const Rational& c);
  void add(const DiffPoly& p, const Rational& scale = Rational(1));
  /// Adds scale * a * b.
  void add_product(const DiffPoly& a, const DiffPoly& b, const Rational& scale = Rational(1));
  DiffPoly finish();

 private:
  std::unordered_map<Monomial, Rational, MonomialHash> terms_;
};

enum class ArithOp { add, mul };

DiffPoly dp_arith(const DiffPoly& lhs, const DiffPoly& rhs, ArithOp op);
DiffPoly dp_scale(const DiffPoly& p, const Rational& s);
DiffPoly dp_pow(const DiffPoly& p, std::uint32_t exp);

/// Applies the distinguished derivation `times` times (Leibniz rule, raises derivative order).
DiffPoly dp_derive(const DiffPoly& p, int times = 1);

/// Replaces every ruled dorder-0 generator u, wherever u^(l) occurs, by the
/// l-th derivative of its rule.
DiffPoly dp_substitute(const DiffPoly& p, const std::map<FieldVar, DiffPoly>& rules);

/// Partial derivative with respect to one variable (derivative order included).
DiffPoly partial(const DiffPoly& p, FieldVar v);

/// Extends a derivation given by its value on each variable to all of `p`.
/// `image` is consulted once per distinct variable.
DiffPoly apply_derivation(const DiffPoly& p, const std::function<DiffPoly(FieldVar)>& image);

/// Variational derivative: sum over l of (-d)^l (dp / d target^(l)).
DiffPoly euler_derivative(const DiffPoly& p, FieldVar target);

/// q with dq = p and zero constant term. Throws NotATotalDerivative when
/// p has a nonzero Euler image for some generator.
DiffPoly formal_integrate(const DiffPoly& p);

/// True iff p - q has vanishing variational derivative for every generator occurring in it.
bool equal_mod_total_derivative(const DiffPoly& p, const DiffPoly& q);

/// Writes p = coeff * v + rest with v not occurring in `rest`. Returns
/// nullopt when v occurs non-linearly.
std::optional<std::pair<DiffPoly, DiffPoly>> split_linear(const DiffPoly& p, FieldVar v);

}  // namespace fnr
