#pragma once

// sl(2)-valued Laurent series in the spectral parameter with differential
// polynomial coefficients. Components are always taken in the basis
// (sigma3, sigma+, sigma-); matrix entries are never materialized.

#include <climits>
#include <functional>
#include <map>
#include <string>

#include "json.hpp"

#include "fnr/diffpoly.hpp"
#include "fnr/text.hpp"

namespace fnr {

/// a*sigma3 + bp*sigma+ + cm*sigma-, i.e. the matrix (a bp; cm -a).
struct Sl2Poly {
  DiffPoly a;
  DiffPoly bp;
  DiffPoly cm;

  static Sl2Poly sigma3() { return {DiffPoly(1), DiffPoly(), DiffPoly()}; }
  static Sl2Poly sigma_plus() { return {DiffPoly(), DiffPoly(1), DiffPoly()}; }
  static Sl2Poly sigma_minus() { return {DiffPoly(), DiffPoly(), DiffPoly(1)}; }

  bool is_zero() const { return a.is_zero() && bp.is_zero() && cm.is_zero(); }

  Sl2Poly operator-() const { return {-a, -bp, -cm}; }
  Sl2Poly& operator+=(const Sl2Poly& o);
  Sl2Poly& operator-=(const Sl2Poly& o);
  friend Sl2Poly operator+(Sl2Poly x, const Sl2Poly& y) { return x += y; }
  friend Sl2Poly operator-(Sl2Poly x, const Sl2Poly& y) { return x -= y; }
  friend Sl2Poly operator*(const DiffPoly& s, const Sl2Poly& x) { return {s * x.a, s * x.bp, s * x.cm}; }
  friend Sl2Poly operator*(const Rational& s, const Sl2Poly& x) { return {s * x.a, s * x.bp, s * x.cm}; }
  friend bool operator==(const Sl2Poly&, const Sl2Poly&) = default;
};

Sl2Poly sl2_commutator(const Sl2Poly& x, const Sl2Poly& y);
/// Tr(x y) = 2 x.a y.a + x.bp y.cm + x.cm y.bp.
DiffPoly sl2_trace(const Sl2Poly& x, const Sl2Poly& y);
/// Applies `f` to each component.
Sl2Poly sl2_map(const Sl2Poly& x, const std::function<DiffPoly(const DiffPoly&)>& f);

/// Finite Laurent object sum_e X_e lambda^e. Exponents below -depth() are
/// unknown; reading one throws DepthExhausted. Exponents above the largest
/// stored one are exactly zero. Depth may be negative after a shift.
class LaurentMatrix {
 public:
  static constexpr int kExact = INT_MAX / 4;

  LaurentMatrix() = default;
  explicit LaurentMatrix(int depth) : depth_(clamp_depth(depth)) {}
  static LaurentMatrix single(int exponent, Sl2Poly coeff, int depth = kExact);

  const std::map<int, Sl2Poly>& coeffs() const { return coeffs_; }
  int depth() const { return depth_; }
  bool exact() const { return depth_ >= kExact; }
  bool known(int exponent) const { return exponent >= -depth_; }
  /// Highest stored exponent, or INT_MIN when nothing is stored.
  int top() const { return coeffs_.empty() ? INT_MIN : coeffs_.rbegin()->first; }
  /// Highest exponent that may be nonzero, counting the unknown tail.
  int effective_top() const;

  /// Coefficient at `exponent`; throws DepthExhausted below the known range.
  Sl2Poly at(int exponent) const;
  /// Stores a coefficient (dropping it when zero). Exponents below -depth are ignored.
  void set(int exponent, Sl2Poly coeff);

  /// Same series with the known range cut down to `depth`.
  LaurentMatrix truncated(int depth) const;

  LaurentMatrix operator-() const;
  LaurentMatrix& operator+=(const LaurentMatrix& o);
  LaurentMatrix& operator-=(const LaurentMatrix& o);
  friend LaurentMatrix operator+(LaurentMatrix x, const LaurentMatrix& y) { return x += y; }
  friend LaurentMatrix operator-(LaurentMatrix x, const LaurentMatrix& y) { return x -= y; }
  friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

  static int clamp_depth(long depth) { return depth >= kExact ? kExact : static_cast<int>(depth); }

 private:
  std::map<int, Sl2Poly> coeffs_;
  int depth_ = kExact;
};

/// Depth of a bilinear product of X and Y (any convolution over exponents).
int product_depth(const LaurentMatrix& x, const LaurentMatrix& y);

LaurentMatrix lm_commutator(const LaurentMatrix& x, const LaurentMatrix& y);
/// Multiplication by lambda^k.
LaurentMatrix lm_shift(const LaurentMatrix& x, int k);

enum class Projection { plus, minus, R };
/// plus keeps exponents >= 0, minus keeps exponents < 0, R = plus - minus.
LaurentMatrix lm_project(const LaurentMatrix& x, Projection which);

/// Applies `f` to every component of every coefficient (depth unchanged).
LaurentMatrix lm_map(const LaurentMatrix& x, const std::function<DiffPoly(const DiffPoly&)>& f);

/// Coefficient of lambda^{-1} in Tr(lambda^j X Y). Throws DepthExhausted when
/// that coefficient is not determined by the known ranges.
DiffPoly trace_pair(const LaurentMatrix& x, const LaurentMatrix& y, int j);

/// Coefficient of lambda^e in Tr(X Y), same depth rules as trace_pair.
DiffPoly trace_coefficient(const LaurentMatrix& x, const LaurentMatrix& y, int e);

/// {"depth": d|null, "coeffs": {"<exp>": {"a": ..., "bp": ..., "cm": ...}}}
nlohmann::json to_json(const LaurentMatrix& x, const SymbolTable* symbols = nullptr);
/// One line per nonzero component: "lambda^e a: <poly>".
std::string to_text(const LaurentMatrix& x, const SymbolTable* symbols = nullptr);
/// 2x2 pmatrix with entries written as polynomials in lambda.
std::string to_latex_matrix(const LaurentMatrix& x, int time_index, const SymbolTable* symbols = nullptr);

}  // namespace fnr
