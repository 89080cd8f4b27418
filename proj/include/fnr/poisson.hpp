#pragma once

// Ultralocal field brackets on the free fields of Psi_k, the r-matrix check
// for V^(k), the Riccati (W-Z) expansion of the monodromy and the conserved
// densities and Hamiltonian flows derived from it.

#include <map>
#include <utility>
#include <vector>

#include "fnr/diffpoly.hpp"
#include "fnr/loopalg.hpp"
#include "fnr/psi.hpp"
#include "fnr/report.hpp"
#include "fnr/zerocurv.hpp"

namespace fnr {

/// Overall factor of the field brackets, fixed by {b1, c1} = 4 delta at k = 1.
inline constexpr long kBracketNormalization = 2;
/// r = kappa * Pi / (lambda - mu) in the linear r-matrix relation for V^(k).
/// With the bracket normalization above the relation holds for kappa = -2.
inline constexpr long kSklyaninNormalization = -2;

/// {u(t), v(tau)} = P[u, v] delta(t - tau) on the 2k free fields.
struct BracketTable {
  int k = 0;
  std::map<std::pair<FieldVar, FieldVar>, DiffPoly> entries;

  /// Zero for pairs that are not stored.
  DiffPoly get(FieldVar u, FieldVar v) const;
  std::vector<FieldVar> fields() const;
};

/// P[b_m, c_n] = 2 nu a_{m+n-k-1} (a_0 = 1, a_{<0} = 0), antisymmetric, b-b and c-c zero.
BracketTable field_bracket_table(const PsiTable& table);

/// Pointwise bracket of two derivative-free polynomials: sum_{u,v} dF/du dG/dv P[u,v].
DiffPoly poisson_bracket(const BracketTable& bt, const DiffPoly& f, const DiffPoly& g);

/// Antisymmetry, ultralocality and the Jacobi identity of the bivector.
Report bracket_table_check(const BracketTable& bt);

/// {b_m, a_n} = -nu b_{m+n-k-1} and {c_m, a_n} = nu c_{m+n-k-1} for 1 <= m, n <= k.
Report leibniz_check(const PsiTable& table);

/// (lambda - mu) {V_1(lambda), V_2(mu)} = kappa [Pi, V_1(lambda) + V_2(mu)] for V = V^(k), entrywise.
Report sklyanin_check(const PsiTable& table);

/// Same check for an arbitrary polynomial Lax matrix (exact, nonnegative exponents, derivative-free).
Report sklyanin_check(const LaurentMatrix& v, const BracketTable& bt);

struct WZExpansion {
  int k = 0;
  int depth = 0;
  /// w[j] for j = 1..depth (w[0] is zero); off-diagonal.
  std::vector<Sl2Poly> w;
  /// zdot_densities[n-1] is the lambda^{-n} coefficient of (1/2) Tr(sigma3 O W).
  std::vector<DiffPoly> zdot_densities;
};

/// Solves dW = O + DW - WD - WOW for W = sum_{j=1}^{depth} w_j lambda^{-j}, with V^(k) = D + O.
WZExpansion wz_expand(const PsiTable& table, int depth);

/// lambda^{-(n+1)} coefficient of (1/2) Tr(sigma3 O W); its t_k integral is H_k^(n).
DiffPoly hamiltonian_density(const PsiTable& table, int n);

/// d_n u = sum_v P[u, v] E_v(h) with h the density of H_k^(n). Fields are split
/// into evolution and auxiliary as in zero_curvature.
PdeSystem flow_from_hamiltonian(const PsiTable& table, int n);

/// Compares flow_from_hamiltonian with zero_curvature field by field.
Report flow_matches_zc(const PsiTable& table, int n);

/// Density of {H, K} = integral of sum P[u, v] (dH/du)(dK/dv) (variational derivatives).
DiffPoly hamiltonian_bracket(const BracketTable& bt, const DiffPoly& h, const DiffPoly& k);

/// (1 + W) sigma3 (1 + W)^{-1} = Psi_k(L) through lambda^{-depth}.
Report resolvent_check(const PsiTable& table, int depth);

}  // namespace fnr
