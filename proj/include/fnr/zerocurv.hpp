#pragma once

// PDE systems from zero-curvature conditions between Lax matrices of one
// Psi_k table, and the elimination that identifies the two dual derivations
// of the same system.

#include <map>

#include "fnr/diffpoly.hpp"
#include "fnr/psi.hpp"
#include "fnr/report.hpp"

namespace fnr {

/// Rules d_n u = rhs, with rhs written in t_k-derivatives of the free fields.
/// For n < k the fields with index <= k - n only get defining relations
/// (`auxiliary`); the remaining 2n fields carry the evolution.
struct PdeSystem {
  int k = 0;
  int n = 0;
  std::map<FieldVar, DiffPoly> evolution;
  std::map<FieldVar, DiffPoly> auxiliary;
  /// Set after a substitution: the expression whose d_n is the left-hand side.
  std::map<FieldVar, DiffPoly> lhs;

  /// Evolution and auxiliary rules together.
  std::map<FieldVar, DiffPoly> all_rules() const;
  friend bool operator==(const PdeSystem&, const PdeSystem&) = default;
};

/// Derivation d_n on differential polynomials: u^(l) maps to the l-th t_k
/// derivative of rules[u]. Constants map to zero; an unruled generator is an error.
DiffPoly chain_rule(const DiffPoly& p, const std::map<FieldVar, DiffPoly>& rules);

/// Matches lambda-coefficients of d_n V^(k) - d_k V^(n) + [V^(k), V^(n)] = 0.
/// Throws ResidualNonZero when a coefficient neither defines a rule nor vanishes.
PdeSystem zero_curvature(const PsiTable& table, int n);

/// d_n V^(m) - d_m V^(n) + [V^(m), V^(n)] = 0 with both flows taken from zero_curvature.
Report strong_zc_check(const PsiTable& table, int n, int m);

/// Derives the system once on the t_n phase space with partner time k and once
/// on the t_k phase space with partner time n, eliminates the auxiliary fields
/// of the latter and compares. Requires 1 <= n < k <= depth. When `common` is
/// given it receives the matched system in the t_n frame. Throws EliminationFailure.
Report dual_equivalence(int n, int k, int depth, PdeSystem* common = nullptr);

/// V^(n) = lambda V^(n-1) + l_n and V^(n) = P_+(lambda^n Psi_k(L)) for n = 1..nmax.
Report generating_recurrence_check(const PsiTable& table, int nmax);

/// d_n d_m u = d_m d_n u for every free field u.
Report commuting_flows_check(const PsiTable& table, int n, int m);

/// Applies substitution rules to every right-hand side; ruled fields get their
/// image recorded as left-hand side.
PdeSystem substitute(const PdeSystem& system, const std::map<FieldVar, DiffPoly>& rules);

}  // namespace fnr
