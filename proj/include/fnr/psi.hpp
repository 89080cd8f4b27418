#pragma once

// The constraint map Psi_k: every coefficient l_j = a_j sigma3 + b_j sigma+ + c_j sigma-
// of L = sum_j l_j lambda^{-j} expressed through the free fields b_1..b_k,
// c_1..c_k and their derivatives in t_k.

#include <utility>
#include <vector>

#include "fnr/diffpoly.hpp"
#include "fnr/loopalg.hpp"
#include "fnr/report.hpp"

namespace fnr {

struct PsiRow {
  DiffPoly a;
  DiffPoly b;
  DiffPoly c;

  Sl2Poly ell() const { return {a, b, c}; }
  friend bool operator==(const PsiRow&, const PsiRow&) = default;
};

class PsiTable {
 public:
  /// Empty table for time t_k holding only row 0 = sigma3.
  explicit PsiTable(int k);

  int k() const { return k_; }
  /// Largest row index stored.
  int depth() const { return static_cast<int>(rows_.size()) - 1; }
  /// Row j; throws DepthExhausted beyond depth, InvalidArgument for j < 0.
  const PsiRow& row(int j) const;
  Sl2Poly ell(int j) const { return row(j).ell(); }
  const std::vector<PsiRow>& rows() const { return rows_; }

  void append(PsiRow row) { rows_.push_back(std::move(row)); }

  friend bool operator==(const PsiTable&, const PsiTable&) = default;

 private:
  int k_;
  std::vector<PsiRow> rows_;
};

/// a_m from the vanishing of the lambda^{-m} coefficient of Tr L^2; needs rows 1..m-1.
DiffPoly casimir_closure_a(const PsiTable& table, int m);

/// (b_{p+k}, c_{p+k}) from the off-diagonal part of the t_k flow at order p; needs rows 0..p+k-1.
std::pair<DiffPoly, DiffPoly> extend_offdiagonal(const PsiTable& table, int p);

/// Rows 0..depth of Psi_k. Requires 1 <= k <= depth.
PsiTable build_psi(int k, int depth);

/// Checks the diagonal part of the t_k flow for every p with p + k <= depth.
Report diag_consistency(const PsiTable& table);

/// Checks that Tr(Psi_k(L)^2) = 2 through lambda^{-depth}.
Report squared_trace_check(const PsiTable& table);

/// V^(n) = sum_{m=0}^{n} l_m lambda^{n-m} (exact). Throws DepthExhausted if n > depth.
LaurentMatrix lax_matrix(const PsiTable& table, int n);

/// Psi_k(L) = sum_{j=0}^{depth} l_j lambda^{-j}, known through lambda^{-depth}.
LaurentMatrix psi_series(const PsiTable& table);

}  // namespace fnr
