#include "fnr/psi.hpp"

#include <string>

#include "fnr/errors.hpp"

namespace fnr {

PsiTable::PsiTable(int k) : k_(k) {
  if (k < 1 || k > FieldVar::kMaxIndex) throw InvalidArgument("time index k must be >= 1");
  rows_.push_back({DiffPoly(1), DiffPoly(), DiffPoly()});
}

const PsiRow& PsiTable::row(int j) const {
  if (j < 0) throw InvalidArgument("negative row index");
  if (j > depth()) {
    throw DepthExhausted("row " + std::to_string(j) + " requested from a table of depth " + std::to_string(depth()));
  }
  return rows_[static_cast<std::size_t>(j)];
}

DiffPoly casimir_closure_a(const PsiTable& table, int m) {
  if (m < 1) throw InvalidArgument("closure index must be >= 1");
  PolyAccumulator acc;
  for (int i = 1; i < m; ++i) {
    const PsiRow& x = table.row(i);
    const PsiRow& y = table.row(m - i);
    acc.add_product(x.a, y.a, Rational(-1, 2));
    acc.add_product(x.b, y.c, Rational(-1, 4));
    acc.add_product(y.b, x.c, Rational(-1, 4));
  }
  return acc.finish();
}

std::pair<DiffPoly, DiffPoly> extend_offdiagonal(const PsiTable& table, int p) {
  if (p < 1) throw InvalidArgument("extension index must be >= 1");
  const int k = table.k();
  const PsiRow& base = table.row(p);
  PolyAccumulator b;
  PolyAccumulator c;
  b.add(dp_derive(base.b), Rational(1, 2));
  c.add(dp_derive(base.c), Rational(-1, 2));
  for (int j = 1; j <= k; ++j) {
    const PsiRow& lo = table.row(j);
    const PsiRow& hi = table.row(p + k - j);
    b.add_product(lo.a, hi.b, Rational(-1));
    b.add_product(hi.a, lo.b);
    c.add_product(lo.a, hi.c, Rational(-1));
    c.add_product(hi.a, lo.c);
  }
  return {b.finish(), c.finish()};
}

PsiTable build_psi(int k, int depth) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (depth < k) throw InvalidArgument("depth must be >= k");
  PsiTable table(k);
  for (int j = 1; j <= depth; ++j) {
    PsiRow row;
    if (j <= k) {
      row.b = DiffPoly(field_b(j));
      row.c = DiffPoly(field_c(j));
    } else {
      auto [bj, cj] = extend_offdiagonal(table, j - k);
      row.b = std::move(bj);
      row.c = std::move(cj);
    }
    row.a = casimir_closure_a(table, j);
    table.append(std::move(row));
  }
  return table;
}

Report diag_consistency(const PsiTable& table) {
  Report report{"diag_consistency", {}};
  const int k = table.k();
  for (int p = 1; p + k <= table.depth(); ++p) {
    PolyAccumulator rhs;
    for (int j = 0; j <= k; ++j) {
      const PsiRow& lo = table.row(j);
      const PsiRow& hi = table.row(p + k - j);
      rhs.add_product(lo.b, hi.c);
      rhs.add_product(lo.c, hi.b, Rational(-1));
    }
    report.expect_zero("p=" + std::to_string(p), dp_derive(table.row(p).a) - rhs.finish());
  }
  return report;
}

Report squared_trace_check(const PsiTable& table) {
  Report report{"squared_trace", {}};
  for (int m = 1; m <= table.depth(); ++m) {
    PolyAccumulator acc;
    for (int i = 0; i <= m; ++i) acc.add(sl2_trace(table.ell(i), table.ell(m - i)));
    report.expect_zero("lambda^-" + std::to_string(m), acc.finish());
  }
  return report;
}

LaurentMatrix lax_matrix(const PsiTable& table, int n) {
  if (n < 0) throw InvalidArgument("Lax degree must be >= 0");
  LaurentMatrix out;
  for (int m = 0; m <= n; ++m) out.set(n - m, table.ell(m));
  return out;
}

LaurentMatrix psi_series(const PsiTable& table) {
  LaurentMatrix out(table.depth());
  for (int j = 0; j <= table.depth(); ++j) out.set(-j, table.ell(j));
  return out;
}

}  // namespace fnr
