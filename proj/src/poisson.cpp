#include "fnr/poisson.hpp"

#include <algorithm>
#include <string>

#include "fnr/errors.hpp"
#include "fnr/text.hpp"

namespace fnr {

// ---------------------------------------------------------------- brackets

DiffPoly BracketTable::get(FieldVar u, FieldVar v) const {
  auto it = entries.find({u, v});
  return it == entries.end() ? DiffPoly() : it->second;
}

std::vector<FieldVar> BracketTable::fields() const {
  std::vector<FieldVar> out;
  for (int i = 1; i <= k; ++i) out.push_back(field_b(i));
  for (int i = 1; i <= k; ++i) out.push_back(field_c(i));
  return out;
}

BracketTable field_bracket_table(const PsiTable& table) {
  const int k = table.k();
  if (table.depth() < k) throw DepthExhausted("bracket table needs depth >= k");
  BracketTable bt;
  bt.k = k;
  for (int m = 1; m <= k; ++m) {
    for (int n = 1; n <= k; ++n) {
      const int idx = m + n - k - 1;
      if (idx < 0) continue;
      DiffPoly value = Rational(2 * kBracketNormalization) * table.row(idx).a;
      if (value.is_zero()) continue;
      bt.entries[{field_b(m), field_c(n)}] = value;
      bt.entries[{field_c(n), field_b(m)}] = -value;
    }
  }
  return bt;
}

DiffPoly poisson_bracket(const BracketTable& bt, const DiffPoly& f, const DiffPoly& g) {
  if (!f.derivative_free() || !g.derivative_free()) {
    throw InvalidArgument("pointwise bracket needs derivative-free arguments");
  }
  PolyAccumulator acc;
  const auto fv = f.variables();
  const auto gv = g.variables();
  for (const FieldVar u : fv) {
    const DiffPoly fu = partial(f, u);
    for (const FieldVar v : gv) {
      const DiffPoly p = bt.get(u, v);
      if (p.is_zero()) continue;
      acc.add_product(fu, partial(g, v) * p);
    }
  }
  return acc.finish();
}

Report bracket_table_check(const BracketTable& bt) {
  Report report{"bracket_table k=" + std::to_string(bt.k), {}};
  const auto fields = bt.fields();
  for (const FieldVar u : fields) {
    for (const FieldVar v : fields) {
      report.expect_zero("antisymmetry {" + to_text(u) + "," + to_text(v) + "}", bt.get(u, v) + bt.get(v, u));
    }
  }
  for (const auto& [uv, p] : bt.entries) {
    report.add("ultralocal {" + to_text(uv.first) + "," + to_text(uv.second) + "}", p.derivative_free());
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      for (std::size_t l = j + 1; l < fields.size(); ++l) {
        const FieldVar u = fields[i];
        const FieldVar v = fields[j];
        const FieldVar z = fields[l];
        PolyAccumulator acc;
        for (const FieldVar w : fields) {
          acc.add_product(bt.get(u, w), partial(bt.get(v, z), w));
          acc.add_product(bt.get(v, w), partial(bt.get(z, u), w));
          acc.add_product(bt.get(z, w), partial(bt.get(u, v), w));
        }
        report.expect_zero("jacobi " + to_text(u) + "," + to_text(v) + "," + to_text(z), acc.finish());
      }
    }
  }
  return report;
}

Report leibniz_check(const PsiTable& table) {
  const int k = table.k();
  Report report{"leibniz k=" + std::to_string(k), {}};
  const BracketTable bt = field_bracket_table(table);
  const Rational nu(kBracketNormalization);
  for (int m = 1; m <= k; ++m) {
    for (int n = 1; n <= k; ++n) {
      const int idx = m + n - k - 1;
      const PsiRow zero_row{};
      const PsiRow& target = idx >= 1 ? table.row(idx) : zero_row;
      const DiffPoly& an = table.row(n).a;
      report.expect_zero("{b" + std::to_string(m) + ",a" + std::to_string(n) + "}",
                         poisson_bracket(bt, DiffPoly(field_b(m)), an) + nu * target.b);
      report.expect_zero("{c" + std::to_string(m) + ",a" + std::to_string(n) + "}",
                         poisson_bracket(bt, DiffPoly(field_c(m)), an) - nu * target.c);
    }
  }
  return report;
}

// ---------------------------------------------------------------- Sklyanin

namespace {

using Poly1 = std::map<int, DiffPoly>;
using Poly2 = std::map<std::pair<int, int>, DiffPoly>;

// Entry (i, j) of the 2x2 matrix as a polynomial in the spectral parameter.
Poly1 matrix_entry(const LaurentMatrix& v, int i, int j) {
  Poly1 out;
  for (const auto& [e, c] : v.coeffs()) {
    DiffPoly p;
    if (i == 0 && j == 0) p = c.a;
    if (i == 0 && j == 1) p = c.bp;
    if (i == 1 && j == 0) p = c.cm;
    if (i == 1 && j == 1) p = -c.a;
    if (!p.is_zero()) out[e] = std::move(p);
  }
  return out;
}

void add_to(Poly2& target, std::pair<int, int> at, const DiffPoly& p) {
  if (p.is_zero()) return;
  DiffPoly& slot = target[at];
  slot += p;
  if (slot.is_zero()) target.erase(at);
}

}  // namespace

Report sklyanin_check(const LaurentMatrix& v, const BracketTable& bt) {
  Report report{"sklyanin k=" + std::to_string(bt.k), {}};
  if (!v.exact()) throw InvalidArgument("Sklyanin check needs an exact Lax matrix");
  for (const auto& [e, c] : v.coeffs()) {
    if (e < 0) throw InvalidArgument("Sklyanin check needs a polynomial Lax matrix");
  }
  Poly1 entry[2][2];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) entry[i][j] = matrix_entry(v, i, j);
  }
  const Rational kappa(kSklyaninNormalization);
  const char* names[2] = {"1", "2"};
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      for (int j = 0; j < 2; ++j) {
        for (int l = 0; l < 2; ++l) {
          Poly2 residual;
          // (lambda - mu) {V_ij(lambda), V_kl(mu)}
          for (const auto& [p, fp] : entry[i][j]) {
            for (const auto& [q, gq] : entry[k][l]) {
              const DiffPoly pb = poisson_bracket(bt, fp, gq);
              add_to(residual, {p + 1, q}, pb);
              add_to(residual, {p, q + 1}, -pb);
            }
          }
          // - kappa [delta_il (X_kj - Y_kj) + delta_kj (Y_il - X_il)]
          if (i == l) {
            for (const auto& [p, x] : entry[k][j]) add_to(residual, {p, 0}, -(kappa * x));
            for (const auto& [q, y] : entry[k][j]) add_to(residual, {0, q}, kappa * y);
          }
          if (k == j) {
            for (const auto& [q, y] : entry[i][l]) add_to(residual, {0, q}, -(kappa * y));
            for (const auto& [p, x] : entry[i][l]) add_to(residual, {p, 0}, kappa * x);
          }
          const std::string label = std::string("{V") + names[i] + names[j] + "(lambda),V" + names[k] + names[l] +
                                    "(mu)}";
          if (residual.empty()) {
            report.add(label, true);
          } else {
            const auto& [at, p] = *residual.begin();
            report.items.push_back({label, false, p,
                                    "lambda^" + std::to_string(at.first) + " mu^" + std::to_string(at.second)});
          }
        }
      }
    }
  }
  return report;
}

Report sklyanin_check(const PsiTable& table) {
  return sklyanin_check(lax_matrix(table, table.k()), field_bracket_table(table));
}

// ---------------------------------------------------------------- W-Z expansion

WZExpansion wz_expand(const PsiTable& table, int depth) {
  if (depth < 1) throw InvalidArgument("expansion depth must be >= 1");
  const int k = table.k();
  WZExpansion out;
  out.k = k;
  out.depth = depth;
  std::vector<const PsiRow*> row(static_cast<std::size_t>(k) + 1);
  for (int m = 0; m <= k; ++m) row[static_cast<std::size_t>(m)] = &table.row(m);
  auto& w = out.w;
  w.assign(static_cast<std::size_t>(depth) + 1, Sl2Poly{});
  for (int j = 1; j <= depth; ++j) {
    // y = [sigma3, w_j] = d w_{j-k} - o_j - sum_m [a_m sigma3, w_{j-m}] + sum w_i o_m w_l
    PolyAccumulator yb;
    PolyAccumulator yc;
    if (j - k >= 1) {
      yb.add(dp_derive(w[static_cast<std::size_t>(j - k)].bp));
      yc.add(dp_derive(w[static_cast<std::size_t>(j - k)].cm));
    }
    if (j <= k) {
      yb.add(row[static_cast<std::size_t>(j)]->b, Rational(-1));
      yc.add(row[static_cast<std::size_t>(j)]->c, Rational(-1));
    }
    for (int m = 1; m <= k && j - m >= 1; ++m) {
      const DiffPoly& am = row[static_cast<std::size_t>(m)]->a;
      yb.add_product(am, w[static_cast<std::size_t>(j - m)].bp, Rational(-2));
      yc.add_product(am, w[static_cast<std::size_t>(j - m)].cm, Rational(2));
    }
    for (int i = 1; i <= j - 2; ++i) {
      for (int m = 1; m <= k && i + m <= j - 1; ++m) {
        const int l = j - i - m;
        const Sl2Poly& wi = w[static_cast<std::size_t>(i)];
        const Sl2Poly& wl = w[static_cast<std::size_t>(l)];
        const PsiRow& om = *row[static_cast<std::size_t>(m)];
        yb.add_product(wi.bp * om.c, wl.bp);
        yc.add_product(wi.cm * om.b, wl.cm);
      }
    }
    w[static_cast<std::size_t>(j)].bp = Rational(1, 2) * yb.finish();
    w[static_cast<std::size_t>(j)].cm = Rational(-1, 2) * yc.finish();
  }
  for (int n = 1; n + k - 1 <= depth; ++n) {
    PolyAccumulator acc;
    for (int m = 1; m <= k; ++m) {
      const Sl2Poly& wj = w[static_cast<std::size_t>(n + k - m)];
      acc.add_product(row[static_cast<std::size_t>(m)]->b, wj.cm, Rational(1, 2));
      acc.add_product(row[static_cast<std::size_t>(m)]->c, wj.bp, Rational(-1, 2));
    }
    out.zdot_densities.push_back(acc.finish());
  }
  return out;
}

DiffPoly hamiltonian_density(const PsiTable& table, int n) {
  if (n < 0) throw InvalidArgument("Hamiltonian index must be >= 0");
  const WZExpansion wz = wz_expand(table, n + table.k());
  return wz.zdot_densities.at(static_cast<std::size_t>(n));
}

DiffPoly hamiltonian_bracket(const BracketTable& bt, const DiffPoly& h, const DiffPoly& k) {
  const auto fields = bt.fields();
  std::map<FieldVar, DiffPoly> dh;
  std::map<FieldVar, DiffPoly> dk;
  for (const FieldVar u : fields) {
    dh[u] = euler_derivative(h, u);
    dk[u] = euler_derivative(k, u);
  }
  PolyAccumulator acc;
  for (const auto& [uv, p] : bt.entries) acc.add_product(dh[uv.first], dk[uv.second] * p);
  return acc.finish();
}

PdeSystem flow_from_hamiltonian(const PsiTable& table, int n) {
  if (n < 1) throw InvalidArgument("partner time n must be >= 1");
  const int k = table.k();
  const BracketTable bt = field_bracket_table(table);
  const DiffPoly h = hamiltonian_density(table, n);
  const auto fields = bt.fields();
  std::map<FieldVar, DiffPoly> variational;
  for (const FieldVar v : fields) variational[v] = euler_derivative(h, v);
  PdeSystem sys;
  sys.k = k;
  sys.n = n;
  for (const FieldVar u : fields) {
    PolyAccumulator acc;
    for (const FieldVar v : fields) {
      const DiffPoly p = bt.get(u, v);
      if (!p.is_zero()) acc.add_product(p, variational[v]);
    }
    auto& target = (n < k && u.index <= k - n) ? sys.auxiliary : sys.evolution;
    target[u] = acc.finish();
  }
  return sys;
}

Report flow_matches_zc(const PsiTable& table, int n) {
  Report report{"flow k=" + std::to_string(table.k()) + " n=" + std::to_string(n), {}};
  const auto zc = zero_curvature(table, n).all_rules();
  const auto fl = flow_from_hamiltonian(table, n).all_rules();
  for (const auto& [u, rhs] : zc) {
    report.expect_zero("d_" + std::to_string(n) + " " + to_text(u), fl.at(u) - rhs);
  }
  return report;
}

// ---------------------------------------------------------------- resolvent

namespace {

// Scalar plus traceless part of a gl(2) series in lambda^{-1}, truncated below -depth.
struct Gl2Series {
  std::map<int, DiffPoly> s;
  std::map<int, Sl2Poly> x;
};

Gl2Series gl2_mul(const Gl2Series& p, const Gl2Series& q, int depth) {
  std::map<int, PolyAccumulator> s;
  std::map<int, Sl2Poly> x;
  auto low = [&](int e) { return e < -depth; };
  for (const auto& [e1, s1] : p.s) {
    for (const auto& [e2, s2] : q.s) {
      if (!low(e1 + e2)) s[e1 + e2].add_product(s1, s2);
    }
    for (const auto& [e2, x2] : q.x) {
      if (!low(e1 + e2)) x[e1 + e2] += s1 * x2;
    }
  }
  for (const auto& [e1, x1] : p.x) {
    for (const auto& [e2, s2] : q.s) {
      if (!low(e1 + e2)) x[e1 + e2] += s2 * x1;
    }
    for (const auto& [e2, x2] : q.x) {
      if (low(e1 + e2)) continue;
      s[e1 + e2].add(sl2_trace(x1, x2), Rational(1, 2));
      x[e1 + e2] += Rational(1, 2) * sl2_commutator(x1, x2);
    }
  }
  Gl2Series out;
  for (auto& [e, acc] : s) {
    DiffPoly v = acc.finish();
    if (!v.is_zero()) out.s[e] = std::move(v);
  }
  for (auto& [e, v] : x) {
    if (!v.is_zero()) out.x[e] = std::move(v);
  }
  return out;
}

}  // namespace

Report resolvent_check(const PsiTable& table, int depth) {
  if (depth < 0) throw InvalidArgument("resolvent depth must be >= 0");
  if (table.depth() < depth) throw DepthExhausted("resolvent check needs the table to the requested depth");
  Report report{"resolvent k=" + std::to_string(table.k()), {}};
  Gl2Series w;
  if (depth >= 1) {
    const WZExpansion wz = wz_expand(table, depth);
    for (int j = 1; j <= depth; ++j) {
      if (!wz.w[static_cast<std::size_t>(j)].is_zero()) w.x[-j] = wz.w[static_cast<std::size_t>(j)];
    }
  }
  Gl2Series one_plus_w = w;
  one_plus_w.s[0] = DiffPoly(1);
  Gl2Series minus_w;
  for (const auto& [e, v] : w.x) minus_w.x[e] = -v;
  // (1 + W)^{-1} as the geometric series in -W; W starts at lambda^{-1}.
  Gl2Series inverse;
  inverse.s[0] = DiffPoly(1);
  Gl2Series power = inverse;
  for (int r = 1; r <= depth; ++r) {
    power = gl2_mul(power, minus_w, depth);
    for (const auto& [e, v] : power.s) {
      DiffPoly& slot = inverse.s[e];
      slot += v;
    }
    for (const auto& [e, v] : power.x) inverse.x[e] += v;
  }
  Gl2Series sigma3;
  sigma3.x[0] = Sl2Poly::sigma3();
  const Gl2Series r = gl2_mul(gl2_mul(one_plus_w, sigma3, depth), inverse, depth);
  for (int j = 0; j <= depth; ++j) {
    const std::string label = "lambda^-" + std::to_string(j);
    auto sit = r.s.find(-j);
    report.expect_zero(label + " trace", sit == r.s.end() ? DiffPoly() : sit->second);
    auto xit = r.x.find(-j);
    const Sl2Poly got = xit == r.x.end() ? Sl2Poly{} : xit->second;
    const Sl2Poly want = table.ell(j);
    report.expect_zero(label + " sigma3", got.a - want.a);
    report.expect_zero(label + " sigma+", got.bp - want.bp);
    report.expect_zero(label + " sigma-", got.cm - want.cm);
  }
  return report;
}

}  // namespace fnr
