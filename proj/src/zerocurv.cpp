#include "fnr/zerocurv.hpp"

#include <algorithm>
#include <string>

#include "fnr/errors.hpp"
#include "fnr/text.hpp"

namespace fnr {

std::map<FieldVar, DiffPoly> PdeSystem::all_rules() const {
  std::map<FieldVar, DiffPoly> out = auxiliary;
  for (const auto& [u, rhs] : evolution) out[u] = rhs;
  return out;
}

DiffPoly chain_rule(const DiffPoly& p, const std::map<FieldVar, DiffPoly>& rules) {
  return apply_derivation(p, [&](FieldVar v) -> DiffPoly {
    if (v.is_constant()) return DiffPoly();
    auto it = rules.find(v.base());
    if (it == rules.end()) throw InvalidArgument("no evolution rule for " + to_text(v.base()));
    return dp_derive(it->second, v.dorder);
  });
}

namespace {

LaurentMatrix derive_lm(const LaurentMatrix& x) {
  return lm_map(x, [](const DiffPoly& p) { return dp_derive(p); });
}

LaurentMatrix chain_lm(const LaurentMatrix& x, const std::map<FieldVar, DiffPoly>& rules) {
  return lm_map(x, [&](const DiffPoly& p) { return chain_rule(p, rules); });
}

// One item per nonzero component, or a single passing item.
void expect_lm_zero(Report& report, const std::string& label, const LaurentMatrix& x) {
  bool any = false;
  for (auto it = x.coeffs().rbegin(); it != x.coeffs().rend(); ++it) {
    const std::string at = label + " lambda^" + std::to_string(it->first);
    if (!it->second.a.is_zero()) report.expect_zero(at + " sigma3", it->second.a);
    if (!it->second.bp.is_zero()) report.expect_zero(at + " sigma+", it->second.bp);
    if (!it->second.cm.is_zero()) report.expect_zero(at + " sigma-", it->second.cm);
    any = true;
  }
  if (!any) report.add(label, true);
}

}  // namespace

PdeSystem zero_curvature(const PsiTable& table, int n) {
  if (n < 1) throw InvalidArgument("partner time n must be >= 1");
  const int k = table.k();
  if (table.depth() < std::max(n, k)) {
    throw DepthExhausted("zero curvature needs depth >= " + std::to_string(std::max(n, k)));
  }
  const LaurentMatrix vk = lax_matrix(table, k);
  const LaurentMatrix vn = lax_matrix(table, n);
  // d_n V^(k) = d_k V^(n) - [V^(k), V^(n)]; the left side lives in exponents 0..k-1.
  const LaurentMatrix t = derive_lm(vn) - lm_commutator(vk, vn);
  for (const auto& [e, c] : t.coeffs()) {
    if (e >= k) {
      throw ResidualNonZero("zero-curvature coefficient of lambda^" + std::to_string(e) + " does not vanish");
    }
  }
  PdeSystem sys;
  sys.k = k;
  sys.n = n;
  for (int m = 1; m <= k; ++m) {
    const Sl2Poly c = t.at(k - m);
    auto& target = (n < k && m <= k - n) ? sys.auxiliary : sys.evolution;
    target[field_b(m)] = c.bp;
    target[field_c(m)] = c.cm;
  }
  const auto rules = sys.all_rules();
  for (int m = 1; m <= k; ++m) {
    const DiffPoly residual = chain_rule(table.row(m).a, rules) - t.at(k - m).a;
    if (!residual.is_zero()) {
      throw ResidualNonZero("diagonal zero-curvature coefficient of lambda^" + std::to_string(k - m) +
                            " is inconsistent: " + to_text(residual));
    }
  }
  return sys;
}

Report strong_zc_check(const PsiTable& table, int n, int m) {
  Report report{"strong_zc k=" + std::to_string(table.k()) + " n=" + std::to_string(n) + " m=" + std::to_string(m),
                {}};
  const auto rn = zero_curvature(table, n).all_rules();
  const auto rm = zero_curvature(table, m).all_rules();
  const LaurentMatrix vn = lax_matrix(table, n);
  const LaurentMatrix vm = lax_matrix(table, m);
  const LaurentMatrix expr = chain_lm(vm, rn) - chain_lm(vn, rm) + lm_commutator(vm, vn);
  expect_lm_zero(report, "curvature", expr);
  return report;
}

Report dual_equivalence(int n, int k, int depth, PdeSystem* common) {
  if (n < 1 || n >= k || k > depth) throw InvalidArgument("duality needs 1 <= n < k <= depth");
  Report report{"duality n=" + std::to_string(n) + " k=" + std::to_string(k), {}};
  const PsiTable psi_n = build_psi(n, depth);
  const PsiTable psi_k = build_psi(k, depth);
  const PdeSystem a = zero_curvature(psi_n, k);
  const PdeSystem b = zero_curvature(psi_k, n);

  // Express every t_k field through the t_n fields: S[u_p] = u_p for p <= n, the
  // defining relations d_n u_p = coef * u_{p+n} + rest give the others.
  std::map<FieldVar, DiffPoly> s;
  for (int p = 1; p <= n; ++p) {
    s[field_b(p)] = DiffPoly(field_b(p));
    s[field_c(p)] = DiffPoly(field_c(p));
  }
  auto known = [&](const DiffPoly& p) {
    for (const auto& g : p.generators()) {
      if (s.count(g) == 0) return false;
    }
    return true;
  };
  std::vector<FieldVar> pending;
  for (const auto& [u, rhs] : b.auxiliary) pending.push_back(u);
  std::sort(pending.begin(), pending.end(), [](FieldVar x, FieldVar y) {
    return x.index != y.index ? x.index < y.index : x.kind < y.kind;
  });
  for (int round = 0; round <= depth && !pending.empty(); ++round) {
    std::vector<FieldVar> later;
    for (const FieldVar u : pending) {
      const FieldVar target{u.kind, static_cast<std::uint16_t>(u.index + n), 0};
      const auto split = split_linear(b.auxiliary.at(u), target);
      if (!split || !split->first.is_constant() || split->first.is_zero()) {
        throw EliminationFailure("relation for d_n " + to_text(u) + " is not linear in " + to_text(target));
      }
      const DiffPoly& rest = split->second;
      if (!rest.derivative_free() || s.count(u) == 0 || !known(rest)) {
        later.push_back(u);
        continue;
      }
      const Rational coef = split->first.constant_term();
      s[target] = (Rational(1) / coef) * (dp_derive(s.at(u)) - dp_substitute(rest, s));
    }
    if (later.size() == pending.size()) break;
    pending = std::move(later);
  }
  if (!pending.empty()) {
    throw EliminationFailure("auxiliary elimination did not terminate; " + std::to_string(pending.size()) +
                             " fields left");
  }
  for (int j = n + 1; j <= k; ++j) {
    report.expect_zero("S[b" + std::to_string(j) + "] vs Psi_n", s.at(field_b(j)) - psi_n.row(j).b);
    report.expect_zero("S[c" + std::to_string(j) + "] vs Psi_n", s.at(field_c(j)) - psi_n.row(j).c);
  }

  // The evolution rule of u_{k-n+p} is d_k u_p + derivative-free terms.
  PdeSystem matched;
  matched.k = n;
  matched.n = k;
  for (int p = 1; p <= n; ++p) {
    for (const FieldVar up : {field_b(p), field_c(p)}) {
      const FieldVar carrier{up.kind, static_cast<std::uint16_t>(k - n + p), 0};
      const auto split = split_linear(b.evolution.at(carrier), up.derived(1));
      if (!split || !split->first.is_constant() || split->first.is_zero() || !split->second.derivative_free()) {
        throw EliminationFailure("evolution of " + to_text(carrier) + " does not isolate d_k " + to_text(up));
      }
      const Rational coef = split->first.constant_term();
      DiffPoly rhs = (Rational(1) / coef) * (dp_derive(s.at(carrier)) - dp_substitute(split->second, s));
      report.expect_zero("d_" + std::to_string(k) + " " + to_text(up), rhs - a.evolution.at(up));
      matched.evolution[up] = std::move(rhs);
    }
  }
  if (common != nullptr) *common = std::move(matched);
  return report;
}

Report generating_recurrence_check(const PsiTable& table, int nmax) {
  Report report{"generating_recurrence k=" + std::to_string(table.k()), {}};
  const LaurentMatrix series = psi_series(table);
  for (int n = 1; n <= nmax; ++n) {
    const LaurentMatrix v = lax_matrix(table, n);
    const LaurentMatrix step = lm_shift(lax_matrix(table, n - 1), 1) + LaurentMatrix::single(0, table.ell(n));
    expect_lm_zero(report, "n=" + std::to_string(n) + " recurrence", v - step);
    expect_lm_zero(report, "n=" + std::to_string(n) + " constant term",
                   LaurentMatrix::single(0, v.at(0)) - LaurentMatrix::single(0, table.ell(n)));
    expect_lm_zero(report, "n=" + std::to_string(n) + " projection", v - lm_project(lm_shift(series, n), Projection::plus));
  }
  return report;
}

Report commuting_flows_check(const PsiTable& table, int n, int m) {
  Report report{"commuting_flows k=" + std::to_string(table.k()) + " n=" + std::to_string(n) +
                    " m=" + std::to_string(m),
                {}};
  const auto rn = zero_curvature(table, n).all_rules();
  const auto rm = zero_curvature(table, m).all_rules();
  for (const auto& [u, rhs] : rn) {
    report.expect_zero(to_text(u), chain_rule(rhs, rm) - chain_rule(rm.at(u), rn));
  }
  return report;
}

PdeSystem substitute(const PdeSystem& system, const std::map<FieldVar, DiffPoly>& rules) {
  PdeSystem out = system;
  auto apply = [&](std::map<FieldVar, DiffPoly>& table) {
    for (auto& [u, rhs] : table) {
      rhs = dp_substitute(rhs, rules);
      auto lhs = system.lhs.find(u);
      if (lhs != system.lhs.end()) {
        out.lhs[u] = dp_substitute(lhs->second, rules);
      } else if (auto r = rules.find(u); r != rules.end()) {
        out.lhs[u] = r->second;
      }
    }
  };
  apply(out.evolution);
  apply(out.auxiliary);
  return out;
}

}  // namespace fnr
