#include "fnr/diffpoly.hpp"

#include <algorithm>
#include <string>

#include "fnr/errors.hpp"

namespace fnr {

FieldVar FieldVar::derived(int times) const {
  if (is_constant()) throw InvalidArgument("constants have no derivatives");
  const int order = dorder + times;
  if (order < 0 || order > 0xffff) throw InvalidArgument("derivative order out of range");
  return FieldVar{kind, index, static_cast<std::uint16_t>(order)};
}

namespace {

FieldVar make_field(FieldKind kind, int index, int dorder) {
  if (index < 1 || index > FieldVar::kMaxIndex) {
    throw InvalidArgument("field index " + std::to_string(index) + " out of range");
  }
  if (dorder < 0 || dorder > 0xffff) throw InvalidArgument("derivative order out of range");
  return FieldVar{kind, static_cast<std::uint16_t>(index), static_cast<std::uint16_t>(dorder)};
}

}  // namespace

FieldVar field_b(int index, int dorder) { return make_field(FieldKind::b, index, dorder); }
FieldVar field_c(int index, int dorder) { return make_field(FieldKind::c, index, dorder); }

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(FieldVar v, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) m.factors_.push_back({v.key(), exp});
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.var < b.var; });
  Monomial m;
  for (const auto& f : factors) {
    if (f.exp == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().var == f.var) {
      m.factors_.back().exp += f.exp;
    } else {
      m.factors_.push_back(f);
    }
  }
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.exp;
  return d;
}

std::uint32_t Monomial::exponent_of(FieldVar v) const {
  const auto key = v.key();
  auto it = std::lower_bound(factors_.begin(), factors_.end(), key,
                             [](const Factor& f, std::uint32_t k) { return f.var < k; });
  return it != factors_.end() && it->var == key ? it->exp : 0;
}

int Monomial::max_dorder() const {
  int best = -1;
  for (const auto& f : factors_) best = std::max(best, static_cast<int>(f.var & 0xffff));
  return best;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->var < b->var) {
      out.factors_.push_back(*a++);
    } else if (b->var < a->var) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.push_back({a->var, a->exp + b->exp});
      ++a;
      ++b;
    }
  }
  out.factors_.insert(out.factors_.end(), a, factors_.end());
  out.factors_.insert(out.factors_.end(), b, other.factors_.end());
  return out;
}

Monomial Monomial::divided_by(FieldVar v, std::uint32_t exp) const {
  Monomial out = *this;
  const auto key = v.key();
  for (auto it = out.factors_.begin(); it != out.factors_.end(); ++it) {
    if (it->var != key) continue;
    if (it->exp < exp) break;
    it->exp -= exp;
    if (it->exp == 0) out.factors_.erase(it);
    return out;
  }
  throw InvalidArgument("monomial is not divisible by the requested power");
}

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& f : factors_) {
    h ^= (static_cast<std::size_t>(f.var) << 8) ^ f.exp;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool graded_less(const Monomial& a, const Monomial& b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da < db;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint32_t ra = fa.empty() ? 0 : fa[0].exp;
  std::uint32_t rb = fb.empty() ? 0 : fb[0].exp;
  // Walk both expanded factor sequences in lockstep.
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].var != fb[j].var) return fa[i].var < fb[j].var;
    const auto step = std::min(ra, rb);
    ra -= step;
    rb -= step;
    if (ra == 0 && ++i < fa.size()) ra = fa[i].exp;
    if (rb == 0 && ++j < fb.size()) rb = fb[j].exp;
  }
  return false;
}

// ---------------------------------------------------------------- DiffPoly

DiffPoly::DiffPoly(const Rational& constant) {
  if (!constant.is_zero()) terms_.emplace_back(Monomial(), constant);
}

DiffPoly::DiffPoly(FieldVar v) { terms_.emplace_back(Monomial::of(v), Rational(1)); }

DiffPoly DiffPoly::from_terms(std::vector<Term> terms) {
  PolyAccumulator acc;
  for (auto& [m, c] : terms) acc.add(std::move(m), c);
  return acc.finish();
}

bool DiffPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_unit());
}

Rational DiffPoly::constant_term() const {
  if (!terms_.empty() && terms_[0].first.is_unit()) return terms_[0].second;
  return Rational(0);
}

Rational DiffPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return graded_less(t.first, key); });
  if (it != terms_.end() && it->first == m) return it->second;
  return Rational(0);
}

std::set<FieldVar> DiffPoly::variables() const {
  std::set<FieldVar> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) out.insert(FieldVar::from_key(f.var));
  }
  return out;
}

std::set<FieldVar> DiffPoly::generators() const {
  std::set<FieldVar> out;
  for (const auto& v : variables()) out.insert(v.base());
  return out;
}

int DiffPoly::max_dorder() const {
  int best = -1;
  for (const auto& [m, c] : terms_) best = std::max(best, m.max_dorder());
  return best;
}

std::uint32_t DiffPoly::degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

namespace {

// Merge of two canonical term lists; `sign` is +1 or -1 for the right operand.
std::vector<DiffPoly::Term> merge_terms(const std::vector<DiffPoly::Term>& a, const std::vector<DiffPoly::Term>& b,
                                        int sign) {
  std::vector<DiffPoly::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  auto push_b = [&](const DiffPoly::Term& t) {
    out.emplace_back(t.first, sign > 0 ? t.second : -t.second);
  };
  while (i != a.end() && j != b.end()) {
    if (graded_less(i->first, j->first)) {
      out.push_back(*i++);
    } else if (graded_less(j->first, i->first)) {
      push_b(*j++);
    } else {
      Rational c = sign > 0 ? i->second + j->second : i->second - j->second;
      if (!c.is_zero()) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  for (; i != a.end(); ++i) out.push_back(*i);
  for (; j != b.end(); ++j) push_b(*j);
  return out;
}

}  // namespace

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, 1);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, -1);
  return *this;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& o) {
  *this = *this * o;
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  if (a.is_zero() || b.is_zero()) return DiffPoly();
  PolyAccumulator acc;
  acc.add_product(a, b);
  return acc.finish();
}

DiffPoly operator*(const Rational& s, const DiffPoly& p) {
  if (s.is_zero()) return DiffPoly();
  DiffPoly out = p;
  if (s.is_one()) return out;
  for (auto& [m, c] : out.terms_) c *= s;
  return out;
}

// ---------------------------------------------------------------- PolyAccumulator

void PolyAccumulator::add(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void PolyAccumulator::add(Monomial&& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) it->second += c;
}

void PolyAccumulator::add(const DiffPoly& p, const Rational& scale) {
  if (scale.is_zero()) return;
  for (const auto& [m, c] : p.terms()) add(m, c * scale);
}

void PolyAccumulator::add_product(const DiffPoly& a, const DiffPoly& b, const Rational& scale) {
  if (scale.is_zero()) return;
  for (const auto& [ma, ca] : a.terms()) {
    const Rational cs = ca * scale;
    for (const auto& [mb, cb] : b.terms()) add(ma * mb, cs * cb);
  }
}

DiffPoly PolyAccumulator::finish() {
  std::vector<DiffPoly::Term> terms;
  terms.reserve(terms_.size());
  for (auto& [m, c] : terms_) {
    if (!c.is_zero()) terms.emplace_back(m, std::move(c));
  }
  terms_.clear();
  std::sort(terms.begin(), terms.end(),
            [](const DiffPoly::Term& x, const DiffPoly::Term& y) { return graded_less(x.first, y.first); });
  DiffPoly out;
  out.terms_ = std::move(terms);
  return out;
}

// ---------------------------------------------------------------- ring operations

DiffPoly dp_arith(const DiffPoly& lhs, const DiffPoly& rhs, ArithOp op) {
  return op == ArithOp::add ? lhs + rhs : lhs * rhs;
}

DiffPoly dp_scale(const DiffPoly& p, const Rational& s) { return s * p; }

DiffPoly dp_pow(const DiffPoly& p, std::uint32_t exp) {
  DiffPoly result(1);
  DiffPoly base = p;
  while (exp > 0) {
    if (exp & 1U) result *= base;
    exp >>= 1U;
    if (exp > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------- derivations

namespace {

bool is_derivable(std::uint32_t key) { return FieldVar::from_key(key).kind != FieldKind::constant; }

// One application of the distinguished derivation.
DiffPoly derive_once(const DiffPoly& p) {
  PolyAccumulator acc;
  std::vector<Monomial::Factor> buf;
  for (const auto& [m, c] : p.terms()) {
    const auto& fs = m.factors();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (!is_derivable(fs[i].var)) continue;
      if ((fs[i].var & 0xffff) == 0xffff) throw InvalidArgument("derivative order out of range");
      buf.assign(fs.begin(), fs.end());
      buf[i].exp -= 1;
      buf.push_back({fs[i].var + 1, 1});
      acc.add(Monomial::from_factors(buf), c * Rational(static_cast<long>(fs[i].exp)));
    }
  }
  return acc.finish();
}

}  // namespace

DiffPoly dp_derive(const DiffPoly& p, int times) {
  if (times < 0) throw InvalidArgument("negative derivative count");
  DiffPoly out = p;
  for (int i = 0; i < times && !out.is_zero(); ++i) out = derive_once(out);
  return out;
}

DiffPoly dp_substitute(const DiffPoly& p, const std::map<FieldVar, DiffPoly>& rules) {
  for (const auto& [v, rule] : rules) {
    if (v.dorder != 0) throw InvalidArgument("substitution rules must target underived generators");
  }
  if (rules.empty()) return p;
  // Derivatives of each rule, computed lazily and shared across terms.
  std::map<FieldVar, std::vector<DiffPoly>> derived;
  auto image = [&](FieldVar v) -> const DiffPoly& {
    auto& chain = derived[v.base()];
    if (chain.empty()) chain.push_back(rules.at(v.base()));
    while (chain.size() <= v.dorder) chain.push_back(dp_derive(chain.back()));
    return chain[v.dorder];
  };
  PolyAccumulator acc;
  for (const auto& [m, c] : p.terms()) {
    DiffPoly factor(c);
    std::vector<Monomial::Factor> kept;
    for (const auto& f : m.factors()) {
      const FieldVar v = FieldVar::from_key(f.var);
      if (rules.count(v.base()) == 0) {
        kept.push_back(f);
        continue;
      }
      factor *= dp_pow(image(v), f.exp);
      if (factor.is_zero()) break;
    }
    if (factor.is_zero()) continue;
    const Monomial rest = Monomial::from_factors(std::move(kept));
    for (const auto& [fm, fc] : factor.terms()) acc.add(fm * rest, fc);
  }
  return acc.finish();
}

DiffPoly partial(const DiffPoly& p, FieldVar v) {
  PolyAccumulator acc;
  for (const auto& [m, c] : p.terms()) {
    const auto e = m.exponent_of(v);
    if (e == 0) continue;
    acc.add(m.divided_by(v), c * Rational(static_cast<long>(e)));
  }
  return acc.finish();
}

DiffPoly apply_derivation(const DiffPoly& p, const std::function<DiffPoly(FieldVar)>& image) {
  std::map<std::uint32_t, DiffPoly> cache;
  PolyAccumulator acc;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& f : m.factors()) {
      auto it = cache.find(f.var);
      if (it == cache.end()) it = cache.emplace(f.var, image(FieldVar::from_key(f.var))).first;
      if (it->second.is_zero()) continue;
      const Monomial rest = m.divided_by(FieldVar::from_key(f.var));
      const Rational coef = c * Rational(static_cast<long>(f.exp));
      for (const auto& [im, ic] : it->second.terms()) acc.add(im * rest, coef * ic);
    }
  }
  return acc.finish();
}

// ---------------------------------------------------------------- variational calculus

DiffPoly euler_derivative(const DiffPoly& p, FieldVar target) {
  const FieldVar base = target.base();
  if (base.is_constant()) return DiffPoly();
  int top = -1;
  for (const auto& v : p.variables()) {
    if (v.base() == base) top = std::max(top, static_cast<int>(v.dorder));
  }
  DiffPoly out;
  for (int l = 0; l <= top; ++l) {
    DiffPoly part = dp_derive(partial(p, base.derived(l)), l);
    if (l % 2 == 0) {
      out += part;
    } else {
      out -= part;
    }
  }
  return out;
}

namespace {

bool euler_closed(const DiffPoly& p) {
  for (const auto& g : p.generators()) {
    if (g.is_constant()) continue;
    if (!euler_derivative(p, g).is_zero()) return false;
  }
  return true;
}

}  // namespace

DiffPoly formal_integrate(const DiffPoly& p) {
  if (p.is_zero()) return DiffPoly();
  if (!p.constant_term().is_zero() || !euler_closed(p)) {
    throw NotATotalDerivative("polynomial is not a total derivative");
  }
  DiffPoly rest = p;
  PolyAccumulator potential;
  while (!rest.is_zero()) {
    const int top = rest.max_dorder();
    if (top <= 0) throw NotATotalDerivative("derivative-free remainder after integration");
    // rest = sum_u u^(top) F_u + lower; integrate F_u along the order top-1 variables.
    PolyAccumulator step;
    for (const auto& [m, c] : rest.terms()) {
      std::uint32_t top_count = 0;
      std::uint32_t top_var = 0;
      for (const auto& f : m.factors()) {
        if (static_cast<int>(f.var & 0xffff) == top && is_derivable(f.var)) {
          top_count += f.exp;
          top_var = f.var;
        }
      }
      if (top_count == 0) continue;
      if (top_count > 1) throw NotATotalDerivative("nonlinear in the highest derivatives");
      const Monomial f_u = m.divided_by(FieldVar::from_key(top_var));
      std::uint32_t lifted = 0;
      for (const auto& f : f_u.factors()) {
        if (static_cast<int>(f.var & 0xffff) == top - 1 && is_derivable(f.var)) lifted += f.exp;
      }
      const Monomial q = f_u * Monomial::of(FieldVar::from_key(top_var - 1));
      step.add(q, c / Rational(static_cast<long>(lifted + 1)));
    }
    DiffPoly q = step.finish();
    DiffPoly next = rest - dp_derive(q);
    if (next.max_dorder() >= top && !next.is_zero()) {
      throw NotATotalDerivative("highest-order part is not closed");
    }
    potential.add(q);
    rest = std::move(next);
  }
  return potential.finish();
}

bool equal_mod_total_derivative(const DiffPoly& p, const DiffPoly& q) { return euler_closed(p - q); }

std::optional<std::pair<DiffPoly, DiffPoly>> split_linear(const DiffPoly& p, FieldVar v) {
  PolyAccumulator coeff;
  PolyAccumulator rest;
  for (const auto& [m, c] : p.terms()) {
    const auto e = m.exponent_of(v);
    if (e > 1) return std::nullopt;
    if (e == 1) {
      coeff.add(m.divided_by(v), c);
    } else {
      rest.add(m, c);
    }
  }
  DiffPoly cf = coeff.finish();
  if (cf.variables().count(v) != 0) return std::nullopt;
  return std::make_pair(std::move(cf), rest.finish());
}

}  // namespace fnr
