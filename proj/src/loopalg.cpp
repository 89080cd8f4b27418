#include "fnr/loopalg.hpp"

#include <algorithm>

#include "fnr/errors.hpp"

namespace fnr {

Sl2Poly& Sl2Poly::operator+=(const Sl2Poly& o) {
  a += o.a;
  bp += o.bp;
  cm += o.cm;
  return *this;
}

Sl2Poly& Sl2Poly::operator-=(const Sl2Poly& o) {
  a -= o.a;
  bp -= o.bp;
  cm -= o.cm;
  return *this;
}

Sl2Poly sl2_commutator(const Sl2Poly& x, const Sl2Poly& y) {
  Sl2Poly out;
  out.a = x.bp * y.cm - x.cm * y.bp;
  out.bp = Rational(2) * (x.a * y.bp - y.a * x.bp);
  out.cm = Rational(-2) * (x.a * y.cm - y.a * x.cm);
  return out;
}

DiffPoly sl2_trace(const Sl2Poly& x, const Sl2Poly& y) {
  PolyAccumulator acc;
  acc.add_product(x.a, y.a, Rational(2));
  acc.add_product(x.bp, y.cm);
  acc.add_product(x.cm, y.bp);
  return acc.finish();
}

Sl2Poly sl2_map(const Sl2Poly& x, const std::function<DiffPoly(const DiffPoly&)>& f) {
  return {f(x.a), f(x.bp), f(x.cm)};
}

// ---------------------------------------------------------------- LaurentMatrix

LaurentMatrix LaurentMatrix::single(int exponent, Sl2Poly coeff, int depth) {
  LaurentMatrix out(depth);
  out.set(exponent, std::move(coeff));
  return out;
}

int LaurentMatrix::effective_top() const {
  if (exact()) return top();
  return std::max(top(), -depth_ - 1);
}

Sl2Poly LaurentMatrix::at(int exponent) const {
  if (!known(exponent)) {
    throw DepthExhausted("coefficient of lambda^" + std::to_string(exponent) + " is below the known depth " +
                         std::to_string(depth_));
  }
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? Sl2Poly{} : it->second;
}

void LaurentMatrix::set(int exponent, Sl2Poly coeff) {
  if (!known(exponent)) return;
  if (coeff.is_zero()) {
    coeffs_.erase(exponent);
  } else {
    coeffs_[exponent] = std::move(coeff);
  }
}

LaurentMatrix LaurentMatrix::truncated(int depth) const {
  LaurentMatrix out(std::min(depth_, clamp_depth(depth)));
  for (const auto& [e, c] : coeffs_) out.set(e, c);
  return out;
}

LaurentMatrix LaurentMatrix::operator-() const {
  LaurentMatrix out(depth_);
  for (const auto& [e, c] : coeffs_) out.coeffs_[e] = -c;
  return out;
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& o) {
  depth_ = std::min(depth_, o.depth_);
  for (const auto& [e, c] : o.coeffs_) {
    if (!known(e)) continue;
    set(e, at(e) + c);
  }
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    it = known(it->first) ? std::next(it) : coeffs_.erase(it);
  }
  return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& o) { return *this += -o; }

int product_depth(const LaurentMatrix& x, const LaurentMatrix& y) {
  if (x.coeffs().empty() && x.exact()) return LaurentMatrix::kExact;
  if (y.coeffs().empty() && y.exact()) return LaurentMatrix::kExact;
  // A product coefficient at e is known iff e - top(Y) >= -depth(X) and e - top(X) >= -depth(Y).
  const long from_x = x.exact() ? LaurentMatrix::kExact : static_cast<long>(x.depth()) - y.effective_top();
  const long from_y = y.exact() ? LaurentMatrix::kExact : static_cast<long>(y.depth()) - x.effective_top();
  return LaurentMatrix::clamp_depth(std::min(from_x, from_y));
}

LaurentMatrix lm_commutator(const LaurentMatrix& x, const LaurentMatrix& y) {
  LaurentMatrix out(product_depth(x, y));
  std::map<int, Sl2Poly> acc;
  for (const auto& [ex, cx] : x.coeffs()) {
    for (const auto& [ey, cy] : y.coeffs()) {
      const int e = ex + ey;
      if (!out.known(e)) continue;
      acc[e] += sl2_commutator(cx, cy);
    }
  }
  for (auto& [e, c] : acc) out.set(e, std::move(c));
  return out;
}

LaurentMatrix lm_shift(const LaurentMatrix& x, int k) {
  LaurentMatrix out(x.exact() ? LaurentMatrix::kExact : x.depth() - k);
  for (const auto& [e, c] : x.coeffs()) out.set(e + k, c);
  return out;
}

LaurentMatrix lm_project(const LaurentMatrix& x, Projection which) {
  const bool plus_exact = x.depth() >= 0;
  switch (which) {
    case Projection::plus: {
      LaurentMatrix out(plus_exact ? LaurentMatrix::kExact : x.depth());
      for (const auto& [e, c] : x.coeffs()) {
        if (e >= 0) out.set(e, c);
      }
      return out;
    }
    case Projection::minus: {
      LaurentMatrix out(x.depth());
      for (const auto& [e, c] : x.coeffs()) {
        if (e < 0) out.set(e, c);
      }
      return out;
    }
    case Projection::R: {
      LaurentMatrix out(x.depth());
      for (const auto& [e, c] : x.coeffs()) out.set(e, e >= 0 ? c : -c);
      return out;
    }
  }
  throw InvalidArgument("unknown projection");
}

LaurentMatrix lm_map(const LaurentMatrix& x, const std::function<DiffPoly(const DiffPoly&)>& f) {
  LaurentMatrix out(x.depth());
  for (const auto& [e, c] : x.coeffs()) out.set(e, sl2_map(c, f));
  return out;
}

DiffPoly trace_coefficient(const LaurentMatrix& x, const LaurentMatrix& y, int e) {
  const int depth = product_depth(x, y);
  if (e < -depth) {
    throw DepthExhausted("trace coefficient of lambda^" + std::to_string(e) + " is below the known depth " +
                         std::to_string(depth));
  }
  PolyAccumulator acc;
  for (const auto& [ex, cx] : x.coeffs()) {
    auto it = y.coeffs().find(e - ex);
    if (it == y.coeffs().end()) continue;
    acc.add(sl2_trace(cx, it->second));
  }
  return acc.finish();
}

DiffPoly trace_pair(const LaurentMatrix& x, const LaurentMatrix& y, int j) {
  return trace_coefficient(x, y, -1 - j);
}

// ---------------------------------------------------------------- output

nlohmann::json to_json(const LaurentMatrix& x, const SymbolTable* symbols) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (auto it = x.coeffs().rbegin(); it != x.coeffs().rend(); ++it) {
    coeffs[std::to_string(it->first)] = {{"a", to_json(it->second.a, symbols)},
                                         {"bp", to_json(it->second.bp, symbols)},
                                         {"cm", to_json(it->second.cm, symbols)}};
  }
  nlohmann::json out;
  out["depth"] = x.exact() ? nlohmann::json(nullptr) : nlohmann::json(x.depth());
  out["coeffs"] = std::move(coeffs);
  return out;
}

std::string to_text(const LaurentMatrix& x, const SymbolTable* symbols) {
  std::string out;
  for (auto it = x.coeffs().rbegin(); it != x.coeffs().rend(); ++it) {
    const std::string label = "lambda^" + std::to_string(it->first);
    const Sl2Poly& c = it->second;
    if (!c.a.is_zero()) out += label + " a: " + to_text(c.a, symbols) + "\n";
    if (!c.bp.is_zero()) out += label + " b: " + to_text(c.bp, symbols) + "\n";
    if (!c.cm.is_zero()) out += label + " c: " + to_text(c.cm, symbols) + "\n";
  }
  if (!x.exact()) out += "known to lambda^" + std::to_string(-x.depth()) + "\n";
  return out;
}

namespace {

// Entry polynomial in lambda, highest power first. `pick` selects the component, `sign` flips it.
std::string latex_entry(const LaurentMatrix& x, DiffPoly Sl2Poly::*pick, int sign, int time_index,
                        const SymbolTable* symbols) {
  std::string out;
  for (auto it = x.coeffs().rbegin(); it != x.coeffs().rend(); ++it) {
    DiffPoly p = it->second.*pick;
    if (p.is_zero()) continue;
    if (sign < 0) p = -p;
    const int e = it->first;
    std::string power;
    if (e == 1) {
      power = "\\lambda";
    } else if (e != 0) {
      power = "\\lambda^{" + std::to_string(e) + "}";
    }
    std::string body = to_latex(p, time_index, symbols);
    bool negative = false;
    if (p.size() == 1 && p.terms()[0].second.sign() < 0) {
      negative = true;
      body = to_latex(-p, time_index, symbols);
    }
    if (!power.empty()) {
      if (p.size() > 1) {
        body = "\\left(" + body + "\\right)" + power;
      } else if (body == "1") {
        body = power;
      } else {
        body += " " + power;
      }
    }
    if (negative) body = "-" + body;
    if (out.empty()) {
      out = body;
    } else if (body[0] == '-') {
      out += " - " + body.substr(1);
    } else {
      out += " + " + body;
    }
  }
  if (!x.exact()) out += (out.empty() ? "" : " + ") + std::string("O(\\lambda^{") + std::to_string(-x.depth() - 1) + "})";
  return out.empty() ? "0" : out;
}

}  // namespace

std::string to_latex_matrix(const LaurentMatrix& x, int time_index, const SymbolTable* symbols) {
  return "\\begin{pmatrix} " + latex_entry(x, &Sl2Poly::a, 1, time_index, symbols) + " & " +
         latex_entry(x, &Sl2Poly::bp, 1, time_index, symbols) + " \\\\ " +
         latex_entry(x, &Sl2Poly::cm, 1, time_index, symbols) + " & " +
         latex_entry(x, &Sl2Poly::a, -1, time_index, symbols) + " \\end{pmatrix}";
}

}  // namespace fnr
