#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "doctest.h"

#include "fnr/diffpoly.hpp"
#include "fnr/loopalg.hpp"
#include "fnr/report.hpp"
#include "fnr/text.hpp"

namespace fnr::test {

inline DiffPoly P(std::string_view text) { return parse_poly(text); }

inline std::string show(const DiffPoly& p) { return to_text(p); }

inline std::string failures_of(const Report& r) {
  std::string out;
  for (const auto& item : r.items) {
    if (!item.passed) out += item.label + ": " + to_text(item.residual) + " " + item.detail + "\n";
  }
  return out;
}

#define CHECK_POLY(actual, expected_text) CHECK(::fnr::test::show(actual) == ::fnr::test::show(::fnr::test::P(expected_text)))
#define CHECK_REPORT(report)                                    \
  do {                                                          \
    const ::fnr::Report& r_ = (report);                         \
    INFO(::fnr::test::failures_of(r_));                         \
    CHECK(r_.passed());                                         \
    CHECK(!r_.items.empty());                                   \
  } while (0)

// Random polynomial in b1..b<fields>, c1..c<fields> with derivatives up to max_dorder.
inline DiffPoly random_poly(std::mt19937& rng, int fields, int max_dorder, int max_degree, int terms) {
  std::uniform_int_distribution<int> kind(0, 1), index(1, fields), dorder(0, max_dorder), deg(0, max_degree);
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  DiffPoly out;
  for (int t = 0; t < terms; ++t) {
    DiffPoly term(Rational(num(rng), den(rng)));
    const int d = deg(rng);
    for (int i = 0; i < d; ++i) {
      const FieldVar v = kind(rng) == 0 ? field_b(index(rng), dorder(rng)) : field_c(index(rng), dorder(rng));
      term *= DiffPoly(v);
    }
    out += term;
  }
  return out;
}

inline Sl2Poly random_sl2(std::mt19937& rng, int fields) {
  return {random_poly(rng, fields, 1, 2, 3), random_poly(rng, fields, 1, 2, 3), random_poly(rng, fields, 1, 2, 3)};
}

// Laurent polynomial with exponents in [lo, hi], known through -depth.
inline LaurentMatrix random_laurent(std::mt19937& rng, int lo, int hi, int depth = LaurentMatrix::kExact) {
  LaurentMatrix out(depth);
  for (int e = lo; e <= hi; ++e) out.set(e, random_sl2(rng, 2));
  return out;
}

}  // namespace fnr::test
