#include <array>

#include "support.hpp"

#include "fnr/errors.hpp"
#include "fnr/psi.hpp"

using namespace fnr;
using fnr::test::P;

namespace {

struct Row {
  int j;
  const char* a;
  const char* b;
  const char* c;
};

// Generated by tests/oracle/fnr_oracle.py (explicit 2x2 matrices, sympy.solve).
constexpr std::array kOracleK1 = {
    Row{1, "0", "b1", "c1"},
    Row{2, "-1/2*b1*c1", "1/2*b1'", "-1/2*c1'"},
    Row{3, "1/4*b1*c1' - 1/4*b1'*c1", "1/4*b1'' - 1/2*b1^2*c1", "1/4*c1'' - 1/2*b1*c1^2"},
    Row{4, "-1/8*b1*c1'' + 1/8*b1'*c1' - 1/8*b1''*c1 + 3/8*b1^2*c1^2", "1/8*b1''' - 3/4*b1*b1'*c1",
        "-1/8*c1''' + 3/4*b1*c1*c1'"},
};

constexpr std::array kOracleK2 = {
    Row{2, "-1/2*b1*c1", "b2", "c2"},
    Row{3, "-1/2*b1*c2 - 1/2*b2*c1", "1/2*b1'", "-1/2*c1'"},
    Row{4, "1/4*b1*c1' - 1/4*b1'*c1 - 1/2*b2*c2 - 1/8*b1^2*c1^2", "1/2*b2' - 1/2*b1^2*c2 - 1/2*b1*b2*c1",
        "-1/2*c2' - 1/2*b1*c1*c2 - 1/2*b2*c1^2"},
};

constexpr std::array kOracleK3 = {
    Row{3, "-1/2*b1*c2 - 1/2*b2*c1", "b3", "c3"},
    Row{4, "-1/2*b1*c3 - 1/2*b2*c2 - 1/2*b3*c1 - 1/8*b1^2*c1^2", "1/2*b1'", "-1/2*c1'"},
    Row{5, "1/4*b1*c1' - 1/4*b1'*c1 - 1/2*b2*c3 - 1/2*b3*c2 - 1/4*b1^2*c1*c2 - 1/4*b1*b2*c1^2",
        "1/2*b2' - 1/2*b1^2*c3 - 1/2*b1*b2*c2 - 1/2*b1*b3*c1 - 1/8*b1^3*c1^2",
        "-1/2*c2' - 1/2*b1*c1*c3 - 1/2*b2*c1*c2 - 1/2*b3*c1^2 - 1/8*b1^2*c1^3"},
};

template <std::size_t N>
void check_rows(const PsiTable& table, const std::array<Row, N>& rows) {
  for (const Row& r : rows) {
    INFO("row ", r.j);
    CHECK_POLY(table.row(r.j).a, r.a);
    CHECK_POLY(table.row(r.j).b, r.b);
    CHECK_POLY(table.row(r.j).c, r.c);
  }
}

}  // namespace

TEST_CASE("constraint table against the oracle") {
  check_rows(build_psi(1, 4), kOracleK1);
  check_rows(build_psi(2, 4), kOracleK2);
  check_rows(build_psi(3, 5), kOracleK3);
}

TEST_CASE("row zero and free rows") {
  for (int k = 1; k <= 5; ++k) {
    const PsiTable t = build_psi(k, k);
    CHECK(t.row(0) == PsiRow{DiffPoly(1), DiffPoly(), DiffPoly()});
    for (int j = 1; j <= k; ++j) {
      CHECK(t.row(j).b == DiffPoly(field_b(j)));
      CHECK(t.row(j).c == DiffPoly(field_c(j)));
      CHECK(t.row(j).a.derivative_free());
    }
  }
  CHECK_FALSE(build_psi(2, 4).row(4).a.derivative_free());
}

TEST_CASE("closure and extension steps") {
  const PsiTable t2 = build_psi(2, 4);
  CHECK(casimir_closure_a(t2, 1).is_zero());
  CHECK_POLY(casimir_closure_a(t2, 2), "-1/2*b1*c1");
  CHECK_POLY(casimir_closure_a(t2, 3), "-1/2*b2*c1 - 1/2*b1*c2");
  CHECK_POLY(casimir_closure_a(t2, 4), "1/4*b1*c1' - 1/4*b1'*c1 - 1/2*b2*c2 - 1/8*b1^2*c1^2");
  const auto [b3, c3] = extend_offdiagonal(t2, 1);
  CHECK_POLY(b3, "1/2*b1'");
  CHECK_POLY(c3, "-1/2*c1'");
  CHECK_POLY(extend_offdiagonal(t2, 2).first, "1/2*b2' - 1/2*b1^2*c2 - 1/2*b1*b2*c1");
  const auto [b2, c2] = extend_offdiagonal(build_psi(1, 2), 1);
  CHECK_POLY(b2, "1/2*b1'");
  CHECK_POLY(c2, "-1/2*c1'");
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(build_psi(0, 3), InvalidArgument);
  CHECK_THROWS_AS(build_psi(3, 2), InvalidArgument);
  const PsiTable t = build_psi(1, 2);
  CHECK_THROWS_AS(t.row(3), DepthExhausted);
  CHECK_THROWS_AS(t.row(-1), InvalidArgument);
  CHECK_THROWS_AS(lax_matrix(t, 3), DepthExhausted);
}

TEST_CASE("Lax matrices") {
  const PsiTable t1 = build_psi(1, 3);
  CHECK(lax_matrix(t1, 0) == LaurentMatrix::single(0, Sl2Poly::sigma3()));
  const LaurentMatrix v11 = lax_matrix(t1, 1);
  CHECK(v11.at(1) == Sl2Poly::sigma3());
  CHECK(v11.at(0) == Sl2Poly{DiffPoly(), P("b1"), P("c1")});
  CHECK(v11.coeffs().size() == 2);
  CHECK(v11.exact());
  const LaurentMatrix v22 = lax_matrix(build_psi(2, 4), 2);
  CHECK(v22.at(0) == Sl2Poly{P("-1/2*b1*c1"), P("b2"), P("c2")});
}

TEST_CASE("diagonal flow consistency and squared trace to depth 14") {
  for (int k = 1; k <= 6; ++k) {
    INFO("k = ", k);
    const PsiTable t = build_psi(k, 14);
    CHECK_REPORT(diag_consistency(t));
    CHECK_REPORT(squared_trace_check(t));
  }
}

TEST_CASE("deeper tables extend shallower ones") {
  for (int k = 1; k <= 3; ++k) {
    const PsiTable shallow = build_psi(k, k + 3);
    const PsiTable deep = build_psi(k, k + 6);
    for (int j = 0; j <= shallow.depth(); ++j) CHECK(shallow.row(j) == deep.row(j));
    CHECK(psi_series(deep).truncated(shallow.depth()) == psi_series(shallow));
  }
}

TEST_CASE("build is deterministic") {
  CHECK(build_psi(3, 8) == build_psi(3, 8));
}
