#include "support.hpp"

#include "fnr/errors.hpp"

using namespace fnr;
using fnr::test::P;

TEST_CASE("parser accepts the grammar") {
  CHECK(P("b1''") == DiffPoly(field_b(1, 2)));
  CHECK(P("-3/6*b1^2*c2'") == Rational(-1, 2) * DiffPoly(field_b(1)) * DiffPoly(field_b(1)) * DiffPoly(field_c(2, 1)));
  CHECK(P(" b1 *  c1 - 2 ") == P("b1*c1-2"));
  CHECK(P("0").is_zero());
  CHECK(P("-b1 + -2*c1") == P("-1*b1 - 2*c1"));
  CHECK(P("b12") == DiffPoly(field_b(12)));
}

TEST_CASE("parser rejects malformed input") {
  for (const char* bad : {"", "b1 +", "b0", "b1^", "1/0", "x1", "b1**c1", "2 b1", "b1 = c1", "(b1)"}) {
    INFO(bad);
    CHECK_THROWS_AS(P(bad), ParseError);
  }
  CHECK_THROWS_AS(parse_fieldvar("b1*c1"), ParseError);
}

TEST_CASE("printing") {
  CHECK(to_text(P("1/2*b1'' - b1^2*c1")) == "1/2*b1'' - b1^2*c1");
  CHECK(to_text(DiffPoly()) == "0");
  CHECK(to_text(P("-1")) == "-1");
  CHECK(to_text(field_c(3, 1)) == "c3'");
}

TEST_CASE("LaTeX form") {
  CHECK(to_latex(field_b(1, 2), 1) == "\\partial_{t_{1}}^{2} b_{1}");
  CHECK(to_latex(field_c(2, 1), 4) == "\\partial_{t_{4}} c_{2}");
  CHECK(to_latex(P("-1/2*b1*c1"), 1) == "-\\frac{1}{2} b_{1} c_{1}");
  CHECK(to_latex(DiffPoly(), 1) == "0");
}

TEST_CASE("symbols and constants") {
  SymbolTable symbols;
  const FieldVar e = symbols.declare("e", true);
  const FieldVar q = symbols.declare("q", false);
  CHECK(symbols.declare("e", true) == e);
  CHECK_THROWS_AS(symbols.declare("b1", false), ParseError);
  const DiffPoly p = parse_poly("e*q' + q^2", &symbols);
  CHECK(to_text(p, &symbols) == "q^2 + q'*e");
  CHECK(dp_derive(DiffPoly(e)).is_zero());
  CHECK(dp_derive(DiffPoly(q)) == DiffPoly(q.derived()));
  CHECK(parse_poly("e'", &symbols).is_zero());
  CHECK_THROWS_AS(parse_poly("r*q"), ParseError);
  SymbolTable fresh;
  const DiffPoly auto_declared = parse_poly_declaring("r*b1", fresh);
  CHECK(fresh.lookup("r").has_value());
  CHECK(to_text(auto_declared, &fresh) == "b1*r");
}

TEST_CASE("JSON form with symbols") {
  SymbolTable symbols;
  symbols.declare("e", true);
  const DiffPoly p = parse_poly_declaring("1/3*e*b1s'' - c1", symbols);
  const auto j = to_json(p, &symbols);
  SymbolTable reread;
  const DiffPoly back = poly_from_json(j, &reread);
  CHECK(to_text(back, &reread) == to_text(p, &symbols));
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"([{"coeff": "x", "vars": []}])")), ParseError);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"({"a": 1})")), ParseError);
}

TEST_CASE("substitution files") {
  SymbolTable symbols;
  const auto rules = parse_substitutions("# reduction\nconst e\n\nc1 = e*b1s   # conjugate\nb2 = 0\n", symbols);
  REQUIRE(rules.size() == 2);
  CHECK(symbols.lookup("e").has_value());
  CHECK(to_text(rules.at(field_c(1)), &symbols) == "b1s*e");
  CHECK(rules.at(field_b(2)).is_zero());
  SymbolTable s2;
  CHECK_THROWS_WITH_AS(parse_substitutions("b1 = c1\nc1' = b1\n", s2), doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_AS(parse_substitutions("b1 c1\n", s2), ParseError);
  CHECK_THROWS_AS(parse_substitutions("2*b1 = c1\n", s2), ParseError);
}
