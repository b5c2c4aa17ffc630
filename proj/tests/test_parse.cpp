#include "doctest.h"
#include "ellfib/parse.hpp"

using namespace ellfib;

TEST_CASE("expression grammar basics") {
  CHECK(parse_poly("1/2") == MultiPoly::constant(QElem(Rat(1, 2))));
  CHECK(parse_poly("x/2") == parse_poly("1/2 * x"));
  CHECK(parse_poly("-x^2") == -parse_poly("x") * parse_poly("x"));
  CHECK(parse_poly("2^3") == MultiPoly::constant(QElem(8)));
  CHECK(parse_poly(" mu ^ 2 + 11 * mu - 1 ") == parse_poly("mu^2+11*mu-1"));
  CHECK(parse_poly("x_1*x_1") == parse_poly("x_1^2"));
}

TEST_CASE("syntax errors carry positions and caret rendering") {
  auto expect_error_at = [](const std::string& src, std::size_t pos) {
    try {
      parse_poly(src);
      FAIL("expected parse_error for: " << src);
    } catch (const parse_error& e) {
      CHECK(e.pos == pos);
      std::string msg = caret_message(src, e);
      CHECK(msg.find('^') != std::string::npos);
      CHECK(msg.find(src) != std::string::npos);
    }
  };
  expect_error_at("x + ", 4);
  expect_error_at("x + * y", 4);
  expect_error_at("(x + y", 0);
  expect_error_at("x ^ y", 4);
  expect_error_at("x / y", 2);   // non-constant divisor
  expect_error_at("x / 0", 2);
  expect_error_at("x $ y", 2);
}

TEST_CASE("field descriptors") {
  CHECK(parse_field_descriptor("Q") == 0);
  CHECK(parse_field_descriptor("Q(sqrt(5))") == 5);
  CHECK(field_descriptor_str(0) == "Q");
  CHECK(field_descriptor_str(5) == "Q(sqrt(5))");
  CHECK_THROWS_AS(parse_field_descriptor("R"), parse_error);
}

TEST_CASE("model files") {
  std::string text =
      "# comment\n"
      "base: mu; field: Q\n"
      "A = -1/48*mu^4 - 1/4*mu^3\n"
      "B = mu   # trailing comment\n";
  ModelFile mf = parse_model_file(text);
  CHECK(mf.base_var == "mu");
  CHECK(mf.field_d == 0);
  CHECK(mf.params.empty());
  CHECK(mf.entries.at("A") == parse_poly("-1/48*mu^4-1/4*mu^3"));
  CHECK(mf.entries.at("B") == parse_poly("mu"));

  ModelFile mf2 = parse_model_file(
      "base: t; field: Q(sqrt(5)); params: m1 m2\n a1 = t; a3 = m1*t\n");
  CHECK(mf2.field_d == 5);
  CHECK(mf2.params == std::vector<std::string>{"m1", "m2"});
  CHECK(mf2.entries.count("a1") == 1);
  CHECK_THROWS_AS(parse_model_file("field: Q\nA = 1\n"), parse_error);
}

TEST_CASE("pencil files") {
  std::string text =
      "point: x0 x1 x2; param: b e; field: Q\n"
      "b*x1*x2 - e*(x0*x2 - x0^2)\n"
      "x0*x1*x2\n";
  PencilFile pf = parse_pencil_file(text);
  CHECK(pf.point_vars == std::vector<std::string>{"x0", "x1", "x2"});
  CHECK(pf.param_vars == std::vector<std::string>{"b", "e"});
  REQUIRE(pf.polys.size() == 2);
  CHECK(pf.polys[0].degree("x0") == 2);
}
