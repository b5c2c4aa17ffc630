#include <vector>

#include "doctest.h"
#include "ellfib/parse.hpp"
#include "ellfib/polyops.hpp"

using namespace ellfib;

namespace {

MultiPoly P(const std::string& s) { return parse_poly(s); }

// Deterministic small-coefficient pseudo-random polynomials.
struct Rng {
  unsigned long state = 0x9e3779b97f4a7c15ULL;
  long next(long lo, long hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((state >> 33) % static_cast<unsigned long>(hi - lo + 1));
  }
  MultiPoly poly(const std::vector<std::string>& vars, int maxdeg, int terms) {
    MultiPoly p;
    for (int t = 0; t < terms; ++t) {
      QElem c(next(-4, 4));
      if (c.is_zero()) c = QElem(1);
      ExpVec e;
      for (std::size_t i = 0; i < vars.size(); ++i)
        e.push_back(static_cast<unsigned>(next(0, maxdeg)));
      p += MultiPoly::monomial(c, vars, e);
    }
    return p;
  }
};

}  // namespace

TEST_CASE("pseudo-remainder basics") {
  // prem(x^2, x - 1) over lc 1 is the plain remainder 1.
  CHECK(prem(P("x^2"), P("x - 1"), "x") == P("1"));
  // lc(q) = y, deg gap 1: prem = y^2 * x^2 mod (y*x - 1) -> 1.
  CHECK(prem(P("x^2"), P("y*x - 1"), "x") == P("1"));
}

TEST_CASE("resultant worked examples") {
  CHECK(resultant(P("x - 1"), P("x + 1"), "x") == P("2"));
  CHECK(resultant_sylvester(P("x - 1"), P("x + 1"), "x") == P("2"));
  // Res_x(x^2 - y, x - 3) = 9 - y as a polynomial identity.
  CHECK(resultant(P("x^2 - y"), P("x - 3"), "x") == P("-y + 9"));
  // Common factor forces 0.
  CHECK(resultant(P("(x - y)*(x + 2)"), P("(x - y)*(x - 5)"), "x").is_zero());
  // Degree-0 second argument: Res(p, c) = c^deg p.
  CHECK(resultant(P("x^3 - 2"), P("7"), "x") == P("343"));
  // Swap antisymmetry on odd-by-odd degrees.
  MultiPoly p = P("2*x^3 - x + 1");
  MultiPoly q = P("x - 4");
  CHECK(resultant(p, q, "x") == -resultant(q, p, "x"));
}

TEST_CASE("subresultant PRS agrees with the Sylvester-determinant oracle") {
  Rng rng;
  const std::vector<std::vector<std::string>> var_sets = {
      {"x"}, {"x", "y"}, {"x", "y", "z"}};
  int nontrivial = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& vars = var_sets[static_cast<std::size_t>(i % 3)];
    MultiPoly p = rng.poly(vars, 3 + (i % 2), 3);
    MultiPoly q = rng.poly(vars, 3, 3);
    if (p.degree("x") < 1 || q.degree("x") < 1) continue;
    MultiPoly r1 = resultant(p, q, "x");
    MultiPoly r2 = resultant_sylvester(p, q, "x");
    CHECK(r1 == r2);
    if (!r1.is_zero()) ++nontrivial;
  }
  CHECK(nontrivial > 120);
}

TEST_CASE("resultant vanishes exactly when the gcd has positive degree") {
  Rng rng;
  for (int i = 0; i < 40; ++i) {
    MultiPoly a = rng.poly({"x", "y"}, 2, 2);
    MultiPoly b = rng.poly({"x", "y"}, 2, 2);
    MultiPoly c = rng.poly({"x", "y"}, 2, 2);
    if (a.degree("x") < 1 || b.degree("x") < 1 || c.degree("x") < 1) continue;
    // Constructed common factor.
    CHECK(resultant(a * c, b * c, "x").is_zero());
    CHECK(gcd_poly(a * c, b * c, "x").degree("x") >= c.degree("x"));
    // Conversely a nonzero resultant forces a trivial gcd.
    MultiPoly r = resultant(a, b, "x");
    if (!r.is_zero()) CHECK(gcd_poly(a, b, "x").degree("x") == 0);
  }
}

TEST_CASE("gcd worked examples") {
  CHECK(gcd_poly(P("(x - 1)^2 * (x + 2)"), P("(x - 1) * (x + 3)"), "x") ==
        P("x - 1"));
  MultiPoly p = P("(x - tau)^3");
  CHECK(gcd_poly(p, p.derivative("x"), "x") == P("(x - tau)^2"));
  CHECK(gcd_poly(P("0"), P("-2*x + 2"), "x") == P("x - 1"));
  CHECK(gcd_multi(P("6*x*y"), P("4*y^2")) == P("y"));
  CHECK(gcd_multi(P("x"), P("z")) == P("1"));
  // Content/primitive split with parameters.
  CHECK(gcd_poly(P("tau*(tau-1)*x^2"), P("tau^2*x"), "x") == P("tau*x"));
  // gcd_poly and gcd_multi agree on random inputs.
  Rng rng;
  for (int i = 0; i < 25; ++i) {
    MultiPoly a = rng.poly({"x", "y"}, 2, 2);
    MultiPoly b = rng.poly({"x", "y"}, 2, 2);
    MultiPoly c = rng.poly({"x", "y"}, 1, 2);
    if ((a * c).degree("x") < 1 || (b * c).degree("x") < 1) continue;
    MultiPoly g1 = gcd_poly(a * c, b * c, "x");
    MultiPoly g2 = gcd_multi(a * c, b * c);
    CHECK(g1 == g2);
    CHECK((a * c).try_divexact(g1).has_value());
    CHECK((b * c).try_divexact(g1).has_value());
  }
}

TEST_CASE("squarefree decomposition recomposes exactly") {
  auto check_recompose = [](const MultiPoly& p, const std::string& var) {
    SquarefreeDecomposition sd = squarefree_decompose(p, var);
    MultiPoly prod = sd.content;
    for (const auto& f : sd.factors)
      prod *= f.factor.pow(static_cast<unsigned>(f.multiplicity));
    CHECK(prod == p);
    for (const auto& f : sd.factors) {
      CHECK(f.factor.degree(var) > 0);
      CHECK(gcd_poly(f.factor, f.factor.derivative(var), var).degree(var) == 0);
    }
  };
  check_recompose(P("x^2 - 1"), "x");
  check_recompose(P("(x - 1)^2 * (x + 2)"), "x");
  check_recompose(P("tau^3 * (x - tau)^2 * (x + 1)^3 * (x^2 + 1)"), "x");
  check_recompose(P("-4*x^5"), "x");

  SquarefreeDecomposition sd = squarefree_decompose(P("(x-1)^2*(x+2)"), "x");
  REQUIRE(sd.factors.size() == 2);
  CHECK(sd.factors[0].factor == P("x + 2"));
  CHECK(sd.factors[0].multiplicity == 1);
  CHECK(sd.factors[1].factor == P("x - 1"));
  CHECK(sd.factors[1].multiplicity == 2);

  Rng rng;
  int done = 0;
  for (int i = 0; i < 300 && done < 200; ++i) {
    MultiPoly a = rng.poly({"x"}, 2, 2);
    MultiPoly b = rng.poly({"x", "y"}, 1, 2);
    unsigned ea = static_cast<unsigned>(1 + (i % 3));
    MultiPoly p = a.pow(ea) * b;
    if (p.degree("x") < 1) continue;
    check_recompose(p, "x");
    ++done;
  }
  CHECK(done == 200);
  CHECK_THROWS_AS(squarefree_decompose(P("0"), "x"), arith_error);
}

TEST_CASE("coprime refinement") {
  std::vector<MultiPoly> fs = {P("(x-1)*(x+1)"), P("(x-1)*x"), P("x^2*(x+2)")};
  std::vector<MultiPoly> basis = coprime_refine(fs, "x");
  // Pairwise coprime.
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      CHECK(gcd_poly(basis[i], basis[j], "x").degree("x") == 0);
  // Every input is, up to a unit, a product of powers of basis elements.
  for (const auto& f : fs) {
    MultiPoly r = f;
    for (const auto& g : basis)
      while (auto q = r.try_divexact(g)) r = *q;
    CHECK(r.is_constant());
  }
  REQUIRE(basis.size() == 4);
  CHECK(basis[0] == P("x"));
  // Degenerate inputs.
  CHECK(coprime_refine({P("3")}, "x").empty());
  CHECK(coprime_refine({P("x"), P("x"), P("x")}, "x").size() == 1);
}

TEST_CASE("order of vanishing") {
  CHECK(ord_at(P("x^3*(x-1)"), P("x")) == 3);
  CHECK(ord_at(P("x^3*(x-1)"), P("x - 1")) == 1);
  CHECK(ord_at(P("x + 2"), P("x")) == 0);
  CHECK(ord_at(P("(x^2+11*x-1)^2 * x"), P("x^2+11*x-1")) == 2);
  CHECK_THROWS_AS(ord_at(P("0"), P("x")), arith_error);
}

TEST_CASE("polynomial nth roots") {
  CHECK(*poly_nth_root(P("x^2 + 2*x + 1"), 2) == P("x + 1"));
  CHECK(*poly_nth_root(P("(2*x - y)^3 * (x + y)^3"), 3) == P("(2*x-y)*(x+y)"));
  CHECK(!poly_nth_root(P("x^2 + 1"), 2).has_value());
  CHECK(!poly_nth_root(P("x^3"), 2).has_value());
  CHECK(*poly_nth_root(P("4*x^2"), 2) == P("2*x"));
  CHECK(*poly_nth_root(P("0"), 2) == P("0"));
  // Quadratic-field coefficients: ((1+sqrt5) x + 1)^2.
  MultiPoly sq = P("((1+sqrt(5))*x + 1)^2");
  auto r = poly_nth_root(sq, 2);
  REQUIRE(r);
  CHECK(*r * *r == sq);
  Rng rng;
  for (int i = 0; i < 30; ++i) {
    MultiPoly a = rng.poly({"x", "y"}, 2, 3);
    if (a.is_zero()) continue;
    unsigned n = static_cast<unsigned>(2 + (i % 3));
    auto root = poly_nth_root(a.pow(n), n);
    REQUIRE(root);
    CHECK(root->pow(n) == a.pow(n));
  }
}
