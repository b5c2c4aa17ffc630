#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "ellfib/parse.hpp"
#include "ellfib/polyops.hpp"
#include "ellfib/weierstrass.hpp"

using namespace ellfib;

namespace {

RatFunc RF(const std::string& s) { return RatFunc(parse_poly(s)); }

// The reference rational elliptic surface with two 5-cycles of rational
// curves in its fiber configuration; used as the seed model in many tests.
WeierstrassModel seed_model() {
  return WeierstrassModel::short_form(
      "mu", RF("-1/48*mu^4 - 1/4*mu^3 - 7/24*mu^2 + 1/4*mu - 1/48"),
      RF("1/864*mu^6 + 1/48*mu^5 + 25/288*mu^4 + 25/288*mu^2 - 1/48*mu + "
         "1/864"));
}

struct Rng {
  std::uint64_t s = 0x2545F4914F6CDD1DULL;
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  long small(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  RatFunc ratval() {
    long n = small(-6, 6);
    long d = small(1, 4);
    return RatFunc(MultiPoly::constant(QElem(Rat(n, d))));
  }
  RatFunc nonzero_ratval() {
    RatFunc v = ratval();
    while (v.is_zero()) v = ratval();
    return v;
  }
};

bool same_up_to_constant(const MultiPoly& p, const MultiPoly& q) {
  return p.normalized().second == q.normalized().second;
}

}  // namespace

TEST_CASE("invariants of the seed model") {
  WeierstrassModel M = seed_model();
  Invariants v = M.invariants();
  CHECK(v.c4.pow(3) - v.c6 * v.c6 == RatFunc(1728) * v.delta);
  CHECK(v.delta == RF("-mu^7 - 11*mu^6 + mu^5"));
  CHECK(same_up_to_constant(v.delta.num(),
                            parse_poly("mu^5") * parse_poly("mu^2 + 11*mu - 1")));
  CHECK(RatFunc(4) * v.b8 == v.b2 * v.b6 - v.b4 * v.b4);
}

TEST_CASE("five-torsion section of the seed model") {
  WeierstrassModel M = seed_model();
  FnFieldPoint T =
      FnFieldPoint::affine(RF("1/12*mu^2 + 1/2*mu + 1/12"), RF("1/2*mu"));
  REQUIRE(on_curve(M, T));
  FnFieldPoint P = T;
  for (int k = 1; k <= 4; ++k) {
    CHECK(!P.at_infinity);
    P = point_add(M, P, T);
  }
  CHECK(P.at_infinity);
  CHECK(point_mul(M, T, 5) == FnFieldPoint::O());
  CHECK(point_mul(M, T, 3) == point_neg(M, point_mul(M, T, 2)));
}

TEST_CASE("group law on a constant curve") {
  // y^2 + y = x^3 - x, rank 1 with generator (0, 0).
  WeierstrassModel M = WeierstrassModel::long_form(
      "t", RatFunc(0), RatFunc(0), RatFunc(1), RatFunc(-1), RatFunc(0));
  FnFieldPoint G = FnFieldPoint::affine(RatFunc(0), RatFunc(0));
  REQUIRE(on_curve(M, G));
  FnFieldPoint P = G;
  for (int k = 2; k <= 6; ++k) {
    P = point_add(M, P, G);
    CHECK(on_curve(M, P));
    CHECK(!P.at_infinity);  // infinite order
  }
  CHECK(point_add(M, G, point_neg(M, G)).at_infinity);
  CHECK(point_mul(M, G, 4) == point_add(M, point_mul(M, G, 7), point_mul(M, G, -3)));
}

TEST_CASE("isomorphism scalings act as expected on invariants") {
  WeierstrassModel M = seed_model();
  Invariants v = M.invariants();
  Rng rng;
  for (int trial = 0; trial < 100; ++trial) {
    IsoData g{rng.nonzero_ratval(), rng.ratval(), rng.ratval(), rng.ratval()};
    if (trial % 7 == 0) g.u = RF("mu");  // non-constant scaling
    WeierstrassModel M2 = M.apply_iso(g);
    Invariants w = M2.invariants();
    CHECK(w.c4 == g.u.pow(4) * v.c4);
    CHECK(w.c6 == g.u.pow(6) * v.c6);
    CHECK(w.delta == g.u.pow(12) * v.delta);
    CHECK(w.j == v.j);
    CHECK(w.c4.pow(3) - w.c6 * w.c6 == RatFunc(1728) * w.delta);
  }
}

TEST_CASE("iso inverse and composition") {
  WeierstrassModel M = seed_model();
  Rng rng;
  for (int trial = 0; trial < 40; ++trial) {
    IsoData g{rng.nonzero_ratval(), rng.ratval(), rng.ratval(), rng.ratval()};
    IsoData h{rng.nonzero_ratval(), rng.ratval(), rng.ratval(), rng.ratval()};
    WeierstrassModel step = M.apply_iso(g).apply_iso(h);
    WeierstrassModel direct = M.apply_iso(g.compose(h));
    CHECK(step.a1() == direct.a1());
    CHECK(step.a2() == direct.a2());
    CHECK(step.a3() == direct.a3());
    CHECK(step.a4() == direct.a4());
    CHECK(step.a6() == direct.a6());
    WeierstrassModel back = M.apply_iso(g).apply_iso(g.inverse());
    CHECK(back.a4() == M.a4());
    CHECK(back.a6() == M.a6());
    CHECK(back.a1() == M.a1());
  }
}

TEST_CASE("isomorphism search recovers random isomorphisms") {
  WeierstrassModel M = seed_model();
  Rng rng;
  for (int trial = 0; trial < 25; ++trial) {
    IsoData g{rng.nonzero_ratval(), rng.ratval(), rng.ratval(), rng.ratval()};
    WeierstrassModel M2 = M.apply_iso(g);
    auto found = is_isomorphic(M, M2);
    REQUIRE(found.has_value());
    WeierstrassModel img = M.apply_iso(*found);
    CHECK(img.a4() == M2.a4());
    CHECK(img.a6() == M2.a6());
  }
  // A genuinely different curve is rejected.
  WeierstrassModel other = WeierstrassModel::short_form("mu", RF("mu"), RF("1"));
  CHECK(!is_isomorphic(M, other).has_value());
}

TEST_CASE("isomorphism search at special j-invariants") {
  // j = 0 pair.
  WeierstrassModel E0 = WeierstrassModel::short_form("t", RatFunc(0), RF("t"));
  WeierstrassModel E0b = WeierstrassModel::short_form("t", RatFunc(0), RF("64*t^7"));
  auto g0 = is_isomorphic(E0, E0b);
  REQUIRE(g0.has_value());
  CHECK(E0.apply_iso(*g0).a6() == E0b.a6());
  // j = 1728 pair.
  WeierstrassModel E1 = WeierstrassModel::short_form("t", RF("t"), RatFunc(0));
  WeierstrassModel E1b = WeierstrassModel::short_form("t", RF("16*t^5"), RatFunc(0));
  auto g1 = is_isomorphic(E1, E1b);
  REQUIRE(g1.has_value());
  CHECK(E1.apply_iso(*g1).a4() == E1b.a4());
  // Same j, not isomorphic over the ground field (quadratic twist by t).
  WeierstrassModel tw = WeierstrassModel::short_form("t", RF("t^2"), RF("t^3"));
  WeierstrassModel tw2 = WeierstrassModel::short_form("t", RF("t^4"), RF("t^6"));
  CHECK(tw.invariants().j == tw2.invariants().j);
  CHECK(!is_isomorphic(tw, tw2).has_value());
}

TEST_CASE("minimalize clears scaling and content") {
  // Scale the seed model by u = 1/(2 mu): A -> A/(16 mu^4), B -> B/(64 mu^6);
  // minimalization must recover a model isomorphic to the seed with the
  // canonical content.
  WeierstrassModel M = seed_model();
  IsoData g{RatFunc(parse_poly("2*mu")), RatFunc(0), RatFunc(0), RatFunc(0)};
  WeierstrassModel blown = M.apply_iso(g.inverse());
  auto [minimal, iso] = minimalize(blown);
  WeierstrassModel check = blown.apply_iso(iso);
  CHECK(check.a4() == minimal.a4());
  CHECK(check.a6() == minimal.a6());
  // Per-place minimality: at mu = 0 not both ord(A) >= 4 and ord(B) >= 6.
  MultiPoly mu = parse_poly("mu");
  bool a_big = minimal.a4().is_zero() || ord_at(minimal.a4().num(), mu) >= 4;
  bool b_big = minimal.a6().is_zero() || ord_at(minimal.a6().num(), mu) >= 6;
  CHECK(!(a_big && b_big));
  CHECK(minimal.a4().is_poly());
  CHECK(minimal.a6().is_poly());
  auto found = is_isomorphic(minimal, M);
  CHECK(found.has_value());
}

TEST_CASE("minimalize worked examples") {
  // A = 16 t^4, B = 64 t^6: u = 1/(2t) is the exact reduction.
  WeierstrassModel M =
      WeierstrassModel::short_form("t", RF("16*t^4"), RF("64*t^6"));
  auto [m, iso] = minimalize(M);
  CHECK(m.a4() == RatFunc(1));
  CHECK(m.a6() == RatFunc(1));
  // A = t^8 A0, B = t^12 B0 reduces in two steps.
  WeierstrassModel M2 =
      WeierstrassModel::short_form("t", RF("t^8 - t^9"), RF("t^12"));
  auto [m2, iso2] = minimalize(M2);
  CHECK(m2.a4() == RF("1 - t"));
  CHECK(m2.a6() == RatFunc(1));
  (void)iso;
  (void)iso2;
  // Denominators are cleared.
  WeierstrassModel M3 = WeierstrassModel::short_form(
      "t", RatFunc(parse_poly("1"), parse_poly("t")), RatFunc(1));
  auto [m3, iso3] = minimalize(M3);
  CHECK(m3.a4().is_poly());
  CHECK(m3.a6().is_poly());
  CHECK(is_isomorphic(m3, M3).has_value());
  (void)iso3;
}

TEST_CASE("quadratic base change branched at 0 and infinity") {
  WeierstrassModel M = seed_model();
  WeierstrassModel S =
      quadratic_base_change(M, BasePoint::finite(QElem(0)), BasePoint::infinity(), "t");
  Invariants v = S.invariants();
  // Pulled-back discriminant: t^10 (t^4 + 11 t^2 - 1) up to a constant.
  CHECK(same_up_to_constant(v.delta.num() * v.delta.den(),
                            parse_poly("t^10") * parse_poly("t^4 + 11*t^2 - 1")));
  // The substitution route agrees.
  WeierstrassModel S2 = base_change_substitute(M, RF("t^2"), "t");
  CHECK(S2.a4() == S.a4());
  CHECK(S2.a6() == S.a6());
}

TEST_CASE("quadratic base change charts hit the declared branch points") {
  WeierstrassModel M = seed_model();
  // Chart for {p, inf} with p = 2: mu = 2 + t^2.
  WeierstrassModel S =
      quadratic_base_change(M, BasePoint::finite(QElem(2)), BasePoint::infinity(), "t");
  WeierstrassModel Sd = base_change_substitute(M, RF("2 + t^2"), "t");
  CHECK(S.a4() == Sd.a4());
  // Chart for {0, p}: mu = p t^2 / (p + t^2).
  WeierstrassModel T =
      quadratic_base_change(M, BasePoint::finite(QElem(0)), BasePoint::finite(QElem(3)), "t");
  WeierstrassModel Td = base_change_substitute(
      M, RatFunc(parse_poly("3*t^2"), parse_poly("3 + t^2")), "t");
  CHECK(T.a4() == Td.a4());
  // Generic chart {p, q}: mu = q (p + t^2) / (q + t^2).
  WeierstrassModel U = quadratic_base_change(M, BasePoint::finite(QElem(2)),
                                             BasePoint::finite(QElem(3)), "t");
  WeierstrassModel Ud = base_change_substitute(
      M, RatFunc(parse_poly("3") * parse_poly("2 + t^2"), parse_poly("3 + t^2")),
      "t");
  CHECK(U.a4() == Ud.a4());
  CHECK_THROWS_WITH(quadratic_base_change(M, BasePoint::infinity(),
                                          BasePoint::infinity(), "t"),
                    "coincident branch points");
}

namespace {

// Classical invariants of the binary quartic a x^4 + b x^3 + c x^2 + d x + e:
// the Jacobian of w^2 = q(x) is isomorphic to y^2 = x^3 - 27 I x - 27 J.
std::pair<RatFunc, RatFunc> quartic_IJ(const MultiPoly& q, const std::string& x) {
  auto cs = uni_coeffs(q, x);
  cs.resize(5, MultiPoly());
  RatFunc a{cs[4]}, b{cs[3]}, c{cs[2]}, d{cs[1]}, e{cs[0]};
  RatFunc I = RatFunc(12) * a * e - RatFunc(3) * b * d + c * c;
  RatFunc J = RatFunc(72) * a * c * e + RatFunc(9) * b * c * d -
              RatFunc(27) * a * d * d - RatFunc(27) * b * b * e -
              RatFunc(2) * c.pow(3);
  return {I, J};
}

void check_jacobian(const QuarticModel& Q, const QuarticSection& sec) {
  WeierstrassModel M = quartic_to_weierstrass(Q, sec);
  auto [I, J] = quartic_IJ(Q.q, Q.var);
  WeierstrassModel ref = WeierstrassModel::short_form(
      Q.var, RatFunc(-27) * I, RatFunc(-27) * J, Q.field_d, Q.params);
  auto g = is_isomorphic(minimalize(M).first, minimalize(ref).first);
  CHECK(g.has_value());
}

}  // namespace

TEST_CASE("quartic reduction against the classical invariants") {
  SUBCASE("cubic case") {
    QuarticModel Q{"x", parse_poly("x^3 + x"), 0, {}};
    WeierstrassModel M = quartic_to_weierstrass(Q, QuarticSection::none());
    CHECK(M.a4() == RatFunc(1));
    CHECK(M.a6() == RatFunc(0));
    check_jacobian(Q, QuarticSection::none());
  }
  SUBCASE("non-monic cubic with parameters") {
    QuarticModel Q{"x", parse_poly("tau*x^3 + x^2 + tau"), 0, {"tau"}};
    check_jacobian(Q, QuarticSection::none());
  }
  SUBCASE("degree 4 with declared root") {
    QuarticModel Q{"x", parse_poly("x^4 + x^3 + x^2 - 3*x"), 0, {}};
    check_jacobian(Q, QuarticSection::root(RatFunc(0)));
    QuarticModel Q2{"x", parse_poly("2*x^4 - x^3 - 1"), 0, {}};
    check_jacobian(Q2, QuarticSection::root(RatFunc(1)));
  }
  SUBCASE("degree 4 with declared point") {
    // q(1) = 9 = 3^2.
    QuarticModel Q{"x", parse_poly("x^4 + 3*x^3 + 2*x^2 + 3*x"), 0, {}};
    check_jacobian(Q, QuarticSection::point(RatFunc(1), RatFunc(3)));
  }
  SUBCASE("degree 4 with square leading coefficient") {
    QuarticModel Q{"x", parse_poly("4*x^4 + x^3 + x^2 + x + 1"), 0, {}};
    check_jacobian(Q, QuarticSection::none());
    QuarticModel Qp{"x", parse_poly("tau^2*x^4 + x + 1"), 0, {"tau"}};
    check_jacobian(Qp, QuarticSection::none());
  }
  SUBCASE("errors") {
    QuarticModel nsf{"x", parse_poly("x^4 - 2*x^2 + 1"), 0, {}};
    CHECK_THROWS_WITH(quartic_to_weierstrass(nsf, QuarticSection::none()),
                      "degenerate quartic");
    QuarticModel nosec{"x", parse_poly("3*x^4 + x + 1"), 0, {}};
    CHECK_THROWS_WITH(quartic_to_weierstrass(nosec, QuarticSection::none()),
                      "no section given");
    QuarticModel quad{"x", parse_poly("x^2 + 1"), 0, {}};
    CHECK_THROWS(quartic_to_weierstrass(quad, QuarticSection::none()));
  }
}

TEST_CASE("plane cubic reduction, smooth point") {
  // y^2 = x^3 - 2x + 1 rewritten as a general cubic with point (1, 0).
  MultiPoly cubic = parse_poly("y^2 - x^3 + 2*x - 1");
  auto [model, maps] = nagell_reduce(cubic, "x", "y", "t", RatFunc(1), RatFunc(0));
  WeierstrassModel ref =
      WeierstrassModel::short_form("t", RatFunc(-2), RatFunc(1));
  CHECK(is_isomorphic(minimalize(model).first, minimalize(ref).first).has_value());
  // The forward map satisfies the model equation modulo the input cubic.
  RatFunc lhs = maps.y_of * maps.y_of + model.a1() * maps.x_of * maps.y_of +
                model.a3() * maps.y_of;
  RatFunc rhs = maps.x_of.pow(3) + model.a2() * maps.x_of * maps.x_of +
                model.a4() * maps.x_of + model.a6();
  MultiPoly residue = (lhs - rhs).num();
  REQUIRE(!residue.is_zero());  // honest maps cannot satisfy it identically
  CHECK(residue.try_divexact(cubic).has_value());
  // The distinguished point maps to the point at infinity: the map has a pole.
  RatFunc xden{maps.x_of.den()};
  CHECK(xden.subst({{"x", RatFunc(1)}, {"y", RatFunc(0)}}).is_zero());
}

TEST_CASE("plane cubic reduction, flex point") {
  // x^3 + y^3 = 1 with the flex (1, 0); CM by a cube root of unity, j = 0.
  MultiPoly cubic = parse_poly("x^3 + y^3 - 1");
  auto [model, maps] = nagell_reduce(cubic, "x", "y", "t", RatFunc(1), RatFunc(0));
  Invariants v = model.invariants();
  CHECK(v.c4.is_zero());
  RatFunc lhs = maps.y_of * maps.y_of + model.a1() * maps.x_of * maps.y_of +
                model.a3() * maps.y_of;
  RatFunc rhs = maps.x_of.pow(3) + model.a2() * maps.x_of * maps.x_of +
                model.a4() * maps.x_of + model.a6();
  MultiPoly residue = (lhs - rhs).num();
  if (!residue.is_zero()) CHECK(residue.try_divexact(cubic).has_value());
}

TEST_CASE("plane cubic reduction error cases") {
  // Node at the given point.
  MultiPoly nodal = parse_poly("y^2 - x^3 - x^2");
  CHECK_THROWS_WITH(nagell_reduce(nodal, "x", "y", "t", RatFunc(0), RatFunc(0)),
                    "genus 0 member");
  // Point not on the curve.
  CHECK_THROWS_WITH(nagell_reduce(nodal, "x", "y", "t", RatFunc(5), RatFunc(1)),
                    "point not on the cubic");
  // Line times conic, smooth point on the line.
  MultiPoly split = parse_poly("y") * parse_poly("x^2 + y^2 - 1");
  CHECK_THROWS_WITH(nagell_reduce(split, "x", "y", "t", RatFunc(2), RatFunc(0)),
                    "reducible member");
  // Line times conic, smooth point on the conic.
  MultiPoly split2 = parse_poly("x^2 + y^2 - 1") * parse_poly("x + y - 2");
  CHECK_THROWS_WITH(nagell_reduce(split2, "x", "y", "t", RatFunc(0), RatFunc(1)),
                    "reducible member");
}

TEST_CASE("model files build models") {
  ModelFile mf = parse_model_file(
      "base: mu; field: Q\nA = -3*mu\nB = mu + 2\n");
  WeierstrassModel M = WeierstrassModel::from_file(mf);
  CHECK(M.base_var() == "mu");
  CHECK(M.is_short());
  CHECK(M.a4() == RF("-3*mu"));
  ModelFile lf = parse_model_file(
      "base: t; field: Q\na1 = 1; a3 = t\na6 = t^2\n");
  WeierstrassModel L = WeierstrassModel::from_file(lf);
  CHECK(!L.is_short());
  CHECK(L.a3() == RF("t"));
  CHECK(L.to_short().is_short());
}

TEST_CASE("base change over the quadratic field") {
  // Branch points at the two irrational roots of mu^2 + 11 mu - 1, i.e.
  // mu = -11/2 +- 5/2 sqrt(5); the pulled-back model lives over Q(sqrt 5).
  WeierstrassModel M = seed_model();
  QElem r1 = QElem(Rat(-11, 2)) + QElem::sqrt_gen(5) * QElem(Rat(5, 2));
  QElem r2 = QElem(Rat(-11, 2)) - QElem::sqrt_gen(5) * QElem(Rat(5, 2));
  CHECK((r1 * r1 + QElem(11) * r1 - QElem(1)).is_zero());
  WeierstrassModel S =
      quadratic_base_change(M, BasePoint::finite(r1), BasePoint::finite(r2), "t");
  CHECK(S.field_d() == 5);
  Invariants v = S.invariants();
  CHECK(v.c4.pow(3) - v.c6 * v.c6 == RatFunc(1728) * v.delta);
}
