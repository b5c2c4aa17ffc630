#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "ellfib/parse.hpp"
#include "ellfib/pencil.hpp"
#include "ellfib/polyops.hpp"

using namespace ellfib;

namespace {

MultiPoly P(const std::string& s) { return parse_poly(s); }

PencilSpec lines_pencil() {
  // Lines through (0:0:1), written projectively in (tau : sig).
  return PencilSpec::from_file(parse_pencil_file(
      "point: x0 x1 x2; param: tau sig\n sig*x1 - tau*x0"));
}

PencilSpec conics_pencil() {
  // Conics through two points, tangent to a line at a third.
  return PencilSpec::from_file(parse_pencil_file(
      "point: x0 x1 x2; param: tau sig\n sig*x1*x2 - tau*(x0*x2 - x0^2)"));
}

PencilSpec cubics_pencil() {
  // The cubic pencil whose two named members split into line triples.
  return PencilSpec::from_file(parse_pencil_file(
      "point: x0 x1 x2; param: lam mu\n"
      "lam*x1*x2*(x0 - x1) + mu*x0*(x0 - x1 - x2)*(x0 - x2)"));
}

BranchSextic split_sextic() {
  return BranchSextic::from_file(parse_pencil_file(
      "point: x0 x1 x2\n x1*x2*(x0 - x1)\n x0*(x0 - x1 - x2)*(x0 - x2)"));
}

ProjTransform from_longs(const std::array<std::array<long, 3>, 3>& a) {
  std::array<std::array<QElem, 3>, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = QElem(a[i][j]);
  return ProjTransform(m);
}

bool same_up_to_constant(const MultiPoly& a, const MultiPoly& b) {
  return a.normalized().second == b.normalized().second;
}

}  // namespace

TEST_CASE("pencil shape validation") {
  CHECK_NOTHROW(lines_pencil().validate());
  CHECK_NOTHROW(conics_pencil().validate());
  CHECK_NOTHROW(cubics_pencil().validate());

  // Not homogeneous in the point variables.
  CHECK_THROWS_WITH(PencilSpec::from_file(parse_pencil_file(
                        "point: x0 x1 x2; param: tau sig\n sig*x1 - tau")),
                    "pencil is not homogeneous in the point variables");
  CHECK_THROWS_WITH(PencilSpec::from_file(parse_pencil_file(
                        "point: x0 x1 x2; param: tau sig\n"
                        "sig*x1^2 - tau*x0")),
                    "pencil is not homogeneous in the point variables");
  // Quadratic in the parameters.
  CHECK_THROWS_WITH(PencilSpec::from_file(parse_pencil_file(
                        "point: x0 x1 x2; param: tau sig\n"
                        "sig^2*x1 - tau^2*x0")),
                    "pencil is not linear in the parameters");
  // Undeclared variable.
  CHECK_THROWS_WITH(PencilSpec::from_file(parse_pencil_file(
                        "point: x0 x1 x2; param: tau sig\n sig*x1 - tau*y")),
                    "pencil uses an undeclared variable: y");
  // Two polynomials where one pencil is expected.
  CHECK_THROWS_WITH(PencilSpec::from_file(parse_pencil_file(
                        "point: x0 x1 x2; param: tau sig\n x1\n x0")),
                    "expected a single pencil polynomial");

  PencilSpec p = lines_pencil();
  CHECK(p.degree == 1);
  CHECK(conics_pencil().degree == 2);
  CHECK(cubics_pencil().degree == 3);
}

TEST_CASE("pencil members at parameter values") {
  PencilSpec b1 = lines_pencil();
  CHECK(b1.member(QElem(1), QElem(1)) == P("x1 - x0"));
  CHECK(b1.member(QElem(0), QElem(1)) == P("x1"));
  CHECK(b1.member(QElem(1), QElem(0)) == P("-x0"));
  CHECK_THROWS_WITH(b1.member(QElem(0), QElem(0)), "pencil value (0, 0)");

  PencilSpec c = cubics_pencil();
  CHECK(c.member(QElem(0), QElem(1)) == P("x0*(x0 - x1 - x2)*(x0 - x2)"));
  CHECK(c.member(QElem(1), QElem(0)) == P("x1*x2*(x0 - x1)"));

  // The affine chart keeps the declared parameter and sets the other to 1.
  PencilSpec cm = c;
  cm.affine_param = 1;
  CHECK(cm.member_affine() ==
        P("x1*x2*(x0 - x1) + mu*x0*(x0 - x1 - x2)*(x0 - x2)"));
  PencilSpec b2 = conics_pencil();
  CHECK(b2.member_affine() == P("x1*x2 - tau*(x0*x2 - x0^2)"));
}

TEST_CASE("branch sextic validation") {
  BranchSextic s = split_sextic();
  CHECK(s.product() ==
        P("x0*x1*x2*(x0 - x1)*(x0 - x2)*(x0 - x1 - x2)"));
  CHECK_THROWS_WITH(BranchSextic::from_file(parse_pencil_file(
                        "point: x0 x1 x2\n x1*x2\n x0^3")),
                    "branch factor is not a homogeneous cubic");
  CHECK_THROWS_WITH(BranchSextic::from_file(
                        parse_pencil_file("point: x0 x1 x2\n x0^3")),
                    "expected exactly two cubic factors");
}

TEST_CASE("projection resultant of line pencil against split sextic") {
  BranchSextic s = split_sextic();
  PencilSpec b1 = lines_pencil();
  MultiPoly r = projection_resultant(s, b1, "x1");

  // Eliminating x1 from the product of the two line triples against
  // sig*x1 = tau*x0 leaves a binary sextic in (x0 : x2).
  MultiPoly expected = P(
      "tau*(sig - tau)*x0^3*x2*(x0 - x2)*((sig - tau)*x0 - sig*x2)");
  CHECK(same_up_to_constant(r, expected));
  CHECK(r.is_homogeneous_in({"x0", "x2"}, 6));

  // Squarefree split: a doubled line comes out, leaving a binary quartic
  // scaled by a parameter-only factor.
  MultiPoly residue = r.divexact(P("x0^2"));
  CHECK(same_up_to_constant(
      residue,
      P("tau*(sig - tau)*x0*x2*(x0 - x2)*((sig - tau)*x0 - sig*x2)")));
  CHECK(residue.is_homogeneous_in({"x0", "x2"}, 4));

  // Orientation: in the chart sig = 1 the resultant is the sextic itself
  // restricted to the member line x1 = tau*x0 (same sign, not its negative),
  // so the quadratic twist class of the induced double cover is preserved.
  std::map<std::string, MultiPoly> sig1{{"sig", MultiPoly(1)}};
  std::map<std::string, MultiPoly> online{{"x1", P("tau*x0")}};
  CHECK(r.subst(sig1) == s.product().subst(online));

  CHECK_THROWS_WITH(projection_resultant(s, b1, "x2"),
                    "pencil does not involve the projection variable");
  CHECK_THROWS_WITH(projection_resultant(s, b1, "w"),
                    "projection variable is not a point variable");
}

TEST_CASE("projection resultant commutes with specialization") {
  BranchSextic s = split_sextic();
  for (const PencilSpec& p : {lines_pencil(), conics_pencil()}) {
    MultiPoly r = projection_resultant(s, p, "x1");
    for (long t : {2L, 3L, -1L, 7L}) {
      std::map<std::string, MultiPoly> bind;
      bind[p.param_vars[0]] = MultiPoly::constant(QElem(t));
      bind[p.param_vars[1]] = MultiPoly(1);
      MultiPoly lhs = r.subst(bind).drop_unused_vars();
      MultiPoly rhs =
          resultant(p.member(QElem(t), QElem(1)), s.product(), "x1")
              .drop_unused_vars();
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("projective transforms act on polynomials") {
  ProjTransform id = ProjTransform::identity();
  MultiPoly q = P("x0*x2 - x1^2");
  std::vector<std::string> pv = {"x0", "x1", "x2"};
  CHECK(id.apply(q, pv) == q);

  // Swap the last two coordinates.
  ProjTransform swap12 = from_longs({{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}});
  CHECK(swap12.apply(q, pv) == P("x0*x1 - x2^2"));
  CHECK(swap12.apply(swap12.apply(q, pv), pv) == q);

  ProjTransform a = from_longs({{{1, 2, 0}, {0, 1, 0}, {3, 0, 1}}});
  ProjTransform b = from_longs({{{0, 1, 0}, {1, 0, 1}, {0, 0, 2}}});
  // Composition in application order.
  CHECK(compose(a, b).apply(q, pv) == b.apply(a.apply(q, pv), pv));
  CHECK(compose(b, a).apply(q, pv) == a.apply(b.apply(q, pv), pv));
  // Inverses cancel exactly.
  CHECK(compose(a, a.inverse()).apply(q, pv) == q);
  CHECK(a.inverse().apply(a.apply(q, pv), pv) == q);

  CHECK_THROWS_WITH(from_longs({{{1, 2, 0}, {2, 4, 0}, {3, 0, 1}}}),
                    "singular transform");
  CHECK_THROWS_WITH(id.apply(P("x0 + 1"), pv),
                    "polynomial is not homogeneous in the point variables");

  // Degree and homogeneity are preserved on pencils and sextics.
  PencilSpec moved = apply_transform(a, conics_pencil());
  CHECK(moved.degree == 2);
  CHECK_NOTHROW(moved.validate());
  BranchSextic ms = apply_transform(swap12, split_sextic());
  CHECK(ms.f3 == P("x2*x1*(x0 - x2)"));
}

TEST_CASE("conic family parameterization in normal position") {
  // Sextic pencil built from lines through the three reference points plus
  // a moving line: pulls back with peeled orders a = 2, b = 4.
  PencilSpec p = PencilSpec::from_file(parse_pencil_file(
      "point: x0 x1 x2; param: tau sig\n"
      "x0*x1*x2*(x0 - x1)*(tau*x0 + sig*x2)"));
  ConicParam cp = conic_parameterize(p, "p");
  CHECK(cp.mult_z == 2);
  CHECK(cp.mult_z1 == 4);
  // The returned coordinates satisfy every member identically.
  std::map<std::string, MultiPoly> back = {
      {"x0", cp.x0}, {"x1", cp.x1}, {"x2", cp.x2}};
  CHECK(p.h.subst(back).is_zero());
  // Coordinates are coprime.
  CHECK(gcd_multi(gcd_multi(cp.x0, cp.x1), cp.x2).is_constant());
  // The solved residual point: tau*x0 + sig*x2 = 0 along the family.
  CHECK((cp.x0 * P("tau") + cp.x2 * P("sig")).is_zero());

  // Quintic variant with a doubled coordinate line: a = 3, b = 2.
  PencilSpec p5 = PencilSpec::from_file(parse_pencil_file(
      "point: x0 x1 x2; param: tau sig\n"
      "x0*x1*x2^2*(tau*x0 + sig*x2)"));
  ConicParam cp5 = conic_parameterize(p5, "p");
  CHECK(cp5.mult_z + cp5.mult_z1 == 5);
  std::map<std::string, MultiPoly> back5 = {
      {"x0", cp5.x0}, {"x1", cp5.x1}, {"x2", cp5.x2}};
  CHECK(p5.h.subst(back5).is_zero());

  // Residual quadratic in z: the moving part meets each conic twice.
  PencilSpec bad = PencilSpec::from_file(parse_pencil_file(
      "point: x0 x1 x2; param: tau sig\n"
      "x0*x1*(x0 - x1)*(x0 - x2)*(tau*x0 + sig*x2)"));
  CHECK_THROWS_WITH(conic_parameterize(bad, "p"),
                    "condition (†) violated");

  // Too few base-point intersections.
  PencilSpec low = PencilSpec::from_file(parse_pencil_file(
      "point: x0 x1 x2; param: tau sig\n x0*x1*(tau*x0 + sig*x2)"));
  CHECK_THROWS_WITH(conic_parameterize(low, "p"),
                    "unexpected base point multiplicity");

  CHECK_THROWS_WITH(conic_parameterize(p, "tau"),
                    "family variable collides with a parameter");
}
