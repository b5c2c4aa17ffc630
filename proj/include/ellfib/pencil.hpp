// Pencils and small linear systems of plane curves, reducible branch
// sextics, projective coordinate changes, elimination of a point variable
// against a branch sextic, and rational parameterization of a conic family
// in normal position.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "ellfib/field.hpp"
#include "ellfib/parse.hpp"
#include "ellfib/poly.hpp"

namespace ellfib {

// A linear system of plane curves: a polynomial h in three point variables
// and one or more parameter variables, homogeneous in the point variables
// and homogeneous of degree one in the parameters.  Two-parameter pencils
// are stored projectively; `affine_param` records which parameter survives
// (the other is set to 1) when an affine chart is taken, so the fibers that
// sit at the infinite parameter value stay representable.
struct PencilSpec {
  std::vector<std::string> point_vars;  // exactly three, pairwise distinct
  std::vector<std::string> param_vars;  // at least one, disjoint from above
  MultiPoly h;
  long field_d = 0;              // 0 = rationals, else Q(sqrt(field_d))
  int degree = 0;                // homogeneous degree in the point variables
  std::size_t affine_param = 0;  // parameter kept by member_affine()

  // Checks the shape invariants; throws arith_error on violation.
  void validate() const;

  // Builds a pencil from a parsed pencil file holding a single polynomial.
  static PencilSpec from_file(const PencilFile& pf);

  // Member at a projective parameter value (two-parameter pencils only).
  // The value (0, 0) is rejected.
  MultiPoly member(const QElem& v0, const QElem& v1) const;

  // Member in the declared affine chart: the parameter other than
  // `affine_param` is set to 1 (two-parameter pencils only).
  MultiPoly member_affine() const;
};

// A reducible branch sextic split as a product of two homogeneous cubics.
// The cubic coefficients may involve parameter variables (for a family of
// sextics); those must be declared in param_vars.
struct BranchSextic {
  std::vector<std::string> point_vars;  // exactly three, pairwise distinct
  MultiPoly f3, g3;                     // homogeneous cubics
  long field_d = 0;
  std::vector<std::string> param_vars;  // disjoint from the point variables

  void validate() const;

  // Builds a branch sextic from a parsed pencil file holding two cubics.
  static BranchSextic from_file(const PencilFile& pf);

  MultiPoly product() const { return f3 * g3; }
};

// An invertible projective change of coordinates, acting on polynomials by
// substituting each point variable with the linear form given by its row.
class ProjTransform {
 public:
  // Throws arith_error("singular transform") when the matrix is singular.
  explicit ProjTransform(const std::array<std::array<QElem, 3>, 3>& m);

  static ProjTransform identity();

  const std::array<std::array<QElem, 3>, 3>& matrix() const { return m_; }
  QElem det() const;
  ProjTransform inverse() const;

  // Substitutes vars[i] -> sum_j m[i][j] * vars[j].  The input must be
  // homogeneous in the point variables; the degree is preserved.
  MultiPoly apply(const MultiPoly& q,
                  const std::vector<std::string>& point_vars) const;

 private:
  ProjTransform() = default;
  std::array<std::array<QElem, 3>, 3> m_;
};

// Composition in application order: compose(a, b).apply(q) equals
// b.apply(a.apply(q)); the underlying matrix is a.matrix() * b.matrix().
ProjTransform compose(const ProjTransform& a, const ProjTransform& b);

// Coordinate change applied to a whole pencil or branch sextic.
PencilSpec apply_transform(const ProjTransform& t, const PencilSpec& p);
BranchSextic apply_transform(const ProjTransform& t, const BranchSextic& s);

// Resultant of the full branch sextic f3 * g3 and the pencil polynomial with
// respect to one point variable.  The pencil must involve that variable, and
// both objects must use the same point variables.
MultiPoly projection_resultant(const BranchSextic& s, const PencilSpec& p,
                               const std::string& var);

// Rational parameterization of the conic family through (0:0:1), (0:1:0)
// and (1:0:0) that is tangent to the line x0 = x1 at the first point, cut
// out against a pencil in normal position: with the family written as
// (x0 : x1 : x2) = (z - 1 : z (z - 1) : p z), the pencil polynomial pulls
// back to c * z^a * (z-1)^b * r with r linear in z, and solving r = 0 gives
// one residual point per conic.  The returned coordinates are coprime
// polynomials in the family variable and the pencil parameters.
struct ConicParam {
  MultiPoly x0, x1, x2;
  int mult_z = 0;   // exponent peeled at z = 0
  int mult_z1 = 0;  // exponent peeled at z = 1
};

// Throws when the peeled exponents do not sum to 5 or 6, when the residual
// factor is not linear in z ("condition (†) violated"), or when the family
// variable collides with a pencil variable.
ConicParam conic_parameterize(const PencilSpec& p, const std::string& family_var);

}  // namespace ellfib
