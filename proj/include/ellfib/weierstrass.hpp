// Elliptic-curve models over a rational function field k(t): long and short
// Weierstrass forms, standard invariants, (u, r, s, t) isomorphisms,
// minimalization, quadratic base change, the group law, and the classical
// reductions from plane cubics and genus-1 quartics to Weierstrass form.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellfib/parse.hpp"
#include "ellfib/ratfunc.hpp"

namespace ellfib {

struct Invariants {
  RatFunc b2, b4, b6, b8, c4, c6, delta, j;
};

// Isomorphism data (u, r, s, t): x = x'/u^2 + r, y = y'/u^3 + s x'/u^2 + t.
// Under apply: a1' = u (a1 + 2s), ..., and c4' = u^4 c4, c6' = u^6 c6,
// delta' = u^12 delta.
struct IsoData {
  RatFunc u{1}, r{0}, s{0}, t{0};
  IsoData inverse() const;
  IsoData compose(const IsoData& then) const;
};

class WeierstrassModel {
 public:
  // Short form y^2 = x^3 + A x + B.
  static WeierstrassModel short_form(const std::string& base_var, RatFunc A,
                                     RatFunc B, long field_d = 0,
                                     std::vector<std::string> params = {});
  // Long form y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6.
  static WeierstrassModel long_form(const std::string& base_var, RatFunc a1,
                                    RatFunc a2, RatFunc a3, RatFunc a4, RatFunc a6,
                                    long field_d = 0,
                                    std::vector<std::string> params = {});
  static WeierstrassModel from_file(const ModelFile& mf);

  const std::string& base_var() const { return base_; }
  long field_d() const { return field_d_; }
  const std::vector<std::string>& params() const { return params_; }
  const RatFunc& a1() const { return a1_; }
  const RatFunc& a2() const { return a2_; }
  const RatFunc& a3() const { return a3_; }
  const RatFunc& a4() const { return a4_; }
  const RatFunc& a6() const { return a6_; }
  bool is_short() const;

  Invariants invariants() const;  // throws "singular model" iff delta == 0

  // Short form via x -> x + (b2/12 shift absorbed): A = -c4/48, B = -c6/864.
  WeierstrassModel to_short() const;

  // Applies g = (u, r, s, t); the result M' satisfies c4 = u^4 c4', etc.
  WeierstrassModel apply_iso(const IsoData& g) const;

  // Clears denominators and rational content of a short model: returns the
  // model with A, B polynomial with canonical content, plus the iso applied.
  std::pair<WeierstrassModel, IsoData> integralize() const;

  // Optional multiplicity hints for the discriminant (candidate factors; each
  // is verified by exact division before use, so hints are never trusted).
  const std::vector<MultiPoly>& delta_factor_hints() const { return hints_; }
  void add_delta_factor_hint(const MultiPoly& h) { hints_.push_back(h); }

  std::string str() const;

 private:
  std::string base_;
  long field_d_ = 0;
  std::vector<std::string> params_;
  RatFunc a1_, a2_, a3_, a4_, a6_;
  std::vector<MultiPoly> hints_;
};

// --- Isomorphism search -----------------------------------------------------

// Finds g with apply_iso(M1, g) == M2, if one exists over the models' field.
std::optional<IsoData> is_isomorphic(const WeierstrassModel& M1,
                                     const WeierstrassModel& M2);

// --- Minimal models ----------------------------------------------------------

// Minimal short model: at every finite place not both ord(A) >= 4 and
// ord(B) >= 6; A, B polynomial with canonical content.  Returns the iso.
std::pair<WeierstrassModel, IsoData> minimalize(const WeierstrassModel& M);

// --- Quadratic base change ---------------------------------------------------

// A branch point of the double cover of the base line.
struct BasePoint {
  enum class Kind { Finite, Infinity, Symbolic } kind = Kind::Finite;
  QElem value;       // Finite
  std::string name;  // Symbolic parameter
  static BasePoint finite(const QElem& v) { return {Kind::Finite, v, ""}; }
  static BasePoint infinity() { return {Kind::Infinity, QElem(0), ""}; }
  static BasePoint symbolic(const std::string& n) { return {Kind::Symbolic, QElem(0), n}; }
  friend bool operator==(const BasePoint& a, const BasePoint& b) {
    return a.kind == b.kind && a.value == b.value && a.name == b.name;
  }
};

// Pulls the model back along a degree-2 cover of the base line branched at
// the two given points, using the pinned charts:
//   {0, inf}:  t -> t^2        {p, inf}:  t -> p + t^2
//   {p, q}  :  t -> q (p + t^2) / (q + t^2)   (p at t = 0, q at t = inf).
// A custom substitution mu = N(t)/D(t) may be supplied instead.
WeierstrassModel quadratic_base_change(const WeierstrassModel& M,
                                       const BasePoint& p1, const BasePoint& p2,
                                       const std::string& new_var);
WeierstrassModel base_change_substitute(const WeierstrassModel& M,
                                        const RatFunc& mu_of_t,
                                        const std::string& new_var);

// --- Group law ---------------------------------------------------------------

struct FnFieldPoint {
  bool at_infinity = true;
  RatFunc x, y;
  static FnFieldPoint O() { return {}; }
  static FnFieldPoint affine(RatFunc x, RatFunc y) {
    return {false, std::move(x), std::move(y)};
  }
  friend bool operator==(const FnFieldPoint& P, const FnFieldPoint& Q) {
    if (P.at_infinity || Q.at_infinity) return P.at_infinity == Q.at_infinity;
    return P.x == Q.x && P.y == Q.y;
  }
};

bool on_curve(const WeierstrassModel& M, const FnFieldPoint& P);
FnFieldPoint point_neg(const WeierstrassModel& M, const FnFieldPoint& P);
FnFieldPoint point_add(const WeierstrassModel& M, const FnFieldPoint& P,
                       const FnFieldPoint& Q);
FnFieldPoint point_mul(const WeierstrassModel& M, const FnFieldPoint& P, long n);

// --- Classical reductions ----------------------------------------------------

// Genus-1 quartic w^2 = q(x) (deg 3 or 4, squarefree in x).
struct QuarticModel {
  std::string var;  // the x variable
  MultiPoly q;      // polynomial in var over the parameter ring
  long field_d = 0;
  std::vector<std::string> params;
};

// A section of the quartic: either a declared root of q (w = 0) or an affine
// point (x0, w0) with w0 != 0; detection helpers live in the pipelines.
struct QuarticSection {
  enum class Kind { Root, Point, None } kind = Kind::None;
  RatFunc x0, w0;
  static QuarticSection root(RatFunc r) { return {Kind::Root, std::move(r), RatFunc(0)}; }
  static QuarticSection point(RatFunc x, RatFunc w) {
    return {Kind::Point, std::move(x), std::move(w)};
  }
  static QuarticSection none() { return {}; }
};

// Reduces w^2 = q(x) to a Weierstrass model of its Jacobian.  Errors:
// "degenerate quartic" (q not squarefree), "no section given" (deg 4, leading
// coefficient not a square, and no section supplied).
WeierstrassModel quartic_to_weierstrass(const QuarticModel& Q,
                                        const QuarticSection& sec);

// Record of the birational maps used by nagell_reduce: images of x and y in
// terms of the original affine chart coordinates.
struct NagellMaps {
  RatFunc x_of, y_of;  // in terms of the input variables
  bool flex_case = false;
};

// Classical reduction of a plane cubic with a rational point to Weierstrass
// form over k(params).  The cubic is affine in (xvar, yvar) with coefficients
// in the remaining variables.  Errors: "reducible member" (cubic factors),
// "genus 0 member" (the point is singular), point not on the cubic.
std::pair<WeierstrassModel, NagellMaps> nagell_reduce(
    const MultiPoly& cubic, const std::string& xvar, const std::string& yvar,
    const std::string& base_var, const RatFunc& px, const RatFunc& py,
    long field_d = 0);

// Squarefree test for q as a univariate polynomial in var over the fraction
// field of the remaining variables.
bool squarefree_in(const MultiPoly& q, const std::string& var);

}  // namespace ellfib
