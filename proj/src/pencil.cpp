#include "ellfib/pencil.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "ellfib/polyops.hpp"

namespace ellfib {

namespace {

// Largest total degree in `vars` over the terms of p (-1 for zero).
int degree_in_vars(const MultiPoly& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return -1;
  std::vector<std::size_t> idx;
  for (const auto& v : vars) {
    auto it = std::find(p.vars().begin(), p.vars().end(), v);
    if (it != p.vars().end()) idx.push_back(it - p.vars().begin());
  }
  int best = 0;
  for (const auto& [exps, coeff] : p.terms()) {
    (void)coeff;
    int d = 0;
    for (std::size_t i : idx) d += static_cast<int>(exps[i]);
    best = std::max(best, d);
  }
  return best;
}

void check_point_vars(const std::vector<std::string>& point_vars) {
  if (point_vars.size() != 3) throw arith_error("expected three point variables");
  std::set<std::string> seen(point_vars.begin(), point_vars.end());
  if (seen.size() != 3) throw arith_error("point variables must be distinct");
}

// Divides the three coordinates by their common factor and scales them by a
// shared unit so the first nonzero coordinate is in normal form.
void make_coprime(MultiPoly& x0, MultiPoly& x1, MultiPoly& x2) {
  MultiPoly g = gcd_multi(gcd_multi(x0, x1), x2);
  if (!g.is_zero() && !(g.is_constant() && g.constant_value() == QElem(1))) {
    x0 = x0.divexact(g);
    x1 = x1.divexact(g);
    x2 = x2.divexact(g);
  }
  for (MultiPoly* c : {&x0, &x1, &x2}) {
    if (c->is_zero()) continue;
    QElem unit = c->normalized().first;
    QElem inv = QElem(1) / unit;
    x0 = x0.scaled(inv);
    x1 = x1.scaled(inv);
    x2 = x2.scaled(inv);
    break;
  }
}

}  // namespace

void PencilSpec::validate() const {
  check_point_vars(point_vars);
  if (param_vars.empty()) throw arith_error("expected at least one parameter");
  std::set<std::string> names(point_vars.begin(), point_vars.end());
  for (const auto& v : param_vars) {
    if (!names.insert(v).second)
      throw arith_error("parameter name collides with another variable");
  }
  if (h.is_zero()) throw arith_error("pencil polynomial is zero");
  for (const auto& v : h.vars()) {
    if (!names.count(v))
      throw arith_error("pencil uses an undeclared variable: " + v);
  }
  if (degree_in_vars(h, point_vars) != degree || degree <= 0)
    throw arith_error("pencil degree does not match its polynomial");
  if (!h.is_homogeneous_in(point_vars, degree))
    throw arith_error("pencil is not homogeneous in the point variables");
  if (!h.is_homogeneous_in(param_vars, 1))
    throw arith_error("pencil is not linear in the parameters");
  if (h.field_d() != 0 && h.field_d() != field_d)
    throw arith_error("pencil coefficients do not live in the declared field");
  if (affine_param >= param_vars.size())
    throw arith_error("affine chart index out of range");
}

PencilSpec PencilSpec::from_file(const PencilFile& pf) {
  if (pf.polys.size() != 1)
    throw arith_error("expected a single pencil polynomial");
  PencilSpec p;
  p.point_vars = pf.point_vars;
  p.param_vars = pf.param_vars;
  p.h = pf.polys[0];
  p.field_d = pf.field_d;
  p.degree = degree_in_vars(p.h, p.point_vars);
  p.validate();
  return p;
}

MultiPoly PencilSpec::member(const QElem& v0, const QElem& v1) const {
  if (param_vars.size() != 2)
    throw arith_error("pencil is not two-parameter");
  if (v0.is_zero() && v1.is_zero())
    throw arith_error("pencil value (0, 0)");
  std::map<std::string, MultiPoly> bind;
  bind[param_vars[0]] = MultiPoly::constant(v0);
  bind[param_vars[1]] = MultiPoly::constant(v1);
  return h.subst(bind).drop_unused_vars();
}

MultiPoly PencilSpec::member_affine() const {
  if (param_vars.size() != 2)
    throw arith_error("pencil is not two-parameter");
  std::map<std::string, MultiPoly> bind;
  bind[param_vars[1 - affine_param]] = MultiPoly(1);
  return h.subst(bind).drop_unused_vars();
}

void BranchSextic::validate() const {
  check_point_vars(point_vars);
  std::set<std::string> names(point_vars.begin(), point_vars.end());
  for (const auto& v : param_vars) {
    if (!names.insert(v).second)
      throw arith_error("parameter name collides with another variable");
  }
  for (const MultiPoly* c : {&f3, &g3}) {
    if (c->is_zero() || degree_in_vars(*c, point_vars) != 3 ||
        !c->is_homogeneous_in(point_vars, 3))
      throw arith_error("branch factor is not a homogeneous cubic");
    for (const auto& v : c->vars()) {
      if (!names.count(v))
        throw arith_error("branch factor uses an undeclared variable: " + v);
    }
    if (c->field_d() != 0 && c->field_d() != field_d)
      throw arith_error("branch coefficients do not live in the declared field");
  }
}

BranchSextic BranchSextic::from_file(const PencilFile& pf) {
  if (pf.polys.size() != 2)
    throw arith_error("expected exactly two cubic factors");
  BranchSextic s;
  s.point_vars = pf.point_vars;
  s.f3 = pf.polys[0];
  s.g3 = pf.polys[1];
  s.field_d = pf.field_d;
  s.param_vars = pf.param_vars;
  s.validate();
  return s;
}

ProjTransform::ProjTransform(const std::array<std::array<QElem, 3>, 3>& m)
    : m_(m) {
  if (det().is_zero()) throw arith_error("singular transform");
}

ProjTransform ProjTransform::identity() {
  std::array<std::array<QElem, 3>, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = QElem(i == j ? 1 : 0);
  return ProjTransform(m);
}

QElem ProjTransform::det() const {
  return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
         m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
         m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
}

ProjTransform ProjTransform::inverse() const {
  QElem d = det();
  std::array<std::array<QElem, 3>, 3> adj;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // adj[j][i] is the cofactor of m[i][j]; the cyclic index choice
      // absorbs the (-1)^(i+j) sign.
      adj[j][i] = (m_[r0][c0] * m_[r1][c1] - m_[r0][c1] * m_[r1][c0]) / d;
    }
  }
  return ProjTransform(adj);
}

MultiPoly ProjTransform::apply(const MultiPoly& q,
                               const std::vector<std::string>& point_vars) const {
  check_point_vars(point_vars);
  int deg = degree_in_vars(q, point_vars);
  if (deg > 0 && !q.is_homogeneous_in(point_vars, deg))
    throw arith_error("polynomial is not homogeneous in the point variables");
  std::map<std::string, MultiPoly> bind;
  for (int i = 0; i < 3; ++i) {
    MultiPoly row;
    for (int j = 0; j < 3; ++j)
      row += MultiPoly::variable(point_vars[j]).scaled(m_[i][j]);
    bind[point_vars[i]] = row;
  }
  return q.subst(bind);
}

ProjTransform compose(const ProjTransform& a, const ProjTransform& b) {
  std::array<std::array<QElem, 3>, 3> m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      QElem s(0);
      for (int k = 0; k < 3; ++k) s = s + a.matrix()[i][k] * b.matrix()[k][j];
      m[i][j] = s;
    }
  }
  return ProjTransform(m);
}

PencilSpec apply_transform(const ProjTransform& t, const PencilSpec& p) {
  p.validate();
  PencilSpec out = p;
  out.h = t.apply(p.h, p.point_vars);
  out.validate();
  return out;
}

BranchSextic apply_transform(const ProjTransform& t, const BranchSextic& s) {
  s.validate();
  BranchSextic out = s;
  out.f3 = t.apply(s.f3, s.point_vars);
  out.g3 = t.apply(s.g3, s.point_vars);
  out.validate();
  return out;
}

MultiPoly projection_resultant(const BranchSextic& s, const PencilSpec& p,
                               const std::string& var) {
  s.validate();
  p.validate();
  if (s.point_vars != p.point_vars)
    throw arith_error("point variable mismatch");
  if (std::find(p.point_vars.begin(), p.point_vars.end(), var) ==
      p.point_vars.end())
    throw arith_error("projection variable is not a point variable");
  if (p.h.degree(var) <= 0)
    throw arith_error("pencil does not involve the projection variable");
  // Pencil first: for a member of degree one in `var` this is
  // lc^deg(sextic) times the sextic with the variable eliminated, i.e. the
  // actual restriction of the sextic -- the reversed order would negate it
  // whenever the two degrees are odd, changing the quadratic twist class of
  // the double cover.
  return resultant(p.h, s.product(), var).drop_unused_vars();
}

ConicParam conic_parameterize(const PencilSpec& p,
                              const std::string& family_var) {
  p.validate();
  for (const auto& v : p.point_vars)
    if (v == family_var) throw arith_error("family variable collides with a point variable");
  for (const auto& v : p.param_vars)
    if (v == family_var) throw arith_error("family variable collides with a parameter");

  std::string zvar = "z";
  auto taken = [&](const std::string& name) {
    return name == family_var ||
           std::find(p.point_vars.begin(), p.point_vars.end(), name) !=
               p.point_vars.end() ||
           std::find(p.param_vars.begin(), p.param_vars.end(), name) !=
               p.param_vars.end();
  };
  while (taken(zvar)) zvar += "_";

  MultiPoly z = MultiPoly::variable(zvar);
  MultiPoly fam = MultiPoly::variable(family_var);
  std::map<std::string, MultiPoly> bind;
  bind[p.point_vars[0]] = z - MultiPoly(1);
  bind[p.point_vars[1]] = z * z - z;
  bind[p.point_vars[2]] = fam * z;
  MultiPoly pulled = p.h.subst(bind);

  int a = ord_at(pulled, z);
  int b = ord_at(pulled, z - MultiPoly(1));
  if (a + b != 5 && a + b != 6)
    throw arith_error("unexpected base point multiplicity");
  MultiPoly residual =
      pulled.divexact(z.pow(a) * (z - MultiPoly(1)).pow(b));
  if (residual.degree(zvar) != 1)
    throw arith_error("condition (†) violated");

  MultiPoly r1 = residual.coeff_of(zvar, 1);
  MultiPoly r0 = residual.coeff_of(zvar, 0);
  // z0 = -r0/r1; the coordinates below are (z0 - 1 : z0 (z0 - 1) : p z0)
  // with denominators cleared by r1^2.
  ConicParam out;
  out.mult_z = a;
  out.mult_z1 = b;
  out.x0 = -(r0 + r1) * r1;
  out.x1 = r0 * (r0 + r1);
  out.x2 = -(fam * r0 * r1);
  make_coprime(out.x0, out.x1, out.x2);

  std::map<std::string, MultiPoly> back;
  back[p.point_vars[0]] = out.x0;
  back[p.point_vars[1]] = out.x1;
  back[p.point_vars[2]] = out.x2;
  if (!p.h.subst(back).is_zero())
    throw arith_error("parameterization does not satisfy the pencil");
  return out;
}

}  // namespace ellfib
