#include "ellfib/weierstrass.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "ellfib/polyops.hpp"

namespace ellfib {

// ---------------------------------------------------------------------------
// IsoData
// ---------------------------------------------------------------------------

IsoData IsoData::compose(const IsoData& then) const {
  // Apply *this first, `then` second; composition law derived from the
  // substitution x = x'/u^2 + r, y = y'/u^3 + s x'/u^2 + t.
  IsoData g;
  g.u = u * then.u;
  g.r = then.r / (u * u) + r;
  g.s = s + then.s / u;
  g.t = t + s * then.r / (u * u) + then.t / (u * u * u);
  return g;
}

IsoData IsoData::inverse() const {
  IsoData g;
  g.u = RatFunc(1) / u;
  g.r = -(r * u * u);
  g.s = -(s * u);
  g.t = (s * r - t) * u * u * u;
  return g;
}

// ---------------------------------------------------------------------------
// WeierstrassModel
// ---------------------------------------------------------------------------

WeierstrassModel WeierstrassModel::short_form(const std::string& base_var,
                                              RatFunc A, RatFunc B, long field_d,
                                              std::vector<std::string> params) {
  WeierstrassModel m;
  m.base_ = base_var;
  m.field_d_ = field_d;
  m.params_ = std::move(params);
  m.a4_ = std::move(A);
  m.a6_ = std::move(B);
  return m;
}

WeierstrassModel WeierstrassModel::long_form(const std::string& base_var,
                                             RatFunc a1, RatFunc a2, RatFunc a3,
                                             RatFunc a4, RatFunc a6, long field_d,
                                             std::vector<std::string> params) {
  WeierstrassModel m;
  m.base_ = base_var;
  m.field_d_ = field_d;
  m.params_ = std::move(params);
  m.a1_ = std::move(a1);
  m.a2_ = std::move(a2);
  m.a3_ = std::move(a3);
  m.a4_ = std::move(a4);
  m.a6_ = std::move(a6);
  return m;
}

WeierstrassModel WeierstrassModel::from_file(const ModelFile& mf) {
  auto get = [&](const std::string& k) -> RatFunc {
    auto it = mf.entries.find(k);
    return it == mf.entries.end() ? RatFunc(0) : RatFunc(it->second);
  };
  if (mf.entries.count("A") || mf.entries.count("B"))
    return short_form(mf.base_var, get("A"), get("B"), mf.field_d, mf.params);
  return long_form(mf.base_var, get("a1"), get("a2"), get("a3"), get("a4"),
                   get("a6"), mf.field_d, mf.params);
}

bool WeierstrassModel::is_short() const {
  return a1_.is_zero() && a2_.is_zero() && a3_.is_zero();
}

Invariants WeierstrassModel::invariants() const {
  Invariants v;
  v.b2 = a1_ * a1_ + RatFunc(4) * a2_;
  v.b4 = RatFunc(2) * a4_ + a1_ * a3_;
  v.b6 = a3_ * a3_ + RatFunc(4) * a6_;
  v.b8 = a1_ * a1_ * a6_ + RatFunc(4) * a2_ * a6_ - a1_ * a3_ * a4_ +
         a2_ * a3_ * a3_ - a4_ * a4_;
  v.c4 = v.b2 * v.b2 - RatFunc(24) * v.b4;
  v.c6 = -(v.b2 * v.b2 * v.b2) + RatFunc(36) * v.b2 * v.b4 - RatFunc(216) * v.b6;
  v.delta = -(v.b2 * v.b2) * v.b8 - RatFunc(8) * v.b4.pow(3) -
            RatFunc(27) * v.b6 * v.b6 + RatFunc(9) * v.b2 * v.b4 * v.b6;
  if (v.delta.is_zero()) throw arith_error("singular model");
  v.j = v.c4.pow(3) / v.delta;
  return v;
}

WeierstrassModel WeierstrassModel::apply_iso(const IsoData& g) const {
  const RatFunc &u = g.u, &r = g.r, &s = g.s, &t = g.t;
  if (u.is_zero()) throw arith_error("isomorphism with u = 0");
  RatFunc u2 = u * u;
  RatFunc u3 = u2 * u;
  WeierstrassModel m = *this;
  m.hints_.clear();
  m.a1_ = u * (a1_ + RatFunc(2) * s);
  m.a2_ = u2 * (a2_ - s * a1_ + RatFunc(3) * r - s * s);
  m.a3_ = u3 * (a3_ + r * a1_ + RatFunc(2) * t);
  m.a4_ = u2 * u2 *
          (a4_ - s * a3_ + RatFunc(2) * r * a2_ - (t + r * s) * a1_ +
           RatFunc(3) * r * r - RatFunc(2) * s * t);
  m.a6_ = u3 * u3 *
          (a6_ + r * a4_ + r * r * a2_ + r.pow(3) - t * a3_ - t * t - r * t * a1_);
  return m;
}

WeierstrassModel WeierstrassModel::to_short() const {
  if (is_short()) return *this;
  Invariants v = invariants();
  WeierstrassModel m = short_form(base_, -v.c4 / RatFunc(48), -v.c6 / RatFunc(864),
                                  field_d_, params_);
  m.hints_ = hints_;
  return m;
}

std::pair<WeierstrassModel, IsoData> WeierstrassModel::integralize() const {
  return minimalize(*this);
}

std::string WeierstrassModel::str() const {
  std::ostringstream os;
  os << "y^2";
  if (!a1_.is_zero()) os << " + (" << a1_.str() << ")*x*y";
  if (!a3_.is_zero()) os << " + (" << a3_.str() << ")*y";
  os << " = x^3";
  if (!a2_.is_zero()) os << " + (" << a2_.str() << ")*x^2";
  if (!a4_.is_zero()) os << " + (" << a4_.str() << ")*x";
  if (!a6_.is_zero()) os << " + (" << a6_.str() << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Isomorphism search
// ---------------------------------------------------------------------------

namespace {

// Attempts to complete a candidate scaling u into full IsoData M1 -> M2.
std::optional<IsoData> complete_iso(const WeierstrassModel& M1,
                                    const WeierstrassModel& M2, const RatFunc& u) {
  // With u fixed, the remaining (r, s, t) are forced linearly:
  //   a1' = u(a1 + 2s)              => s
  //   a2' = u^2(a2 - s a1 + 3r-s^2) => r
  //   a3' = u^3(a3 + r a1 + 2t)     => t
  if (u.is_zero()) return std::nullopt;
  RatFunc s = (M2.a1() / u - M1.a1()) / RatFunc(2);
  RatFunc r =
      (M2.a2() / (u * u) - M1.a2() + s * M1.a1() + s * s) / RatFunc(3);
  RatFunc t = (M2.a3() / (u.pow(3)) - M1.a3() - r * M1.a1()) / RatFunc(2);
  IsoData g{u, r, s, t};
  WeierstrassModel img = M1.apply_iso(g);
  if (img.a1() == M2.a1() && img.a2() == M2.a2() && img.a3() == M2.a3() &&
      img.a4() == M2.a4() && img.a6() == M2.a6())
    return g;
  return std::nullopt;
}

}  // namespace

std::optional<IsoData> is_isomorphic(const WeierstrassModel& M1,
                                     const WeierstrassModel& M2) {
  if (M1.base_var() != M2.base_var()) return std::nullopt;
  Invariants v1 = M1.invariants();
  Invariants v2 = M2.invariants();
  if (v1.j != v2.j) return std::nullopt;
  long d = std::max(M1.field_d(), M2.field_d());
  std::vector<RatFunc> candidates;
  if (!v1.c4.is_zero() && !v1.c6.is_zero()) {
    // Generic j: u^2 = (c6' c4) / (c6 c4') is forced.
    RatFunc u2 = (v2.c6 * v1.c4) / (v1.c6 * v2.c4);
    if (auto u = ratfunc_sqrt(u2, d)) candidates.push_back(*u);
  } else if (v1.c4.is_zero()) {
    // j = 0: u^6 = c6'/c6, determined up to cube roots of unity; over a real
    // field try u^3 = +-sqrt(c6'/c6) and then a cube root.
    RatFunc u6 = v2.c6 / v1.c6;
    if (auto u = ratfunc_nth_root(u6, 6, d)) candidates.push_back(*u);
    if (auto u3 = ratfunc_sqrt(u6, d)) {
      if (auto u = ratfunc_nth_root(-*u3, 3, d)) candidates.push_back(*u);
    }
  } else {
    // j = 1728: u^4 = c4'/c4.
    RatFunc u4 = v2.c4 / v1.c4;
    if (auto u = ratfunc_nth_root(u4, 4, d)) candidates.push_back(*u);
    if (auto u2 = ratfunc_sqrt(u4, d)) {
      if (auto u = ratfunc_sqrt(-*u2, d)) candidates.push_back(*u);
    }
  }
  for (const RatFunc& u : candidates) {
    for (int sign = 0; sign < 2; ++sign) {
      if (auto g = complete_iso(M1, M2, sign ? -u : u)) return g;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Minimalization
// ---------------------------------------------------------------------------

namespace {

// All non-constant coprime factors of the given polynomials, refined across
// every variable (base variable and parameters alike).
std::vector<MultiPoly> factor_basis(const std::vector<MultiPoly>& polys) {
  // Split each polynomial into squarefree factors variable by variable.
  std::vector<MultiPoly> pool;
  std::vector<MultiPoly> queue;
  for (const auto& p : polys)
    if (!p.is_zero() && !p.is_constant()) queue.push_back(p);
  while (!queue.empty()) {
    MultiPoly p = queue.back();
    queue.pop_back();
    if (p.is_constant()) continue;
    std::string var = p.vars().front();
    for (const auto& v : p.vars())
      if (p.degree(v) > 0) {
        var = v;
        break;
      }
    SquarefreeDecomposition sd = squarefree_decompose(p, var);
    for (const auto& f : sd.factors) pool.push_back(f.factor);
    if (!sd.content.is_constant()) queue.push_back(sd.content);
  }
  // Pairwise refinement with full multivariate gcds.
  auto push_unique = [](std::vector<MultiPoly>& v, const MultiPoly& f) {
    if (f.is_constant()) return;
    MultiPoly n = f.normalized().second;
    for (const auto& g : v)
      if (g == n) return;
    v.push_back(n);
  };
  std::vector<MultiPoly> basis;
  for (const auto& f : pool) push_unique(basis, f);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
        MultiPoly g = gcd_multi(basis[i], basis[j]);
        if (g.is_constant()) continue;
        MultiPoly a = basis[i].divexact(g);
        MultiPoly b = basis[j].divexact(g);
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(j));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        push_unique(basis, g);
        push_unique(basis, a);
        push_unique(basis, b);
        changed = true;
      }
  }
  std::sort(basis.begin(), basis.end(), poly_less);
  return basis;
}

int ord_ratfunc(const RatFunc& f, const MultiPoly& pi) {
  if (f.is_zero()) throw arith_error("order of zero function");
  return ord_at(f.num(), pi) - ord_at(f.den(), pi);
}

// Exponent balancing a (ord A) and b (ord B): the minimal k with
// a + 4k >= 0 and b + 6k >= 0; minimality of the resulting model follows.
long reduction_exponent(std::optional<long> a, std::optional<long> b) {
  auto ceil_div = [](long n, long d) { return n / d + (n % d > 0 ? 1 : 0); };
  long k = std::numeric_limits<long>::min();
  if (a) k = std::max(k, ceil_div(-*a, 4));
  if (b) k = std::max(k, ceil_div(-*b, 6));
  return k;
}

// Prime factorization by trial division; a residual cofactor > 1 is kept as
// its own basis entry (deterministic, exact; only canonical-form granularity
// is affected).
std::vector<std::pair<mpz_class, long>> factor_int(mpz_class n) {
  std::vector<std::pair<mpz_class, long>> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  mpz_class p = 17;
  while (p * p <= n && p < 1000000) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
    p += 2;
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Rational content of a polynomial with QElem coefficients.
Rat rational_content(const MultiPoly& p) {
  mpz_class num_gcd = 0, den_lcm = 1;
  auto fold = [&](const Rat& r) {
    if (r == 0) return;
    mpz_class n = r.get_num(), d = r.get_den();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  };
  for (const auto& [e, c] : p.terms()) {
    fold(c.a());
    fold(c.b());
  }
  Rat content(num_gcd, den_lcm);
  content.canonicalize();
  return content;
}

}  // namespace

std::pair<WeierstrassModel, IsoData> minimalize(const WeierstrassModel& M) {
  WeierstrassModel S = M.to_short();
  RatFunc A = S.a4();
  RatFunc B = S.a6();
  // Singularity test on cleared denominators: 4A^3 + 27B^2 = 0 iff the
  // combined numerator vanishes, and this avoids reducing a huge fraction.
  MultiPoly sing = (A.num().pow(3) * B.den().pow(2)).scaled(QElem(4)) +
                   (B.num().pow(2) * A.den().pow(3)).scaled(QElem(27));
  if (sing.is_zero()) throw arith_error("singular model");

  std::vector<MultiPoly> polys;
  for (const RatFunc* f : {&A, &B}) {
    if (f->is_zero()) continue;
    polys.push_back(f->num());
    polys.push_back(f->den());
  }
  const std::string& var = S.base_var();
  std::vector<MultiPoly> basis;
  if (!M.delta_factor_hints().empty() && !A.is_zero() && !B.is_zero()) {
    // Fast route.  A base-variable prime needs rescaling only when it divides
    // a denominator (negative order) or divides both numerators to high order
    // (positive order on A and B simultaneously).  The hints plus the
    // denominators cover the first kind directly; any missed common numerator
    // factor survives in both stripped cofactors, so one gcd of those closes
    // the gap.  This never factors A or B outright.
    std::vector<MultiPoly> pool = M.delta_factor_hints();
    pool.push_back(A.den());
    pool.push_back(B.den());
    basis = hint_basis(pool, var);
    MultiPoly ca = factor_over_basis(A.num(), var, basis).cofactor;
    MultiPoly cb = factor_over_basis(B.num(), var, basis).cofactor;
    if (ca.degree(var) > 0 && cb.degree(var) > 0) {
      MultiPoly g = gcd_multi(ca, cb);
      if (g.degree(var) > 0) {
        pool = basis;
        for (const auto& f : squarefree_decompose(g, var).factors)
          pool.push_back(f.factor);
        basis = coprime_refine(pool, var);
      }
    }
    // Parameter-only candidates live in the var-free contents.
    std::vector<MultiPoly> contents;
    for (const auto& p : polys) {
      MultiPoly c = p.degree(var) > 0 ? content_wrt(p, var) : p;
      if (!c.is_constant()) contents.push_back(c);
    }
    for (const auto& f : factor_basis(contents)) basis.push_back(f);
  } else {
    basis = factor_basis(polys);
  }
  RatFunc u(1);
  for (const MultiPoly& pi : basis) {
    std::optional<long> a, b;
    if (!A.is_zero()) a = ord_ratfunc(A, pi);
    if (!B.is_zero()) b = ord_ratfunc(B, pi);
    long k = reduction_exponent(a, b);
    if (k > 0)
      u = u * RatFunc(pi).pow(static_cast<int>(k));
    else if (k < 0)
      u = u / RatFunc(pi).pow(static_cast<int>(-k));
  }
  RatFunc A1 = u.pow(4) * A;
  RatFunc B1 = u.pow(6) * B;
  // Rational-content canonicalization with the same exponent rule per prime.
  std::map<mpz_class, std::pair<long, long>> primes;  // p -> (ord in A, ord in B)
  auto fold_content = [&](const RatFunc& f, bool isA) {
    if (f.is_zero()) return;
    Rat c = rational_content(f.num()) / rational_content(f.den());
    for (const auto& [p, e] : factor_int(c.get_num()))
      (isA ? primes[p].first : primes[p].second) += e;
    for (const auto& [p, e] : factor_int(c.get_den()))
      (isA ? primes[p].first : primes[p].second) -= e;
  };
  fold_content(A1, true);
  fold_content(B1, false);
  Rat scale = 1;
  for (const auto& [p, ab] : primes) {
    std::optional<long> a, b;
    if (!A1.is_zero()) a = ab.first;
    if (!B1.is_zero()) b = ab.second;
    long k = reduction_exponent(a, b);
    for (long i = 0; i < k; ++i) scale *= Rat(p);
    for (long i = 0; i > k; --i) scale /= Rat(p);
  }
  u = u * RatFunc(MultiPoly::constant(QElem(scale)));
  IsoData g{u, RatFunc(0), RatFunc(0), RatFunc(0)};
  WeierstrassModel out = WeierstrassModel::short_form(
      S.base_var(), u.pow(4) * A, u.pow(6) * B, S.field_d(), S.params());
  for (const auto& h : M.delta_factor_hints()) out.add_delta_factor_hint(h);
  return {out, g};
}

// ---------------------------------------------------------------------------
// Quadratic base change
// ---------------------------------------------------------------------------

WeierstrassModel base_change_substitute(const WeierstrassModel& M,
                                        const RatFunc& mu_of_t,
                                        const std::string& new_var) {
  WeierstrassModel S = M.to_short();
  std::map<std::string, RatFunc> bind{{S.base_var(), mu_of_t}};
  RatFunc A = S.a4().subst(bind);
  RatFunc B = S.a6().subst(bind);
  // Parameter set: old params plus any variables of the substitution other
  // than the new base variable.
  std::vector<std::string> params = S.params();
  params.erase(std::remove(params.begin(), params.end(), S.base_var()),
               params.end());
  std::vector<std::string> subst_vars = mu_of_t.num().vars();
  for (const auto& v : mu_of_t.den().vars()) subst_vars.push_back(v);
  for (const auto& v : subst_vars)
    if (v != new_var &&
        std::find(params.begin(), params.end(), v) == params.end())
      params.push_back(v);
  std::sort(params.begin(), params.end());
  long field_d = S.field_d();
  for (const MultiPoly* p : {&mu_of_t.num(), &mu_of_t.den()})
    if (p->field_d() != 0) {
      if (field_d != 0 && field_d != p->field_d())
        throw arith_error("mixing elements of distinct quadratic fields");
      field_d = p->field_d();
    }
  WeierstrassModel pulled =
      WeierstrassModel::short_form(new_var, A, B, field_d, params);
  // Seed discriminant-factor hints with the images of the old factors and
  // the substitution denominator (verified downstream before use).
  std::vector<MultiPoly> hint_src = M.delta_factor_hints();
  {
    RatFunc delta = S.invariants().delta;
    if (!delta.num().is_constant()) hint_src.push_back(delta.num());
  }
  auto add_hint = [&](const MultiPoly& h) {
    if (!h.is_constant()) pulled.add_delta_factor_hint(h.normalized().second);
  };
  for (const auto& h : hint_src) {
    if (h.degree(S.base_var()) <= 0) continue;
    SquarefreeDecomposition sd = squarefree_decompose(h, S.base_var());
    for (const auto& f : sd.factors) {
      RatFunc img = f.factor.subst_rf(bind);
      add_hint(img.num());
    }
  }
  add_hint(mu_of_t.den());
  auto [minimal, iso] = minimalize(pulled);
  (void)iso;
  return minimal;
}

WeierstrassModel quadratic_base_change(const WeierstrassModel& M,
                                       const BasePoint& p1, const BasePoint& p2,
                                       const std::string& new_var) {
  if (p1 == p2) throw arith_error("coincident branch points");
  BasePoint a = p1, b = p2;
  if (a.kind == BasePoint::Kind::Infinity) std::swap(a, b);
  MultiPoly t = MultiPoly::variable(new_var);
  auto value_of = [&](const BasePoint& p) -> MultiPoly {
    return p.kind == BasePoint::Kind::Symbolic
               ? MultiPoly::variable(p.name)
               : MultiPoly::constant(p.value);
  };
  if (b.kind == BasePoint::Kind::Infinity) {
    MultiPoly va = value_of(a);
    // mu = p + t^2 (p = 0 gives the plain square chart).
    return base_change_substitute(M, RatFunc(va + t * t), new_var);
  }
  // Both branch points in the affine line: mu = v2 (v1 + t^2) / (v2 + t^2),
  // ramified over v1 at t = 0 and over v2 at t = inf.  Needs v2 != 0; swap if
  // the zero point is in the second slot.
  if (b.kind == BasePoint::Kind::Finite && b.value.is_zero()) std::swap(a, b);
  MultiPoly v1 = value_of(a);
  MultiPoly v2 = value_of(b);
  if (v2.is_zero()) throw arith_error("coincident branch points");
  MultiPoly num = v2 * (v1 + t * t);
  MultiPoly den = v2 + t * t;
  return base_change_substitute(M, RatFunc(num, den), new_var);
}

// ---------------------------------------------------------------------------
// Group law
// ---------------------------------------------------------------------------

bool on_curve(const WeierstrassModel& M, const FnFieldPoint& P) {
  if (P.at_infinity) return true;
  RatFunc lhs = P.y * P.y + M.a1() * P.x * P.y + M.a3() * P.y;
  RatFunc rhs = P.x.pow(3) + M.a2() * P.x * P.x + M.a4() * P.x + M.a6();
  return lhs == rhs;
}

FnFieldPoint point_neg(const WeierstrassModel& M, const FnFieldPoint& P) {
  if (P.at_infinity) return P;
  return FnFieldPoint::affine(P.x, -P.y - M.a1() * P.x - M.a3());
}

FnFieldPoint point_add(const WeierstrassModel& M, const FnFieldPoint& P,
                       const FnFieldPoint& Q) {
  if (!on_curve(M, P) || !on_curve(M, Q))
    throw arith_error("point not on the curve");
  if (P.at_infinity) return Q;
  if (Q.at_infinity) return P;
  RatFunc lambda, nu;
  if (P.x == Q.x) {
    // Either Q = -P (vertical line) or a doubling.
    RatFunc denom = RatFunc(2) * P.y + M.a1() * P.x + M.a3();
    if (denom.is_zero() || Q.y != P.y) {
      if (Q == point_neg(M, P)) return FnFieldPoint::O();
      if (denom.is_zero()) return FnFieldPoint::O();
    }
    lambda = (RatFunc(3) * P.x * P.x + RatFunc(2) * M.a2() * P.x + M.a4() -
              M.a1() * P.y) /
             denom;
    nu = P.y - lambda * P.x;
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
    nu = P.y - lambda * P.x;
  }
  RatFunc x3 = lambda * lambda + M.a1() * lambda - M.a2() - P.x - Q.x;
  RatFunc y3 = -(lambda + M.a1()) * x3 - nu - M.a3();
  return FnFieldPoint::affine(x3, y3);
}

FnFieldPoint point_mul(const WeierstrassModel& M, const FnFieldPoint& P, long n) {
  if (n < 0) return point_mul(M, point_neg(M, P), -n);
  FnFieldPoint acc = FnFieldPoint::O();
  FnFieldPoint base = P;
  while (n > 0) {
    if (n & 1) acc = point_add(M, acc, base);
    n >>= 1;
    if (n > 0) base = point_add(M, base, base);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Quartic reduction
// ---------------------------------------------------------------------------

bool squarefree_in(const MultiPoly& q, const std::string& var) {
  if (q.degree(var) <= 0) return true;
  return gcd_poly(q, q.derivative(var), var).degree(var) == 0;
}

namespace {

std::vector<RatFunc> rat_coeffs(const MultiPoly& q, const std::string& var) {
  std::vector<RatFunc> cs;
  for (const MultiPoly& c : uni_coeffs(q, var)) cs.emplace_back(c);
  return cs;
}

RatFunc eval_coeffs(const std::vector<RatFunc>& cs, const RatFunc& x) {
  RatFunc acc(0);
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Weierstrass model from w^2 = cubic with RatFunc coefficients.
WeierstrassModel cubic_to_model(const std::vector<RatFunc>& c,
                                const std::string& base_var, long field_d,
                                const std::vector<std::string>& params) {
  // (l w)^2 = l^2 (l x^3 + c2 x^2 + c1 x + c0); X = l x:
  // Y^2 = X^3 + c2 X^2 + c1 l X + c0 l^2.
  const RatFunc& l = c[3];
  return WeierstrassModel::long_form(base_var, RatFunc(0), c[2], RatFunc(0),
                                     c[1] * l, c[0] * l * l, field_d, params);
}

}  // namespace

WeierstrassModel quartic_to_weierstrass(const QuarticModel& Q,
                                        const QuarticSection& sec) {
  const std::string& x = Q.var;
  int deg = Q.q.degree(x);
  if (deg != 3 && deg != 4)
    throw arith_error("quartic reduction needs degree 3 or 4");
  if (!squarefree_in(Q.q, x)) throw arith_error("degenerate quartic");
  std::vector<RatFunc> c = rat_coeffs(Q.q, x);

  if (deg == 3) return cubic_to_model(c, Q.var, Q.field_d, Q.params);

  // Degree 4.  First bring a declared section to x = 0 if one was given.
  if (sec.kind == QuarticSection::Kind::Root) {
    if (!eval_coeffs(c, sec.x0).is_zero())
      throw arith_error("declared root is not a root of the quartic");
    // Shift the root to 0, then x -> 1/x (w -> w/x^2) exposes a cubic.
    std::vector<RatFunc> shifted(5, RatFunc(0));
    // q(x + r) coefficients via binomial expansion.
    for (int i = 0; i <= 4; ++i) {
      // contribution of c[i] (x + r)^i
      std::vector<RatFunc> binrow(static_cast<std::size_t>(i) + 1);
      // binomial coefficients row
      long bc = 1;
      for (int k = 0; k <= i; ++k) {
        binrow[static_cast<std::size_t>(k)] = RatFunc(bc);
        bc = bc * (i - k) / (k + 1);
      }
      RatFunc rpow(1);
      for (int k = i; k >= 0; --k) {
        // term x^k r^(i-k)
        shifted[static_cast<std::size_t>(k)] +=
            c[static_cast<std::size_t>(i)] * binrow[static_cast<std::size_t>(k)] * rpow;
        rpow = rpow * sec.x0;
      }
    }
    if (!shifted[0].is_zero())
      throw arith_error("declared root is not a root of the quartic");
    // w^2 = x (c3' x^3 + ...) -> reverse: W^2 = shifted[1] X^3 + shifted[2] X^2
    //                                 + shifted[3] X + shifted[4].
    std::vector<RatFunc> cub = {shifted[4], shifted[3], shifted[2], shifted[1]};
    if (cub[3].is_zero()) throw arith_error("degenerate quartic");
    return cubic_to_model(cub, Q.var, Q.field_d, Q.params);
  }

  if (sec.kind == QuarticSection::Kind::Point) {
    RatFunc w0 = sec.w0;
    if (w0.is_zero()) throw arith_error("section with w = 0 must be a root");
    if (eval_coeffs(c, sec.x0) != w0 * w0)
      throw arith_error("declared point is not on the curve");
    // Translate the point to x = 0 (constant term becomes w0^2), reverse
    // x -> 1/x: leading coefficient becomes the square w0^2.
    std::map<std::string, RatFunc> bind{
        {x, RatFunc(MultiPoly::variable(x)) + sec.x0}};
    RatFunc qs = RatFunc(Q.q).subst(bind);
    std::vector<RatFunc> cs(5, RatFunc(0));
    {
      // Extract coefficients of the substituted quartic in x.
      MultiPoly num = qs.num();
      MultiPoly den = qs.den();  // x-free
      if (den.degree(x) != 0) throw arith_error("unexpected denominator in x");
      auto nc = uni_coeffs(num, x);
      for (std::size_t i = 0; i < nc.size() && i < 5; ++i)
        cs[i] = RatFunc(nc[i], den);
    }
    // Reversal: leading coefficient cs[0] = w0^2 sits at degree 4; complete
    // the square with alpha = w0.
    std::vector<RatFunc> cc = {cs[4], cs[3], cs[2], cs[1], cs[0]};
    RatFunc alpha = w0;
    RatFunc beta = cc[3] / (RatFunc(2) * alpha);
    RatFunc gamma = (cc[2] - beta * beta) / (RatFunc(2) * alpha);
    RatFunc s = cc[1] - RatFunc(2) * beta * gamma;
    RatFunc tt = cc[0] - gamma * gamma;
    std::vector<RatFunc> cub = {
        s * s, -RatFunc(4) * beta * s + RatFunc(8) * alpha * tt,
        RatFunc(4) * beta * beta - RatFunc(16) * alpha * gamma,
        -RatFunc(8) * alpha};
    return cubic_to_model(cub, Q.var, Q.field_d, Q.params);
  }

  // No section: the leading coefficient must be a square in the field.
  auto alpha_opt = ratfunc_sqrt(c[4], Q.field_d);
  if (!alpha_opt) throw arith_error("no section given");
  RatFunc alpha = *alpha_opt;
  RatFunc beta = c[3] / (RatFunc(2) * alpha);
  RatFunc gamma = (c[2] - beta * beta) / (RatFunc(2) * alpha);
  RatFunc s = c[1] - RatFunc(2) * beta * gamma;
  RatFunc tt = c[0] - gamma * gamma;
  // w = alpha x^2 + beta x + gamma + v; eliminating x from the quadratic
  // 2 alpha v x^2 + (2 beta v - s) x + (v^2 + 2 gamma v - t) = 0 forces
  // Y^2 = -8 alpha v^3 + (4 beta^2 - 16 alpha gamma) v^2
  //       + (-4 beta s + 8 alpha t) v + s^2.
  std::vector<RatFunc> cub = {s * s, -RatFunc(4) * beta * s + RatFunc(8) * alpha * tt,
                              RatFunc(4) * beta * beta - RatFunc(16) * alpha * gamma,
                              -RatFunc(8) * alpha};
  return cubic_to_model(cub, Q.var, Q.field_d, Q.params);
}

// ---------------------------------------------------------------------------
// Nagell reduction
// ---------------------------------------------------------------------------

std::pair<WeierstrassModel, NagellMaps> nagell_reduce(
    const MultiPoly& cubic, const std::string& xvar, const std::string& yvar,
    const std::string& base_var, const RatFunc& px, const RatFunc& py,
    long field_d) {
  // Projective closure F(x, y, z) of the affine cubic.
  std::vector<std::string> pt_vars = {xvar, yvar};
  const std::string zvar = "Z__h";
  MultiPoly F;
  {
    int d = 0;
    for (const auto& [e, cf] : cubic.terms()) {
      int s = 0;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (const auto& v : pt_vars)
          if (cubic.vars()[i] == v) s += static_cast<int>(e[i]);
      d = std::max(d, s);
    }
    if (d != 3) throw arith_error("member is not a cubic");
    MultiPoly z = MultiPoly::variable(zvar);
    for (const auto& [e, cf] : cubic.terms()) {
      int s = 0;
      MultiPoly term = MultiPoly::constant(cf);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        term *= MultiPoly::variable(cubic.vars()[i]).pow(e[i]);
        for (const auto& v : pt_vars)
          if (cubic.vars()[i] == v) s += static_cast<int>(e[i]);
      }
      F += term * z.pow(static_cast<unsigned>(3 - s));
    }
  }
  auto eval_at_P = [&](const MultiPoly& g) -> RatFunc {
    return g.subst_rf({{xvar, px}, {yvar, py}, {zvar, RatFunc(1)}});
  };
  if (!eval_at_P(F).is_zero()) throw arith_error("point not on the cubic");
  RatFunc Tx = eval_at_P(F.derivative(xvar));
  RatFunc Ty = eval_at_P(F.derivative(yvar));
  RatFunc Tz = eval_at_P(F.derivative(zvar));
  if (Tx.is_zero() && Ty.is_zero() && Tz.is_zero())
    throw arith_error("genus 0 member");

  // Coordinate change sending P -> (0:1:0) and the tangent line to z = 0.
  // Columns: c1 spans the tangent line with P, c2 = P, c3 off the tangent.
  using Vec3 = std::array<RatFunc, 3>;
  Vec3 P{px, py, RatFunc(1)};
  auto dotT = [&](const Vec3& v) { return Tx * v[0] + Ty * v[1] + Tz * v[2]; };
  auto cross = [](const Vec3& a, const Vec3& b) {
    return Vec3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0]};
  };
  auto is_zero3 = [](const Vec3& v) {
    return v[0].is_zero() && v[1].is_zero() && v[2].is_zero();
  };
  std::vector<Vec3> tangent_dirs = {{Ty, -Tx, RatFunc(0)},
                                    {Tz, RatFunc(0), -Tx},
                                    {RatFunc(0), Tz, -Ty}};
  Vec3 c1{};
  bool found = false;
  for (const auto& v : tangent_dirs) {
    if (is_zero3(v) || is_zero3(cross(v, P))) continue;
    c1 = v;
    found = true;
    break;
  }
  if (!found) throw arith_error("degenerate tangent data");
  Vec3 c3{};
  bool have_c3 = false;
  for (int i = 0; i < 3; ++i) {
    Vec3 e{RatFunc(i == 0 ? 1 : 0), RatFunc(i == 1 ? 1 : 0),
           RatFunc(i == 2 ? 1 : 0)};
    if (dotT(e).is_zero()) continue;  // must be off the tangent line
    // determinant of (c1 | P | e)
    RatFunc det = c1[0] * (P[1] * e[2] - P[2] * e[1]) -
                  P[0] * (c1[1] * e[2] - c1[2] * e[1]) +
                  e[0] * (c1[1] * P[2] - c1[2] * P[1]);
    if (!det.is_zero()) {
      c3 = e;
      have_c3 = true;
      break;
    }
  }
  if (!have_c3) throw arith_error("degenerate tangent data");
  // Substitute (x, y, z) = c1 x' + P y' + c3 z'.
  MultiPoly X = MultiPoly::variable(xvar);
  MultiPoly Y = MultiPoly::variable(yvar);
  MultiPoly Z = MultiPoly::variable(zvar);
  auto lin = [&](int row) {
    return RatFunc(X) * c1[static_cast<std::size_t>(row)] +
           RatFunc(Y) * P[static_cast<std::size_t>(row)] +
           RatFunc(Z) * c3[static_cast<std::size_t>(row)];
  };
  RatFunc Fimg = F.subst_rf({{xvar, lin(0)}, {yvar, lin(1)}, {zvar, lin(2)}});
  MultiPoly Fp = Fimg.num();
  if (Fp.coeff_of(zvar, 0).is_zero())
    throw arith_error("reducible member");
  // Normal form checks: no y^3, no x y^2, and beta z y^2 with beta != 0.
  MultiPoly y2coef = Fp.coeff_of(yvar, 2);
  MultiPoly y3coef = Fp.coeff_of(yvar, 3);
  if (!y3coef.is_zero() || y2coef.degree(xvar) != 0 || y2coef.degree(zvar) != 1)
    throw arith_error("tangent normalization failed");
  RatFunc beta{y2coef.coeff_of(zvar, 1)};
  if (beta.is_zero()) throw arith_error("genus 0 member");
  // Affine chart z = 1: beta y^2 + q(x) y + c(x) = 0.
  MultiPoly qpoly = Fp.coeff_of(yvar, 1).subst({{zvar, MultiPoly(1)}});
  MultiPoly cpoly = Fp.coeff_of(yvar, 0).subst({{zvar, MultiPoly(1)}});
  // (2 beta y + q)^2 = q^2 - 4 beta c =: Q(x).
  RatFunc Qrf = (RatFunc(qpoly) * RatFunc(qpoly) -
                 RatFunc(4) * beta * RatFunc(cpoly));
  // Clear x-free denominators with a square so Q becomes polynomial.
  MultiPoly den = Qrf.den();
  if (den.degree(xvar) != 0) throw arith_error("unexpected denominator");
  MultiPoly Qp = (Qrf * RatFunc(den * den)).num();
  int degQ = Qp.degree(xvar);
  if (degQ < 3) throw arith_error("reducible member");
  if (poly_nth_root(Qp, 2, field_d)) throw arith_error("reducible member");
  if (!squarefree_in(Qp, xvar)) throw arith_error("genus 0 member");

  // Forward map, step 1: new projective coordinates of the original point
  // (x : y : 1) via the adjugate of (c1 | P | c3) (projective, so the 1/det
  // factor is dropped), then the affine chart X1 = x'/z', Y1 = y'/z'.
  std::array<Vec3, 3> Mcols = {c1, P, c3};
  auto mat = [&](int r, int cidx) -> const RatFunc& {
    return Mcols[static_cast<std::size_t>(cidx)][static_cast<std::size_t>(r)];
  };
  auto cof = [&](int r, int cidx) {
    int r1 = (r + 1) % 3, r2 = (r + 2) % 3;
    int q1 = (cidx + 1) % 3, q2i = (cidx + 2) % 3;
    return mat(r1, q1) * mat(r2, q2i) - mat(r1, q2i) * mat(r2, q1);
  };
  RatFunc xr(MultiPoly::variable(xvar));
  RatFunc yr(MultiPoly::variable(yvar));
  auto adj_row = [&](int r) {
    // adjugate row r applied to (x, y, 1): adj[r][c] = cof(c, r)
    return cof(0, r) * xr + cof(1, r) * yr + cof(2, r);
  };
  RatFunc X1 = adj_row(0) / adj_row(2);
  RatFunc Y1 = adj_row(1) / adj_row(2);
  RatFunc W = RatFunc(den) *
              (RatFunc(2) * beta * Y1 + RatFunc(qpoly).subst({{xvar, X1}}));

  QuarticModel QM{xvar, Qp, field_d, {}};
  WeierstrassModel model{};
  NagellMaps maps;
  maps.flex_case = (degQ == 3);
  if (degQ == 3) {
    model = quartic_to_weierstrass(QM, QuarticSection::none());
    RatFunc l = rat_coeffs(Qp, xvar)[3];
    maps.x_of = l * X1;
    maps.y_of = l * W;
  } else {
    // Leading coefficient is the square of q's x^2-coefficient (times the
    // cleared denominator); pick alpha = +q2 den so the distinguished point
    // (which sits on the branch w ~ -q2 x^2) maps to v = infinity, i.e. O.
    RatFunc q2{qpoly.coeff_of(xvar, 2)};
    RatFunc alpha = q2 * RatFunc(den);
    std::vector<RatFunc> cc = rat_coeffs(Qp, xvar);
    cc.resize(5, RatFunc(0));
    if (cc[4] != alpha * alpha) throw arith_error("leading coefficient mismatch");
    RatFunc bet = cc[3] / (RatFunc(2) * alpha);
    RatFunc gam = (cc[2] - bet * bet) / (RatFunc(2) * alpha);
    RatFunc s = cc[1] - RatFunc(2) * bet * gam;
    RatFunc tt = cc[0] - gam * gam;
    std::vector<RatFunc> cub = {s * s,
                                -RatFunc(4) * bet * s + RatFunc(8) * alpha * tt,
                                RatFunc(4) * bet * bet - RatFunc(16) * alpha * gam,
                                -RatFunc(8) * alpha};
    model = cubic_to_model(cub, base_var, field_d, {});
    RatFunc v = W - (alpha * X1 * X1 + bet * X1 + gam);
    RatFunc ymid = RatFunc(4) * alpha * v * X1 + RatFunc(2) * bet * v - s;
    RatFunc l = cub[3];
    maps.x_of = l * v;
    maps.y_of = l * ymid;
  }
  // Rebase the model onto the declared base variable and parameter list.
  model = WeierstrassModel::long_form(base_var, model.a1(), model.a2(),
                                      model.a3(), model.a4(), model.a6(),
                                      field_d, {});
  Invariants inv = model.invariants();  // throws "singular model" if delta = 0
  (void)inv;
  return {model, maps};
}

}  // namespace ellfib
