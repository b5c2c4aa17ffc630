#include "ellfib/ratfunc.hpp"

#include <utility>

#include "ellfib/polyops.hpp"

namespace ellfib {

RatFunc::RatFunc(const MultiPoly& num, const MultiPoly& den) : num_(num), den_(den) {
  reduce();
}

void RatFunc::reduce() {
  if (den_.is_zero()) throw arith_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(QElem(1));
    return;
  }
  MultiPoly g = gcd_multi(num_, den_);
  if (!g.is_constant()) {
    num_ = num_.divexact(g);
    den_ = den_.divexact(g);
  }
  // Monic denominator over the coefficient field: with gcd(num, den) = 1 this
  // pins the representation uniquely (no residual unit ambiguity, which
  // rational-content normalization would leave over Q(sqrt d)).
  QElem lc = den_.terms().rbegin()->second;
  if (!lc.is_one()) {
    QElem inv = lc.inverse();
    den_ = den_.scaled(inv);
    num_ = num_.scaled(inv);
  }
}

RatFunc RatFunc::from_reduced(MultiPoly num, MultiPoly den) {
  if (den.is_zero()) throw arith_error("rational function with zero denominator");
  RatFunc r;
  if (num.is_zero()) return r;
  QElem lc = den.terms().rbegin()->second;
  if (!lc.is_one()) {
    QElem inv = lc.inverse();
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

bool RatFunc::is_poly() const { return den_.is_constant(); }

const MultiPoly& RatFunc::as_poly() const {
  if (!is_poly()) throw arith_error("rational function is not a polynomial");
  return num_;
}

QElem RatFunc::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& x, const RatFunc& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  MultiPoly g = gcd_multi(x.den_, y.den_);
  if (g.is_constant())
    // Coprime denominators: the cross sum is already in lowest terms (any
    // prime of one denominator misses the matching numerator and the other
    // denominator, hence the sum).
    return RatFunc::from_reduced(x.num_ * y.den_ + y.num_ * x.den_,
                                 x.den_ * y.den_);
  MultiPoly dx = x.den_.divexact(g);
  MultiPoly dy = y.den_.divexact(g);
  MultiPoly num = x.num_ * dy + y.num_ * dx;
  if (num.is_zero()) return RatFunc();
  // Denominator = lcm; the only primes the sum can share with it lie in g,
  // so one small gcd finishes the reduction.
  MultiPoly den = x.den_ * dy;
  MultiPoly h = gcd_multi(num, g);
  if (!h.is_constant()) {
    num = num.divexact(h);
    den = den.divexact(h);
  }
  return RatFunc::from_reduced(std::move(num), std::move(den));
}

RatFunc operator-(const RatFunc& x, const RatFunc& y) { return x + (-y); }

RatFunc operator*(const RatFunc& x, const RatFunc& y) {
  if (x.is_zero() || y.is_zero()) return RatFunc();
  // Cross-cancellation: reduce each numerator against the opposite
  // denominator, after which all four factors are pairwise coprime where it
  // matters and the product needs no further gcd.
  MultiPoly nx = x.num_, dy = y.den_;
  MultiPoly g1 = gcd_multi(nx, dy);
  if (!g1.is_constant()) {
    nx = nx.divexact(g1);
    dy = dy.divexact(g1);
  }
  MultiPoly ny = y.num_, dx = x.den_;
  MultiPoly g2 = gcd_multi(ny, dx);
  if (!g2.is_constant()) {
    ny = ny.divexact(g2);
    dx = dx.divexact(g2);
  }
  return RatFunc::from_reduced(nx * ny, dx * dy);
}

RatFunc operator/(const RatFunc& x, const RatFunc& y) {
  if (y.is_zero()) throw arith_error("division by zero rational function");
  return x * y.inverse();
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw arith_error("division by zero rational function");
  return from_reduced(den_, num_);
}

RatFunc RatFunc::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  if (n == 0) return RatFunc(MultiPoly::constant(QElem(1)));
  // gcd(num, den) = 1 implies gcd(num^n, den^n) = 1: power componentwise.
  return from_reduced(num_.pow(static_cast<unsigned>(n)),
                      den_.pow(static_cast<unsigned>(n)));
}

RatFunc RatFunc::derivative(const std::string& var) const {
  return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var),
                 den_ * den_);
}

RatFunc RatFunc::subst(const std::map<std::string, RatFunc>& bindings) const {
  RatFunc n = num_.subst_rf(bindings);
  RatFunc d = den_.subst_rf(bindings);
  return n / d;
}

std::string RatFunc::str() const {
  if (is_poly()) return num_.str();
  std::string n = num_.str();
  if (num_.term_count() > 1) n = "(" + n + ")";
  std::string d = den_.str();
  if (den_.term_count() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f, long ambient_d) {
  return ratfunc_nth_root(f, 2, ambient_d);
}

std::optional<RatFunc> ratfunc_nth_root(const RatFunc& f, unsigned n,
                                        long ambient_d) {
  if (n == 0) throw arith_error("ratfunc_nth_root: zeroth root");
  // (r / den)^n = num / den  <=>  r^n = num * den^(n-1).
  auto r = poly_nth_root(f.num() * f.den().pow(n - 1), n, ambient_d);
  if (!r) return std::nullopt;
  return RatFunc(*r, f.den());
}

}  // namespace ellfib
