#include "ellfib/field.hpp"

#include <sstream>

namespace ellfib {

std::string rat_str(const Rat& x) {
  std::ostringstream os;
  os << x.get_num();
  if (x.get_den() != 1) os << "/" << x.get_den();
  return os.str();
}

std::string QElem::str() const {
  if (d_ == 0) return rat_str(a_);
  std::ostringstream os;
  bool have_a = (a_ != 0);
  if (have_a) os << rat_str(a_);
  if (b_ != 0) {
    if (have_a && b_ > 0) os << "+";
    if (b_ == -1)
      os << "-";
    else if (b_ != 1)
      os << rat_str(b_) << "*";
    os << "sqrt(" << d_ << ")";
  }
  return os.str();
}

std::optional<Rat> rat_sqrt(const Rat& x) { return rat_nth_root(x, 2); }

std::optional<Rat> rat_nth_root(const Rat& x, unsigned n) {
  if (n == 0) throw arith_error("0th root");
  if (n == 1) return x;
  if (x == 0) return Rat(0);
  bool neg = x < 0;
  if (neg && n % 2 == 0) return std::nullopt;
  mpz_class num = abs(x.get_num());
  mpz_class den = x.get_den();
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) == 0) return std::nullopt;
  Rat r(neg ? -rn : rn, rd);
  r.canonicalize();
  return r;
}

std::optional<QElem> qelem_sqrt(const QElem& x, long ambient_d) {
  if (x.is_zero()) return QElem(0);
  if (x.is_rational()) {
    if (auto r = rat_sqrt(x.a())) return QElem(*r);
    if (ambient_d > 1 && x.a() > 0) {
      // x might be d * (square): sqrt(x) = sqrt(x/d) * sqrt(d).
      if (auto r = rat_sqrt(x.a() / ambient_d)) return QElem(0, *r, ambient_d);
    }
    return std::nullopt;
  }
  // Solve (p + q sqrt(d))^2 = a + b sqrt(d):
  //   p^2 + d q^2 = a, 2 p q = b  =>  p^2 = (a +- s)/2 with s = sqrt(a^2-d b^2).
  auto s = rat_sqrt(x.field_norm());
  if (!s) return std::nullopt;
  for (int sign = 0; sign < 2; ++sign) {
    Rat p2 = (x.a() + (sign ? -*s : *s)) / 2;
    if (p2 <= 0) continue;
    if (auto p = rat_sqrt(p2)) {
      Rat q = x.b() / (2 * *p);
      QElem cand(*p, q, x.d());
      if (cand * cand == x) return cand;
    }
  }
  return std::nullopt;
}

std::optional<QElem> qelem_nth_root(const QElem& x, unsigned n, long ambient_d) {
  if (n == 1) return x;
  if (n == 2) return qelem_sqrt(x, ambient_d);
  if (x.is_rational()) {
    if (auto r = rat_nth_root(x.a(), n)) return QElem(*r);
    return std::nullopt;
  }
  if (n % 2 == 0) {
    if (auto h = qelem_nth_root(x, n / 2, ambient_d)) return qelem_sqrt(*h, ambient_d);
    return std::nullopt;
  }
  // Odd n on a genuine quadratic element: search p with (p+q sqrt d)^n = x is
  // rarely needed; handle the cases the toolkit meets (cube of a rational
  // multiple of the generator) by testing x / d^((n-1)/2) when b-only.
  if (x.a() == 0) {
    // x = b sqrt(d); (q sqrt d)^n = q^n d^((n-1)/2) sqrt(d) for odd n.
    Rat pow_d = 1;
    for (unsigned i = 0; i < (n - 1) / 2; ++i) pow_d *= x.d();
    if (auto q = rat_nth_root(x.b() / pow_d, n)) return QElem(0, *q, x.d());
  }
  return std::nullopt;
}

Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw arith_error("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

}  // namespace ellfib
