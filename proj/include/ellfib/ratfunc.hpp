// Exact rational functions: quotients of MultiPoly kept in lowest terms with
// a monic denominator (lex-leading coefficient 1), which makes the
// representation canonical so equality is componentwise.  Polynomials embed
// with denominator 1.
#pragma once

#include <map>
#include <string>

#include "ellfib/poly.hpp"

namespace ellfib {

class RatFunc {
 public:
  RatFunc() : num_(), den_(MultiPoly::constant(QElem(1))) {}
  RatFunc(const MultiPoly& p) : num_(p), den_(MultiPoly::constant(QElem(1))) {}  // NOLINT
  RatFunc(long v) : RatFunc(MultiPoly::constant(QElem(v))) {}                    // NOLINT
  RatFunc(const QElem& v) : RatFunc(MultiPoly::constant(v)) {}                   // NOLINT
  RatFunc(const MultiPoly& num, const MultiPoly& den);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const;
  const MultiPoly& as_poly() const;  // requires is_poly()
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  QElem constant_value() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& x, const RatFunc& y);
  friend RatFunc operator-(const RatFunc& x, const RatFunc& y);
  friend RatFunc operator*(const RatFunc& x, const RatFunc& y);
  friend RatFunc operator/(const RatFunc& x, const RatFunc& y);
  RatFunc& operator+=(const RatFunc& y) { return *this = *this + y; }
  RatFunc& operator-=(const RatFunc& y) { return *this = *this - y; }
  RatFunc& operator*=(const RatFunc& y) { return *this = *this * y; }
  RatFunc& operator/=(const RatFunc& y) { return *this = *this / y; }
  RatFunc pow(int n) const;  // negative n inverts
  RatFunc inverse() const;

  friend bool operator==(const RatFunc& x, const RatFunc& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const RatFunc& x, const RatFunc& y) { return !(x == y); }

  RatFunc derivative(const std::string& var) const;
  RatFunc subst(const std::map<std::string, RatFunc>& bindings) const;

  std::string str() const;

 private:
  void reduce();
  // Builds a RatFunc from a fraction already known to be in lowest terms,
  // normalizing only the denominator unit.  Callers must guarantee
  // gcd(num, den) = 1; every public route keeps that invariant.
  static RatFunc from_reduced(MultiPoly num, MultiPoly den);

  MultiPoly num_, den_;
};

// Exact square root in the rational-function field, if one exists.  The root
// is taken through num * den^(n-1) so that unit factors absorbed into the
// numerator by reduction cannot mask an existing root.
std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f, long ambient_d = 0);
std::optional<RatFunc> ratfunc_nth_root(const RatFunc& f, unsigned n,
                                        long ambient_d = 0);

}  // namespace ellfib
