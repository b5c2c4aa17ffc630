// Exact scalar arithmetic: arbitrary-precision rationals and real quadratic
// field elements a + b*sqrt(d).  Every scalar in the toolkit is a QElem; no
// floating point is used anywhere.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace ellfib {

using Rat = mpq_class;

// Thrown on domain errors (mismatched fields, division by zero, ...).
struct arith_error : std::runtime_error {
  explicit arith_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Element of Q or of a real quadratic field Q(sqrt(d)), d squarefree > 1.
// Canonical form: d == 0 exactly when b == 0 (plain rational).  Elements of
// different quadratic fields never mix; rationals embed into any field.
class QElem {
 public:
  QElem() : a_(0), b_(0), d_(0) {}
  QElem(long v) : a_(v), b_(0), d_(0) {}           // NOLINT(google-explicit-constructor)
  QElem(const Rat& v) : a_(v), b_(0), d_(0) {}     // NOLINT(google-explicit-constructor)
  QElem(Rat a, Rat b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    normalize();
  }

  static QElem sqrt_gen(long d) { return QElem(0, 1, d); }  // sqrt(d) itself

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  long d() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return b_ == 0 && a_ == 1; }
  bool is_rational() const { return d_ == 0; }

  // Deterministic pseudo-positivity used only for sign normalization.
  bool norm_positive() const { return a_ > 0 || (a_ == 0 && b_ > 0); }

  QElem conj() const { return QElem(a_, -b_, d_); }

  // Field norm a^2 - d b^2 (equals a^2 for rationals).
  Rat field_norm() const { return a_ * a_ - d_ * b_ * b_; }

  QElem operator-() const { return QElem(-a_, -b_, d_); }

  friend QElem operator+(const QElem& x, const QElem& y) {
    long d = merged_d(x, y);
    return QElem(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QElem operator-(const QElem& x, const QElem& y) {
    long d = merged_d(x, y);
    return QElem(x.a_ - y.a_, x.b_ - y.b_, d);
  }
  friend QElem operator*(const QElem& x, const QElem& y) {
    long d = merged_d(x, y);
    if (d == 0) return QElem(x.a_ * y.a_, 0, 0);
    return QElem(x.a_ * y.a_ + d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend QElem operator/(const QElem& x, const QElem& y) { return x * y.inverse(); }

  QElem& operator+=(const QElem& y) { return *this = *this + y; }
  QElem& operator-=(const QElem& y) { return *this = *this - y; }
  QElem& operator*=(const QElem& y) { return *this = *this * y; }
  QElem& operator/=(const QElem& y) { return *this = *this / y; }

  QElem pow_n(unsigned n) const {
    QElem acc(1);
    QElem base = *this;
    while (n > 0) {
      if (n & 1u) acc *= base;
      n >>= 1u;
      if (n > 0) base *= base;
    }
    return acc;
  }

  QElem inverse() const {
    if (is_zero()) throw arith_error("division by zero scalar");
    if (d_ == 0) return QElem(1 / a_, 0, 0);
    Rat n = field_norm();
    if (n == 0) throw arith_error("zero norm in quadratic field (d not squarefree?)");
    return QElem(a_ / n, -b_ / n, d_);
  }

  friend bool operator==(const QElem& x, const QElem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && merged_d_nothrow(x, y) >= 0;
  }
  friend bool operator!=(const QElem& x, const QElem& y) { return !(x == y); }

  // Total order used for canonical term ordering; lexicographic on (a, b).
  friend bool operator<(const QElem& x, const QElem& y) {
    if (x.a_ != y.a_) return x.a_ < y.a_;
    return x.b_ < y.b_;
  }

  std::string str() const;

 private:
  void normalize() {
    // mpq_class(num, den) does not canonicalize; do it on entry so that
    // comparisons (mpq_equal) behave.
    a_.canonicalize();
    b_.canonicalize();
    if (b_ == 0) d_ = 0;
    if (d_ < 0) throw arith_error("negative quadratic discriminant");
    if (b_ != 0 && d_ <= 1) throw arith_error("quadratic part requires d > 1");
  }
  static long merged_d(const QElem& x, const QElem& y) {
    long d = merged_d_nothrow(x, y);
    if (d < 0)
      throw arith_error("mixing elements of distinct quadratic fields");
    return d;
  }
  // Returns the common field descriptor, or -1 if incompatible.
  static long merged_d_nothrow(const QElem& x, const QElem& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || y.d_ == x.d_) return x.d_;
    return -1;
  }

  Rat a_, b_;
  long d_;
};

// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rat> rat_sqrt(const Rat& x);
// Exact nth root of a rational (n >= 1; for even n requires x >= 0).
std::optional<Rat> rat_nth_root(const Rat& x, unsigned n);

// Exact square root of x inside the field Q(sqrt(ambient_d)) (ambient_d = 0
// means plain Q).  A rational x may acquire a sqrt(d) part, e.g. 5 -> sqrt(5)
// when ambient_d = 5.
std::optional<QElem> qelem_sqrt(const QElem& x, long ambient_d);
// Exact nth root within the same field (n = 2 delegates to qelem_sqrt; odd n
// on rationals is sign-aware).
std::optional<QElem> qelem_nth_root(const QElem& x, unsigned n, long ambient_d);

// Parses "p" or "p/q" (q > 0 enforced by canonicalization).
Rat rat_from_string(const std::string& s);
std::string rat_str(const Rat& x);

}  // namespace ellfib
