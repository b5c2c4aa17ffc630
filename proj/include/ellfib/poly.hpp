// Sparse multivariate polynomials over QElem scalars.  Variables are kept as
// a sorted name list per polynomial; binary operations align variable lists
// by name.  Terms live in an ordered map keyed by exponent vector, so all
// iteration orders (and hence printed forms) are deterministic.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellfib/field.hpp"

namespace ellfib {

using ExpVec = std::vector<unsigned>;

class RatFunc;

class MultiPoly {
 public:
  using TermMap = std::map<ExpVec, QElem>;

  MultiPoly() = default;  // the zero polynomial
  MultiPoly(long c) { *this = constant(QElem(c)); }  // NOLINT
  static MultiPoly constant(const QElem& c);
  static MultiPoly variable(const std::string& name);
  static MultiPoly monomial(const QElem& c, const std::vector<std::string>& vars,
                            const ExpVec& exps);

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  QElem constant_value() const;  // 0 for the zero polynomial
  // Field descriptor (0 = Q, else d); uniform across coefficients.
  long field_d() const;

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& p, const MultiPoly& q);
  friend MultiPoly operator-(const MultiPoly& p, const MultiPoly& q);
  friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q);
  MultiPoly& operator+=(const MultiPoly& q) { return *this = *this + q; }
  MultiPoly& operator-=(const MultiPoly& q) { return *this = *this - q; }
  MultiPoly& operator*=(const MultiPoly& q) { return *this = *this * q; }
  MultiPoly scaled(const QElem& c) const;
  MultiPoly pow(unsigned n) const;

  friend bool operator==(const MultiPoly& p, const MultiPoly& q);
  friend bool operator!=(const MultiPoly& p, const MultiPoly& q) { return !(p == q); }

  int degree(const std::string& var) const;  // -1 for the zero polynomial
  int total_degree() const;                  // -1 for the zero polynomial
  bool has_var(const std::string& var) const { return degree(var) > 0; }
  // Coefficient of var^k, with var removed from the result's variable list.
  MultiPoly coeff_of(const std::string& var, unsigned k) const;
  MultiPoly leading_coeff(const std::string& var) const;
  MultiPoly derivative(const std::string& var) const;
  // True iff every term has total degree `deg` in the given variables.
  bool is_homogeneous_in(const std::vector<std::string>& vars, int deg) const;

  // Polynomial substitution; unbound variables pass through.
  MultiPoly subst(const std::map<std::string, MultiPoly>& bindings) const;
  // Rational-function substitution (exact); unbound variables pass through.
  RatFunc subst_rf(const std::map<std::string, RatFunc>& bindings) const;
  // Renames a variable (target name must not collide).
  MultiPoly rename_var(const std::string& from, const std::string& to) const;

  // Removes variables that appear in no term.
  MultiPoly drop_unused_vars() const;
  // Re-embeds into a variable superset (names must include all used vars).
  MultiPoly with_vars(const std::vector<std::string>& vars) const;

  // Writes *this == unit * normal where normal has integral coprime
  // coefficients and a pseudo-positive lexicographically-leading coefficient.
  std::pair<QElem, MultiPoly> normalized() const;

  std::optional<MultiPoly> try_divexact(const MultiPoly& q) const;
  MultiPoly divexact(const MultiPoly& q) const;

  std::string str() const;

 private:
  void prune();  // drop zero coefficients; clear vars when constant? (no)
  static void align(const MultiPoly& p, const MultiPoly& q, MultiPoly& pa,
                    MultiPoly& qa);
  std::size_t var_index(const std::string& var) const;  // npos if absent

  std::vector<std::string> vars_;  // sorted, unique
  TermMap terms_;                  // exponent vector (aligned to vars_) -> coeff
};

// Deterministic total order on polynomials (for sorting factor lists).
bool poly_less(const MultiPoly& a, const MultiPoly& b);

}  // namespace ellfib
