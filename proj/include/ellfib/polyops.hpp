// Polynomial algebra on top of MultiPoly: pseudo-division, subresultant
// polynomial remainder sequences (resultants and GCDs), a fraction-free
// Sylvester-determinant resultant used as an independent cross-check,
// squarefree decomposition, coprime refinement, and exact root extraction.
#pragma once

#include <string>
#include <vector>

#include "ellfib/poly.hpp"

namespace ellfib {

// Coefficient list of p viewed as a polynomial in `var`; index = exponent,
// entries do not involve `var`.  Empty for the zero polynomial.
std::vector<MultiPoly> uni_coeffs(const MultiPoly& p, const std::string& var);
MultiPoly from_uni_coeffs(const std::vector<MultiPoly>& cs, const std::string& var);

// Pseudo-remainder: lc(q)^(deg p - deg q + 1) * p modulo q with respect to
// `var`, computed without fractions.  Requires deg_var(q) >= 0 and
// deg_var(p) >= deg_var(q).
MultiPoly prem(const MultiPoly& p, const MultiPoly& q, const std::string& var);

// Resultant with respect to `var` via the subresultant PRS.  Accepts any
// polynomials with deg_var >= 0 for q and >= 0 for p (degree-0 inputs are
// handled by the standard power conventions).
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, const std::string& var);

// Resultant via fraction-free (Bareiss) elimination on the Sylvester matrix.
// Slower; kept as an independent oracle for resultant().
MultiPoly resultant_sylvester(const MultiPoly& p, const MultiPoly& q,
                              const std::string& var);

// Content of p with respect to `var`: the GCD of its var-coefficients
// (a polynomial free of `var`), normalized.
MultiPoly content_wrt(const MultiPoly& p, const std::string& var);
MultiPoly primitive_part_wrt(const MultiPoly& p, const std::string& var);

// Full multivariate GCD (normalized: integral coprime coefficients,
// pseudo-positive lex-leading coefficient).  gcd(0, q) = normalized q.
MultiPoly gcd_multi(const MultiPoly& p, const MultiPoly& q);

// GCD computed with `var` as the main variable: content GCD times the
// primitive GCD in `var`.  Same normalization as gcd_multi.
MultiPoly gcd_poly(const MultiPoly& p, const MultiPoly& q, const std::string& var);

struct SquarefreeFactor {
  MultiPoly factor;
  int multiplicity = 0;
};

struct SquarefreeDecomposition {
  MultiPoly content;  // all factors free of the main variable (with the unit)
  std::vector<SquarefreeFactor> factors;  // squarefree, pairwise coprime
};

// Yun's algorithm with respect to `var` (characteristic zero).
// p == content * prod factor_i ^ multiplicity_i.
SquarefreeDecomposition squarefree_decompose(const MultiPoly& p,
                                             const std::string& var);

// Refines a list of polynomials into a pairwise-coprime basis with respect to
// `var`: every input is, up to a var-free unit, a product of powers of the
// returned polynomials.  Inputs of degree 0 in `var` are dropped.
std::vector<MultiPoly> coprime_refine(const std::vector<MultiPoly>& fs,
                                      const std::string& var);

// Pairwise-coprime squarefree basis in `var` spanned by a list of candidate
// divisors: each candidate is split into squarefree factors and the union is
// refined.  Intended for small candidates, where this costs only small gcds.
std::vector<MultiPoly> hint_basis(const std::vector<MultiPoly>& hints,
                                  const std::string& var);

// Factorization of p over a pairwise-coprime basis by repeated exact
// division: exponents for the basis elements dividing p plus the remaining
// cofactor.  `complete` reports whether the cofactor is free of `var`.
struct BasisFactorization {
  std::vector<SquarefreeFactor> factors;
  MultiPoly cofactor;
  bool complete = false;
};
BasisFactorization factor_over_basis(const MultiPoly& p, const std::string& var,
                                     const std::vector<MultiPoly>& basis);

// Order of vanishing: largest k with pi^k | p.  Requires p != 0 and
// deg(pi) >= 1 in some variable.
int ord_at(const MultiPoly& p, const MultiPoly& pi);

// Exact n-th root of a polynomial if one exists (leading-term recursion).
// ambient_d widens the coefficient field for scalar roots (e.g. sqrt(5)
// exists once ambient_d = 5).
std::optional<MultiPoly> poly_nth_root(const MultiPoly& p, unsigned n,
                                       long ambient_d = 0);

}  // namespace ellfib
