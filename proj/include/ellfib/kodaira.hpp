// Kodaira fiber classification of elliptic fibrations over the projective
// line: fiber types at finite places and at infinity, full configurations
// with Euler numbers, Shioda-Tate rank bookkeeping, and the admissibility
// list for torsion subgroups of Mordell-Weil groups of elliptic K3 surfaces.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellfib/weierstrass.hpp"

namespace ellfib {

// A Kodaira fiber type in residue characteristic zero.
struct FiberType {
  enum class Kind {
    Smooth,  // good reduction (I0)
    In,      // multiplicative, n >= 1
    II,
    III,
    IV,
    I0star,
    Instar,  // n >= 1
    IVstar,
    IIIstar,
    IIstar,
  };
  Kind kind = Kind::Smooth;
  int n = 0;  // only for In / Instar

  // Number of irreducible components m_v of the fiber.
  int components() const;
  // Local Euler number e_v of the fiber.
  int euler() const;
  std::string str() const;  // "I5", "I2*", "IV*", "III", ...

  friend bool operator==(const FiberType& a, const FiberType& b) {
    return a.kind == b.kind && a.n == b.n;
  }
  friend bool operator<(const FiberType& a, const FiberType& b) {
    return a.kind != b.kind ? a.kind < b.kind : a.n < b.n;
  }
};

// A closed place of the base line: either the point at infinity or the
// vanishing locus of an irreducible (within the working factor basis)
// polynomial in the base variable.
struct Place {
  bool at_infinity = false;
  MultiPoly pi;  // normalized; meaningful iff !at_infinity
  static Place infinity() { return {true, MultiPoly()}; }
  static Place finite(MultiPoly p) { return {false, std::move(p)}; }
  std::string str() const;  // "inf" or "(mu^2 + 11*mu - 1)"
  friend bool operator==(const Place& a, const Place& b) {
    return a.at_infinity == b.at_infinity && a.pi == b.pi;
  }
};

// One singular fiber (or Galois orbit of fibers) of the fibration.
struct Fiber {
  Place place;
  FiberType type;
  int degree = 1;  // number of geometric points of the place
};

struct FiberConfiguration {
  std::string base_var;
  std::vector<Fiber> fibers;  // singular fibers only, finite places first

  // Sum of local Euler numbers, counting each place with its degree
  // (12 for a rational elliptic surface, 24 for a K3).
  int euler() const;
  // Fiber-type multiset over geometric points, e.g. {("I5", 2), ("I1", 2)}.
  std::vector<std::pair<std::string, int>> type_counts() const;
  std::string str() const;  // "I5@(mu), I1@(mu^2 + 11*mu - 1), I5@inf"
};

// Classifies the fiber of a *minimal* short model at the finite place pi
// via the orders of vanishing of (c4, c6, delta).  Throws
// "non-minimal or invalid model at place" when the orders fit no row.
FiberType classify_place(const WeierstrassModel& M, const MultiPoly& pi);

// Classifies the fiber at infinity of a minimal short polynomial model by
// rewriting in the chart s = 1/t; returns nothing when the fiber is smooth.
std::optional<FiberType> classify_infinity(const WeierstrassModel& M);

// Result of a full classification run.
struct Classified {
  WeierstrassModel minimal;   // minimalized short model actually classified
  FiberConfiguration config;  // all singular fibers
  // Factorization of delta over the refined place basis (finite part);
  // content holds the leftover unit.
  std::vector<std::pair<MultiPoly, int>> delta_factors;
  QElem delta_content;
};

// Minimalizes M, refines a place basis from the squarefree factors of
// delta, c4, c6 and any verified discriminant hints, classifies every place
// dividing delta plus the place at infinity.
Classified classify_all(const WeierstrassModel& M);

// Mordell-Weil rank via Shioda-Tate: rho - 2 - sum deg(v) (m_v - 1).
// Throws "inconsistent configuration" when the formula goes negative.
int shioda_tate_rank(const FiberConfiguration& config, int rho);

// Admissible torsion subgroups of the Mordell-Weil group of an elliptic K3
// surface, given as invariant factors (e.g. {} trivial, {5}, {2, 4}):
// Z/n for n <= 8, Z/2 x Z/m for m = 2, 4, 6, (Z/k)^2 for k = 3, 4.
bool torsion_admissible(const std::vector<int>& invariant_factors);

// Inverse of FiberType::str(): accepts "I0", "I5", "I2*", "II", "IV*", ...;
// throws on anything else.
FiberType parse_fiber_type(const std::string& name);

}  // namespace ellfib
