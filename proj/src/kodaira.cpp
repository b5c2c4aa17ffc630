#include "ellfib/kodaira.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ellfib/polyops.hpp"

namespace ellfib {

int FiberType::components() const {
  switch (kind) {
    case Kind::Smooth:
      return 1;
    case Kind::In:
      return n;
    case Kind::II:
      return 1;
    case Kind::III:
      return 2;
    case Kind::IV:
      return 3;
    case Kind::I0star:
      return 5;
    case Kind::Instar:
      return n + 5;
    case Kind::IVstar:
      return 7;
    case Kind::IIIstar:
      return 8;
    case Kind::IIstar:
      return 9;
  }
  return 0;
}

int FiberType::euler() const {
  switch (kind) {
    case Kind::Smooth:
      return 0;
    case Kind::In:
      return n;
    case Kind::II:
      return 2;
    case Kind::III:
      return 3;
    case Kind::IV:
      return 4;
    case Kind::I0star:
      return 6;
    case Kind::Instar:
      return n + 6;
    case Kind::IVstar:
      return 8;
    case Kind::IIIstar:
      return 9;
    case Kind::IIstar:
      return 10;
  }
  return 0;
}

std::string FiberType::str() const {
  switch (kind) {
    case Kind::Smooth:
      return "I0";
    case Kind::In:
      return "I" + std::to_string(n);
    case Kind::II:
      return "II";
    case Kind::III:
      return "III";
    case Kind::IV:
      return "IV";
    case Kind::I0star:
      return "I0*";
    case Kind::Instar:
      return "I" + std::to_string(n) + "*";
    case Kind::IVstar:
      return "IV*";
    case Kind::IIIstar:
      return "III*";
    case Kind::IIstar:
      return "II*";
  }
  return "?";
}

std::string Place::str() const {
  if (at_infinity) return "inf";
  return "(" + pi.str() + ")";
}

int FiberConfiguration::euler() const {
  int total = 0;
  for (const auto& f : fibers) total += f.type.euler() * f.degree;
  return total;
}

std::vector<std::pair<std::string, int>> FiberConfiguration::type_counts() const {
  std::vector<std::pair<std::string, int>> out;
  std::vector<Fiber> sorted = fibers;
  std::sort(sorted.begin(), sorted.end(), [](const Fiber& a, const Fiber& b) {
    return b.type < a.type;  // big fibers first, stable display order
  });
  for (const auto& f : sorted) {
    std::string t = f.type.str();
    bool merged = false;
    for (auto& [name, count] : out)
      if (name == t) {
        count += f.degree;
        merged = true;
        break;
      }
    if (!merged) out.emplace_back(t, f.degree);
  }
  return out;
}

std::string FiberConfiguration::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : fibers) {
    if (!first) os << ", ";
    first = false;
    os << f.type.str() << "@" << f.place.str();
  }
  return os.str();
}

namespace {

constexpr long kInfiniteOrd = 1000000;  // sentinel for ord of the zero function

long ord_or_inf(const RatFunc& f, const MultiPoly& pi) {
  if (f.is_zero()) return kInfiniteOrd;
  if (!f.den().is_constant())
    throw arith_error("classification needs a polynomial model");
  return ord_at(f.num(), pi);
}

FiberType from_orders(long a, long b, long d) {
  using K = FiberType::Kind;
  auto fail = [&]() -> FiberType {
    throw arith_error("non-minimal or invalid model at place");
  };
  if (d <= 0) return FiberType{K::Smooth, 0};
  if (a == 0) {
    // Multiplicative reduction; v(c6) = 0 and v(delta) = n follow.
    if (b != 0) fail();
    return FiberType{K::In, static_cast<int>(d)};
  }
  // I_n* (n >= 1) overlaps the d = 8, 9, 10 additive rows in d alone, so the
  // exact (a, b) = (2, 3) signature is dispatched first.
  if (d >= 7 && a == 2 && b == 3)
    return FiberType{K::Instar, static_cast<int>(d - 6)};
  FiberType t;
  switch (d) {
    case 2:
      t = FiberType{K::II, 0};
      if (!(a >= 1 && b == 1)) fail();
      break;
    case 3:
      t = FiberType{K::III, 0};
      if (!(a == 1 && b >= 2)) fail();
      break;
    case 4:
      t = FiberType{K::IV, 0};
      if (!(a >= 2 && b == 2)) fail();
      break;
    case 6:
      t = FiberType{K::I0star, 0};
      if (!(a >= 2 && b >= 3)) fail();
      break;
    case 8:
      t = FiberType{K::IVstar, 0};
      if (!(a >= 3 && b == 4)) fail();
      break;
    case 9:
      t = FiberType{K::IIIstar, 0};
      if (!(a == 3 && b >= 5)) fail();
      break;
    case 10:
      t = FiberType{K::IIstar, 0};
      if (!(a >= 4 && b == 5)) fail();
      break;
    default:
      fail();
  }
  return t;
}

// Degree-reversed model at infinity: with k minimal such that deg A <= 4k
// and deg B <= 6k, the chart s = 1/t carries (A, B) to
// (s^{4k} A(1/s), s^{6k} B(1/s)), minimal at s = 0 by minimality of k.
struct InfinityChart {
  MultiPoly A, B;
  long k = 0;
  std::string svar;
};

MultiPoly reverse_to(const MultiPoly& p, const std::string& var,
                     const std::string& svar, long target) {
  std::vector<MultiPoly> cs = uni_coeffs(p, var);
  MultiPoly out;
  MultiPoly s = MultiPoly::variable(svar);
  for (std::size_t i = 0; i < cs.size(); ++i)
    out += cs[i] * s.pow(static_cast<unsigned>(target - static_cast<long>(i)));
  return out;
}

InfinityChart infinity_chart(const WeierstrassModel& M) {
  const std::string& t = M.base_var();
  InfinityChart ch;
  ch.svar = t;  // reuse the same variable name in the flipped chart
  if (!M.a4().den().is_constant() || !M.a6().den().is_constant())
    throw arith_error("classification needs a polynomial model");
  long degA = M.a4().is_zero() ? -1 : M.a4().num().degree(t);
  long degB = M.a6().is_zero() ? -1 : M.a6().num().degree(t);
  long k = 0;
  auto fits = [&](long kk) {
    return degA <= 4 * kk && degB <= 6 * kk;
  };
  while (!fits(k)) ++k;
  ch.k = k;
  ch.A = M.a4().is_zero()
             ? MultiPoly()
             : reverse_to(M.a4().num(), t, ch.svar, 4 * k).scaled(
                   M.a4().den().constant_value().inverse());
  ch.B = M.a6().is_zero()
             ? MultiPoly()
             : reverse_to(M.a6().num(), t, ch.svar, 6 * k).scaled(
                   M.a6().den().constant_value().inverse());
  return ch;
}

}  // namespace

FiberType classify_place(const WeierstrassModel& M, const MultiPoly& pi) {
  if (!M.is_short()) return classify_place(M.to_short(), pi);
  Invariants v = M.invariants();
  long a = ord_or_inf(v.c4, pi);
  long b = ord_or_inf(v.c6, pi);
  long d = ord_or_inf(v.delta, pi);
  if (d >= kInfiniteOrd) throw arith_error("singular model");
  return from_orders(a, b, d);
}

std::optional<FiberType> classify_infinity(const WeierstrassModel& M) {
  WeierstrassModel S = M.is_short() ? M : M.to_short();
  InfinityChart ch = infinity_chart(S);
  WeierstrassModel flipped = WeierstrassModel::short_form(
      ch.svar, RatFunc(ch.A), RatFunc(ch.B), S.field_d(), S.params());
  FiberType t = classify_place(flipped, MultiPoly::variable(ch.svar));
  if (t.kind == FiberType::Kind::Smooth) return std::nullopt;
  return t;
}

namespace {

// Refines each part into the piece sharing a root with `big` and the piece
// coprime to it.  One pseudo-reduction of `big` keeps the gcd arguments as
// small as the parts themselves, so this never factors `big`.
void split_against(std::vector<MultiPoly>& parts, const MultiPoly& big,
                   const std::string& var) {
  std::vector<MultiPoly> out;
  for (const auto& b : parts) {
    if (b.degree(var) <= 0) continue;
    MultiPoly bp = primitive_part_wrt(b, var);
    MultiPoly g;
    if (big.degree(var) >= bp.degree(var)) {
      MultiPoly r = prem(big, bp, var);
      g = r.is_zero() ? bp : gcd_multi(bp, r);
    } else {
      g = gcd_multi(bp, big);
    }
    if (g.degree(var) <= 0 || g.degree(var) >= bp.degree(var)) {
      out.push_back(bp);
      continue;
    }
    out.push_back(g);
    out.push_back(bp.divexact(g));
  }
  parts = std::move(out);
}

}  // namespace

Classified classify_all(const WeierstrassModel& M) {
  Classified out;
  auto [minimal, iso] = minimalize(M);
  (void)iso;
  out.minimal = minimal;
  const std::string& t = minimal.base_var();
  Invariants v = minimal.invariants();
  MultiPoly delta = v.delta.num().scaled(v.delta.den().constant_value().inverse());

  // Candidate place factors.  When the carried hints account for the whole
  // discriminant, they give the factorization directly (each factor further
  // split against c4 and c6 so that one factor carries one fiber type) and
  // the discriminant itself never needs a squarefree decomposition.
  std::vector<MultiPoly> pool;
  bool covered = false;
  if (!minimal.delta_factor_hints().empty()) {
    std::vector<MultiPoly> hb = hint_basis(minimal.delta_factor_hints(), t);
    BasisFactorization f = factor_over_basis(delta, t, hb);
    if (f.complete) {
      covered = true;
      for (const auto& bf : f.factors) {
        std::vector<MultiPoly> parts{bf.factor};
        if (!v.c4.is_zero()) split_against(parts, v.c4.num(), t);
        if (!v.c6.is_zero()) split_against(parts, v.c6.num(), t);
        for (auto& p : parts) pool.push_back(std::move(p));
      }
    }
  }
  if (!covered) {
    auto add_factors = [&](const MultiPoly& p) {
      if (p.is_zero() || p.degree(t) <= 0) return;
      for (const auto& f : squarefree_decompose(p, t).factors)
        pool.push_back(f.factor);
    };
    add_factors(delta);
    if (!v.c4.is_zero()) add_factors(v.c4.num());
    if (!v.c6.is_zero()) add_factors(v.c6.num());
    for (const auto& h : minimal.delta_factor_hints()) {
      if (h.degree(t) <= 0) continue;
      if (ord_at(delta, h.normalized().second) > 0) add_factors(h);
    }
  }
  std::vector<MultiPoly> basis = coprime_refine(pool, t);

  // Classify every basis factor dividing delta; collect the factorization.
  MultiPoly residual = delta;
  for (const MultiPoly& pi : basis) {
    int d = ord_at(delta, pi);
    if (d <= 0) continue;
    out.delta_factors.emplace_back(pi, d);
    for (int i = 0; i < d; ++i) residual = residual.divexact(pi);
    Fiber f;
    f.place = Place::finite(pi);
    f.type = classify_place(minimal, pi);
    f.degree = pi.degree(t);
    out.config.fibers.push_back(f);
  }
  if (residual.degree(t) != 0)
    throw arith_error("incomplete place basis for the discriminant");
  if (!residual.is_constant()) {
    // Parameter-dependent content: keep it as a degree-0 factor so the
    // factored form stays exact.
    auto [c, n] = residual.normalized();
    out.delta_factors.emplace_back(n, 1);
    out.delta_content = c;
  } else {
    out.delta_content = residual.constant_value();
  }

  out.config.base_var = t;
  if (auto tinf = classify_infinity(minimal)) {
    Fiber f;
    f.place = Place::infinity();
    f.type = *tinf;
    f.degree = 1;
    out.config.fibers.push_back(f);
  }
  return out;
}

int shioda_tate_rank(const FiberConfiguration& config, int rho) {
  int rank = rho - 2;
  for (const auto& f : config.fibers)
    rank -= f.degree * (f.type.components() - 1);
  if (rank < 0) throw arith_error("inconsistent configuration");
  return rank;
}

bool torsion_admissible(const std::vector<int>& invariant_factors) {
  std::vector<int> f = invariant_factors;
  f.erase(std::remove(f.begin(), f.end(), 1), f.end());
  std::sort(f.begin(), f.end());
  if (f.empty()) return true;
  if (f.size() == 1) return f[0] >= 2 && f[0] <= 8;
  if (f.size() == 2) {
    if (f[0] == 2) return f[1] == 2 || f[1] == 4 || f[1] == 6;
    if (f[0] == 3) return f[1] == 3;
    if (f[0] == 4) return f[1] == 4;
    return false;
  }
  return false;
}

FiberType parse_fiber_type(const std::string& name) {
  auto fail = [&]() -> FiberType {
    throw arith_error("unknown fiber type: " + name);
  };
  if (name.empty()) return fail();
  bool star = name.back() == '*';
  std::string body = star ? name.substr(0, name.size() - 1) : name;
  if (body == "II") return star ? FiberType{FiberType::Kind::IIstar, 0}
                                : FiberType{FiberType::Kind::II, 0};
  if (body == "III") return star ? FiberType{FiberType::Kind::IIIstar, 0}
                                 : FiberType{FiberType::Kind::III, 0};
  if (body == "IV") return star ? FiberType{FiberType::Kind::IVstar, 0}
                                : FiberType{FiberType::Kind::IV, 0};
  if (body.size() < 2 || body[0] != 'I') return fail();
  for (std::size_t i = 1; i < body.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(body[i]))) return fail();
  int n = std::stoi(body.substr(1));
  if (star) {
    if (n == 0) return FiberType{FiberType::Kind::I0star, 0};
    return FiberType{FiberType::Kind::Instar, n};
  }
  if (n == 0) return FiberType{FiberType::Kind::Smooth, 0};
  return FiberType{FiberType::Kind::In, n};
}

}  // namespace ellfib
