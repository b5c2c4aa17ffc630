#include "ellfib/polyops.hpp"

#include <algorithm>

namespace ellfib {

namespace {

using UniPoly = std::vector<MultiPoly>;  // index = exponent in the main var

int uni_deg(const UniPoly& u) { return static_cast<int>(u.size()) - 1; }

void uni_trim(UniPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

// r = c*r - s * x^shift * b  (drops the cancelled leading term).
UniPoly uni_reduce_step(const UniPoly& r, const MultiPoly& c, const MultiPoly& s,
                        std::size_t shift, const UniPoly& b) {
  UniPoly out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    out[i] = c * r[i];
    if (i >= shift && i - shift < b.size()) out[i] -= s * b[i - shift];
  }
  uni_trim(out);
  return out;
}

UniPoly uni_prem(const UniPoly& a, const UniPoly& b) {
  const int n = uni_deg(b);
  if (n < 0) throw arith_error("prem: zero divisor");
  if (uni_deg(a) < n) throw arith_error("prem: dividend degree below divisor degree");
  const MultiPoly& d = b.back();
  UniPoly r = a;
  int steps = uni_deg(a) - n + 1;
  while (uni_deg(r) >= n) {
    std::size_t shift = static_cast<std::size_t>(uni_deg(r) - n);
    r = uni_reduce_step(r, d, r.back(), shift, b);
    --steps;
  }
  // The classical definition multiplies by lc(b)^(deg a - deg b + 1); make up
  // for iterations skipped by multi-step degree drops.
  MultiPoly scale = MultiPoly::constant(QElem(1));
  for (int i = 0; i < steps; ++i) scale *= d;
  if (steps > 0)
    for (auto& c : r) c *= scale;
  return r;
}

}  // namespace

std::vector<MultiPoly> uni_coeffs(const MultiPoly& p, const std::string& var) {
  int d = p.degree(var);
  if (d < 0) return {};
  std::vector<MultiPoly> cs(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k)
    cs[static_cast<std::size_t>(k)] = p.coeff_of(var, static_cast<unsigned>(k));
  return cs;
}

MultiPoly from_uni_coeffs(const std::vector<MultiPoly>& cs, const std::string& var) {
  MultiPoly x = MultiPoly::variable(var);
  MultiPoly out;
  for (std::size_t k = 0; k < cs.size(); ++k)
    if (!cs[k].is_zero()) out += cs[k] * x.pow(static_cast<unsigned>(k));
  return out;
}

MultiPoly prem(const MultiPoly& p, const MultiPoly& q, const std::string& var) {
  return from_uni_coeffs(uni_prem(uni_coeffs(p, var), uni_coeffs(q, var)), var);
}

MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, const std::string& var) {
  if (p.is_zero() || q.is_zero()) return MultiPoly();
  int m = p.degree(var);
  int n = q.degree(var);
  if (m == 0 && n == 0) return MultiPoly::constant(QElem(1));
  bool negate = false;
  UniPoly A = uni_coeffs(p, var);
  UniPoly B = uni_coeffs(q, var);
  if (m < n) {
    std::swap(A, B);
    std::swap(m, n);
    if ((m & 1) && (n & 1)) negate = true;
  }
  if (n == 0) {
    // Res(p, c) = c^deg(p).
    MultiPoly r = B[0].pow(static_cast<unsigned>(m));
    return negate ? -r : r;
  }
  // Subresultant PRS (Cohen, "A Course in Computational Algebraic Number
  // Theory", Algorithm 3.3.7).
  MultiPoly g = MultiPoly::constant(QElem(1));
  MultiPoly h = MultiPoly::constant(QElem(1));
  int s = negate ? -1 : 1;
  while (true) {
    int dA = uni_deg(A);
    int dB = uni_deg(B);
    int delta = dA - dB;
    if ((dA & 1) && (dB & 1)) s = -s;
    UniPoly R = uni_prem(A, B);
    if (R.empty()) return MultiPoly();  // positive-degree common factor
    MultiPoly divisor = g * h.pow(static_cast<unsigned>(delta));
    A = std::move(B);
    B.clear();
    B.reserve(R.size());
    for (auto& c : R) B.push_back(c.divexact(divisor));
    g = A.back();
    if (delta > 0)
      h = g.pow(static_cast<unsigned>(delta))
              .divexact(h.pow(static_cast<unsigned>(delta - 1)));
    if (uni_deg(B) == 0) {
      int dA2 = uni_deg(A);
      MultiPoly res = B[0].pow(static_cast<unsigned>(dA2));
      if (dA2 > 1) res = res.divexact(h.pow(static_cast<unsigned>(dA2 - 1)));
      return s < 0 ? -res : res;
    }
  }
}

MultiPoly resultant_sylvester(const MultiPoly& p, const MultiPoly& q,
                              const std::string& var) {
  if (p.is_zero() || q.is_zero()) return MultiPoly();
  UniPoly a = uni_coeffs(p, var);
  UniPoly b = uni_coeffs(q, var);
  const int m = uni_deg(a);
  const int n = uni_deg(b);
  const int N = m + n;
  if (N == 0) return MultiPoly::constant(QElem(1));
  std::vector<std::vector<MultiPoly>> M(
      static_cast<std::size_t>(N),
      std::vector<MultiPoly>(static_cast<std::size_t>(N)));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t <= m; ++t)
      M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + t)] =
          a[static_cast<std::size_t>(m - t)];
  for (int i = 0; i < m; ++i)
    for (int t = 0; t <= n; ++t)
      M[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + t)] =
          b[static_cast<std::size_t>(n - t)];
  // Fraction-free Gaussian elimination (Bareiss).
  MultiPoly prev = MultiPoly::constant(QElem(1));
  int sign = 1;
  for (int k = 0; k < N - 1; ++k) {
    std::size_t ku = static_cast<std::size_t>(k);
    if (M[ku][ku].is_zero()) {
      int r = -1;
      for (int i = k + 1; i < N; ++i)
        if (!M[static_cast<std::size_t>(i)][ku].is_zero()) {
          r = i;
          break;
        }
      if (r < 0) return MultiPoly();
      std::swap(M[ku], M[static_cast<std::size_t>(r)]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      std::size_t iu = static_cast<std::size_t>(i);
      for (int j = k + 1; j < N; ++j) {
        std::size_t ju = static_cast<std::size_t>(j);
        M[iu][ju] = (M[iu][ju] * M[ku][ku] - M[iu][ku] * M[ku][ju]).divexact(prev);
      }
      M[iu][ku] = MultiPoly();
    }
    prev = M[ku][ku];
  }
  MultiPoly det = M[static_cast<std::size_t>(N - 1)][static_cast<std::size_t>(N - 1)];
  return sign < 0 ? -det : det;
}

MultiPoly content_wrt(const MultiPoly& p, const std::string& var) {
  if (p.is_zero()) return MultiPoly();
  MultiPoly c;
  for (const MultiPoly& coeff : uni_coeffs(p, var)) {
    if (coeff.is_zero()) continue;
    c = gcd_multi(c, coeff);
    if (c.is_constant()) break;
  }
  return c;
}

MultiPoly primitive_part_wrt(const MultiPoly& p, const std::string& var) {
  if (p.is_zero()) return p;
  return p.divexact(content_wrt(p, var));
}

namespace {

// Last nonzero element of the subresultant PRS of primitive a, b in var
// (a, b with deg_var >= 1, deg_var a >= deg_var b); returns its primitive
// part, or a degree-0 poly when the inputs are coprime in var.
MultiPoly prs_gcd(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
  UniPoly A = uni_coeffs(a, var);
  UniPoly B = uni_coeffs(b, var);
  MultiPoly g = MultiPoly::constant(QElem(1));
  MultiPoly h = MultiPoly::constant(QElem(1));
  while (true) {
    int delta = uni_deg(A) - uni_deg(B);
    UniPoly R = uni_prem(A, B);
    if (R.empty())
      return primitive_part_wrt(from_uni_coeffs(B, var), var);
    if (uni_deg(R) == 0) return MultiPoly::constant(QElem(1));
    MultiPoly divisor = g * h.pow(static_cast<unsigned>(delta));
    A = std::move(B);
    B.clear();
    B.reserve(R.size());
    for (auto& c : R) B.push_back(c.divexact(divisor));
    g = A.back();
    if (delta > 0)
      h = g.pow(static_cast<unsigned>(delta))
              .divexact(h.pow(static_cast<unsigned>(delta - 1)));
  }
}

MultiPoly gcd_with_main_var(const MultiPoly& p, const MultiPoly& q,
                            const std::string& var) {
  MultiPoly cp = content_wrt(p, var);
  MultiPoly cq = content_wrt(q, var);
  MultiPoly cg = gcd_multi(cp, cq);
  MultiPoly pp = p.divexact(cp);
  MultiPoly qq = q.divexact(cq);
  MultiPoly prim = pp.degree(var) >= qq.degree(var) ? prs_gcd(pp, qq, var)
                                                    : prs_gcd(qq, pp, var);
  return (cg * prim).normalized().second;
}

}  // namespace

MultiPoly gcd_multi(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero()) return q.normalized().second;
  if (q.is_zero()) return p.normalized().second;
  if (p.is_constant() || q.is_constant())
    return MultiPoly::constant(QElem(1));
  // Main variable: a shared variable of minimal combined degree.
  std::string best;
  long best_score = -1;
  for (const auto& v : p.vars()) {
    int dp = p.degree(v);
    int dq = q.degree(v);
    if (dp <= 0 || dq <= 0) continue;
    long score = static_cast<long>(std::min(dp, dq)) * 1000 +
                 static_cast<long>(std::max(dp, dq));
    if (best_score < 0 || score < best_score) {
      best_score = score;
      best = v;
    }
  }
  if (best_score < 0) return MultiPoly::constant(QElem(1));
  return gcd_with_main_var(p, q, best);
}

MultiPoly gcd_poly(const MultiPoly& p, const MultiPoly& q, const std::string& var) {
  if (p.is_zero()) return q.normalized().second;
  if (q.is_zero()) return p.normalized().second;
  int dp = p.degree(var);
  int dq = q.degree(var);
  if (dp <= 0 || dq <= 0) {
    // At least one input is free of var; any common divisor is too.
    const MultiPoly& free_side = dp <= 0 ? p : q;
    const MultiPoly& other = dp <= 0 ? q : p;
    return gcd_multi(free_side, content_wrt(other, var));
  }
  return gcd_with_main_var(p, q, var);
}

SquarefreeDecomposition squarefree_decompose(const MultiPoly& p,
                                             const std::string& var) {
  if (p.is_zero()) throw arith_error("squarefree_decompose: zero polynomial");
  SquarefreeDecomposition out;
  if (p.degree(var) == 0) {
    out.content = p;
    return out;
  }
  MultiPoly cont = content_wrt(p, var);
  MultiPoly w = p.divexact(cont);
  // Yun's algorithm on the primitive part.
  MultiPoly wp = w.derivative(var);
  MultiPoly g = gcd_poly(w, wp, var);
  MultiPoly c = w.divexact(g);
  MultiPoly d = wp.divexact(g) - c.derivative(var);
  int bound = w.degree(var) + 2;
  for (int i = 1; c.degree(var) > 0; ++i) {
    if (i > bound)
      throw arith_error("squarefree_decompose: iteration bound exceeded");
    MultiPoly f = gcd_poly(c, d, var);
    if (f.degree(var) > 0) out.factors.push_back({f, i});
    c = c.divexact(f);
    d = d.divexact(f) - c.derivative(var);
  }
  // Fold residual units (and any var-free leftovers) into the content.
  MultiPoly check = MultiPoly::constant(QElem(1));
  for (const auto& sf : out.factors)
    check *= sf.factor.pow(static_cast<unsigned>(sf.multiplicity));
  out.content = p.divexact(check);
  if (out.content.degree(var) != 0)
    throw arith_error("squarefree_decompose: residual depends on main variable");
  return out;
}

std::vector<MultiPoly> coprime_refine(const std::vector<MultiPoly>& fs,
                                      const std::string& var) {
  std::vector<MultiPoly> pool;
  auto push = [&](const MultiPoly& f) {
    if (f.degree(var) <= 0) return;
    MultiPoly n = f.normalized().second;
    for (const auto& g : pool)
      if (g == n) return;
    pool.push_back(std::move(n));
  };
  for (const auto& f : fs) push(f);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < pool.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < pool.size() && !changed; ++j) {
        MultiPoly g = gcd_poly(pool[i], pool[j], var);
        if (g.degree(var) <= 0) continue;
        MultiPoly a = pool[i].divexact(g);
        MultiPoly b = pool[j].divexact(g);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
        push(g);
        push(a);
        push(b);
        changed = true;
      }
    }
  }
  std::sort(pool.begin(), pool.end(), poly_less);
  return pool;
}

std::vector<MultiPoly> hint_basis(const std::vector<MultiPoly>& hints,
                                  const std::string& var) {
  std::vector<MultiPoly> pool;
  for (const auto& h : hints) {
    if (h.is_zero() || h.degree(var) <= 0) continue;
    for (const auto& f : squarefree_decompose(h, var).factors)
      pool.push_back(f.factor);
  }
  return coprime_refine(pool, var);
}

BasisFactorization factor_over_basis(const MultiPoly& p, const std::string& var,
                                     const std::vector<MultiPoly>& basis) {
  if (p.is_zero()) throw arith_error("factor_over_basis: zero polynomial");
  BasisFactorization out;
  out.cofactor = p;
  for (const auto& b : basis) {
    if (b.degree(var) <= 0) continue;
    int k = 0;
    while (auto q = out.cofactor.try_divexact(b)) {
      out.cofactor = std::move(*q);
      ++k;
    }
    if (k > 0) out.factors.push_back({b, k});
  }
  out.complete = out.cofactor.degree(var) <= 0;
  return out;
}

int ord_at(const MultiPoly& p, const MultiPoly& pi) {
  if (p.is_zero()) throw arith_error("ord_at: zero polynomial");
  if (pi.is_constant()) throw arith_error("ord_at: constant place polynomial");
  int k = 0;
  MultiPoly r = p;
  while (true) {
    auto q = r.try_divexact(pi);
    if (!q) return k;
    r = std::move(*q);
    ++k;
  }
}

std::optional<MultiPoly> poly_nth_root(const MultiPoly& p, unsigned n,
                                       long ambient_d) {
  if (n == 0) throw arith_error("poly_nth_root: zeroth root");
  if (n == 1 || p.is_zero()) return p;
  const long d = p.field_d() != 0 ? p.field_d() : ambient_d;
  if (p.is_constant()) {
    auto r = qelem_nth_root(p.constant_value(), n, d);
    if (!r) return std::nullopt;
    return MultiPoly::constant(*r);
  }
  // Leading-term recursion in global lex order: fix the root's leading term
  // from the n-th root of p's leading term, then peel successive terms.
  const auto& lead = *p.terms().rbegin();
  ExpVec es(lead.first.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (lead.first[i] % n != 0) return std::nullopt;
    es[i] = lead.first[i] / n;
  }
  auto cs_opt = qelem_nth_root(lead.second, n, d);
  if (!cs_opt) return std::nullopt;
  QElem cs = *cs_opt;
  MultiPoly r = MultiPoly::monomial(cs, p.vars(), es).with_vars(p.vars());
  QElem denom_c = QElem(static_cast<long>(n)) * cs.pow_n(n - 1);
  ExpVec denom_e(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) denom_e[i] = es[i] * (n - 1);
  std::size_t guard = p.term_count() * (p.term_count() + 4) + 64;
  while (true) {
    MultiPoly rem = p - r.pow(n);
    if (rem.is_zero()) return r.drop_unused_vars();
    if (guard-- == 0) return std::nullopt;
    MultiPoly rema = rem.with_vars(p.vars());
    const auto& lt = *rema.terms().rbegin();
    ExpVec eu(denom_e.size());
    for (std::size_t i = 0; i < eu.size(); ++i) {
      if (lt.first[i] < denom_e[i]) return std::nullopt;
      eu[i] = lt.first[i] - denom_e[i];
    }
    // Reject if the correction would not be lex-below the current leading
    // term (the expansion (r+u)^n could then never match p).
    if (!(eu < es)) return std::nullopt;
    QElem cu = lt.second / denom_c;
    r += MultiPoly::monomial(cu, p.vars(), eu);
  }
}

}  // namespace ellfib
