#include "ellfib/poly.hpp"

#include <algorithm>
#include <sstream>

#include "ellfib/ratfunc.hpp"

namespace ellfib {

namespace {

// Merges two sorted unique name lists.
std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

MultiPoly MultiPoly::constant(const QElem& c) {
  MultiPoly p;
  if (!c.is_zero()) p.terms_.emplace(ExpVec{}, c);
  return p;
}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p;
  p.vars_ = {name};
  p.terms_.emplace(ExpVec{1}, QElem(1));
  return p;
}

MultiPoly MultiPoly::monomial(const QElem& c, const std::vector<std::string>& vars,
                              const ExpVec& exps) {
  if (vars.size() != exps.size())
    throw arith_error("monomial: variable/exponent length mismatch");
  MultiPoly p;
  if (c.is_zero()) return p;
  // Sort the variables, permuting exponents along.
  std::vector<std::size_t> order(vars.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return vars[i] < vars[j]; });
  ExpVec e(exps.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    p.vars_.push_back(vars[order[i]]);
    e[i] = exps[order[i]];
  }
  for (std::size_t i = 1; i < p.vars_.size(); ++i)
    if (p.vars_[i] == p.vars_[i - 1])
      throw arith_error("monomial: duplicate variable " + p.vars_[i]);
  p.terms_.emplace(std::move(e), c);
  return p.drop_unused_vars();
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const ExpVec& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
}

QElem MultiPoly::constant_value() const {
  if (terms_.empty()) return QElem(0);
  if (!is_constant()) throw arith_error("constant_value: polynomial is not constant");
  return terms_.begin()->second;
}

long MultiPoly::field_d() const {
  for (const auto& [e, c] : terms_)
    if (c.d() != 0) return c.d();
  return 0;
}

void MultiPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

std::size_t MultiPoly::var_index(const std::string& var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(it - vars_.begin());
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& vars) const {
  for (std::size_t i = 1; i < vars.size(); ++i)
    if (!(vars[i - 1] < vars[i]))
      throw arith_error("with_vars: variable list not sorted/unique");
  // Build index map old -> new.
  std::vector<std::size_t> pos(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::lower_bound(vars.begin(), vars.end(), vars_[i]);
    if (it == vars.end() || *it != vars_[i])
      throw arith_error("with_vars: missing variable " + vars_[i]);
    pos[i] = static_cast<std::size_t>(it - vars.begin());
  }
  MultiPoly out;
  out.vars_ = vars;
  for (const auto& [e, c] : terms_) {
    ExpVec ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

MultiPoly MultiPoly::drop_unused_vars() const {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) used[i] = true;
  MultiPoly out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) out.vars_.push_back(vars_[i]);
  if (out.vars_.size() == vars_.size()) return *this;
  for (const auto& [e, c] : terms_) {
    ExpVec ne;
    ne.reserve(out.vars_.size());
    for (std::size_t i = 0; i < e.size(); ++i)
      if (used[i]) ne.push_back(e[i]);
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

void MultiPoly::align(const MultiPoly& p, const MultiPoly& q, MultiPoly& pa,
                      MultiPoly& qa) {
  if (p.vars_ == q.vars_) {
    pa = p;
    qa = q;
    return;
  }
  std::vector<std::string> vs = merge_vars(p.vars_, q.vars_);
  pa = p.with_vars(vs);
  qa = q.with_vars(vs);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly operator+(const MultiPoly& p, const MultiPoly& q) {
  MultiPoly pa, qa;
  MultiPoly::align(p, q, pa, qa);
  for (const auto& [e, c] : qa.terms_) {
    auto [it, fresh] = pa.terms_.emplace(e, c);
    if (!fresh) it->second += c;
  }
  pa.prune();
  return pa.drop_unused_vars();
}

MultiPoly operator-(const MultiPoly& p, const MultiPoly& q) { return p + (-q); }

MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero() || q.is_zero()) return MultiPoly();
  MultiPoly pa, qa;
  MultiPoly::align(p, q, pa, qa);
  MultiPoly out;
  out.vars_ = pa.vars_;
  const std::size_t n = out.vars_.size();
  for (const auto& [ep, cp] : pa.terms_) {
    for (const auto& [eq, cq] : qa.terms_) {
      ExpVec e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = ep[i] + eq[i];
      QElem c = cp * cq;
      auto [it, fresh] = out.terms_.emplace(std::move(e), c);
      if (!fresh) it->second += c;
    }
  }
  out.prune();
  return out.drop_unused_vars();
}

MultiPoly MultiPoly::scaled(const QElem& c) const {
  if (c.is_zero()) return MultiPoly();
  MultiPoly out = *this;
  for (auto& [e, v] : out.terms_) v *= c;
  return out;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly acc = constant(QElem(1));
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1u) acc = acc * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return acc;
}

bool operator==(const MultiPoly& p, const MultiPoly& q) {
  MultiPoly pa, qa;
  MultiPoly::align(p, q, pa, qa);
  return pa.terms_ == qa.terms_;
}

int MultiPoly::degree(const std::string& var) const {
  if (terms_.empty()) return -1;
  std::size_t i = var_index(var);
  if (i == static_cast<std::size_t>(-1)) return 0;
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return static_cast<int>(d);
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (unsigned k : e) s += k;
    d = std::max(d, s);
  }
  return static_cast<int>(d);
}

MultiPoly MultiPoly::coeff_of(const std::string& var, unsigned k) const {
  std::size_t i = var_index(var);
  if (i == static_cast<std::size_t>(-1))
    return k == 0 ? *this : MultiPoly();
  MultiPoly out;
  out.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    if (e[i] != k) continue;
    ExpVec ne = e;
    ne[i] = 0;
    out.terms_.emplace(std::move(ne), c);
  }
  return out.drop_unused_vars();
}

MultiPoly MultiPoly::leading_coeff(const std::string& var) const {
  int d = degree(var);
  if (d < 0) return MultiPoly();
  return coeff_of(var, static_cast<unsigned>(d));
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
  std::size_t i = var_index(var);
  if (i == static_cast<std::size_t>(-1)) return MultiPoly();
  MultiPoly out;
  out.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    ExpVec ne = e;
    ne[i] -= 1;
    out.terms_.emplace(std::move(ne), c * QElem(static_cast<long>(e[i])));
  }
  return out.drop_unused_vars();
}

bool MultiPoly::is_homogeneous_in(const std::vector<std::string>& hvars,
                                  int deg) const {
  std::vector<std::size_t> idx;
  for (const auto& v : hvars) {
    std::size_t i = var_index(v);
    if (i != static_cast<std::size_t>(-1)) idx.push_back(i);
  }
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (std::size_t i : idx) s += e[i];
    if (static_cast<int>(s) != deg) return false;
  }
  return true;
}

MultiPoly MultiPoly::subst(const std::map<std::string, MultiPoly>& bindings) const {
  // Precompute powers of each bound variable's image up to its max exponent.
  std::vector<const MultiPoly*> bound(vars_.size(), nullptr);
  std::vector<std::vector<MultiPoly>> powers(vars_.size());
  std::vector<unsigned> maxe(vars_.size(), 0);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i) maxe[i] = std::max(maxe[i], e[i]);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = bindings.find(vars_[i]);
    if (it == bindings.end()) continue;
    bound[i] = &it->second;
    auto& pw = powers[i];
    pw.resize(maxe[i] + 1);
    pw[0] = constant(QElem(1));
    for (unsigned k = 1; k <= maxe[i]; ++k) pw[k] = pw[k - 1] * it->second;
  }
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    MultiPoly term = constant(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (bound[i] != nullptr) {
        term = term * powers[i][e[i]];
      } else {
        term = term * variable(vars_[i]).pow(e[i]);
      }
    }
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::rename_var(const std::string& from, const std::string& to) const {
  if (from == to) return *this;
  if (var_index(to) != static_cast<std::size_t>(-1) && has_var(to))
    throw arith_error("rename_var: target variable already present: " + to);
  if (var_index(from) == static_cast<std::size_t>(-1)) return *this;
  return subst({{from, variable(to)}});
}

std::pair<QElem, MultiPoly> MultiPoly::normalized() const {
  if (terms_.empty()) return {QElem(1), MultiPoly()};
  // Rational content over all (a, b) components of all coefficients.
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  auto fold = [&](const Rat& r) {
    if (r == 0) return;
    mpz_class n = r.get_num();
    mpz_class d = r.get_den();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  };
  for (const auto& [e, c] : terms_) {
    fold(c.a());
    fold(c.b());
  }
  Rat content(num_gcd, den_lcm);
  content.canonicalize();
  // Sign: make the lex-largest term's coefficient pseudo-positive.
  const QElem& lead = terms_.rbegin()->second;
  if (!lead.norm_positive()) content = -content;
  QElem unit(content);
  MultiPoly normal = scaled(unit.inverse());
  return {unit, normal};
}

std::optional<MultiPoly> MultiPoly::try_divexact(const MultiPoly& q) const {
  if (q.is_zero()) throw arith_error("divexact: division by zero polynomial");
  if (is_zero()) return MultiPoly();
  MultiPoly r, d;
  align(*this, q, r, d);
  const ExpVec& elead = d.terms_.rbegin()->first;
  const QElem& clead = d.terms_.rbegin()->second;
  MultiPoly quot;
  quot.vars_ = r.vars_;
  const std::size_t n = r.vars_.size();
  while (!r.terms_.empty()) {
    const ExpVec& er = r.terms_.rbegin()->first;
    const QElem& cr = r.terms_.rbegin()->second;
    ExpVec et(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (er[i] < elead[i]) return std::nullopt;
      et[i] = er[i] - elead[i];
    }
    QElem ct = cr / clead;
    MultiPoly t;
    t.vars_ = quot.vars_;
    t.terms_.emplace(et, ct);
    quot.terms_.emplace(std::move(et), ct);
    // Subtraction drops unused variables; re-embed to keep exponent layout
    // aligned with the cached divisor leading term.
    r = (r - t * d).with_vars(quot.vars_);
  }
  return quot.drop_unused_vars();
}

MultiPoly MultiPoly::divexact(const MultiPoly& q) const {
  auto r = try_divexact(q);
  if (!r) throw arith_error("divexact: inexact polynomial division");
  return *r;
}

RatFunc MultiPoly::subst_rf(const std::map<std::string, RatFunc>& bindings) const {
  std::vector<const RatFunc*> bound(vars_.size(), nullptr);
  std::vector<std::vector<RatFunc>> powers(vars_.size());
  std::vector<unsigned> maxe(vars_.size(), 0);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i) maxe[i] = std::max(maxe[i], e[i]);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = bindings.find(vars_[i]);
    if (it == bindings.end()) continue;
    bound[i] = &it->second;
    auto& pw = powers[i];
    pw.resize(maxe[i] + 1);
    pw[0] = RatFunc(constant(QElem(1)));
    for (unsigned k = 1; k <= maxe[i]; ++k) pw[k] = pw[k - 1] * it->second;
  }
  RatFunc out;
  for (const auto& [e, c] : terms_) {
    RatFunc term{constant(c)};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (bound[i] != nullptr) {
        term = term * powers[i][e[i]];
      } else {
        term = term * RatFunc(variable(vars_[i]).pow(e[i]));
      }
    }
    out = out + term;
  }
  return out;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Lex-descending term order.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool is_const_term =
        std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
    // Decide sign presentation: pull a leading '-' out of purely rational
    // coefficients; mixed a+b*sqrt(d) coefficients print parenthesized.
    QElem cc = c;
    bool neg = false;
    if (c.is_rational() && c.a() < 0) {
      neg = true;
      cc = -c;
    } else if (!c.is_rational() && !c.norm_positive()) {
      neg = true;
      cc = -c;
    }
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    std::string cs;
    bool need_coeff = true;
    if (cc.is_rational()) {
      cs = rat_str(cc.a());
      if (cc.a() == 1 && !is_const_term) need_coeff = false;
    } else {
      cs = "(" + cc.str() + ")";
    }
    if (is_const_term) {
      os << cs;
      continue;
    }
    if (need_coeff) os << cs << "*";
    bool firstv = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

bool poly_less(const MultiPoly& a, const MultiPoly& b) {
  int ta = a.total_degree();
  int tb = b.total_degree();
  if (ta != tb) return ta < tb;
  return a.str() < b.str();
}

}  // namespace ellfib
