#ifndef DETSING_GBASIS_HPP
#define DETSING_GBASIS_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "detsing/ideal.hpp"
#include "detsing/polynomial.hpp"
#include "detsing/univariate.hpp"

namespace detsing {

/// Raised when a Groebner basis computation exceeds its work budget,
/// counted in terms written by reduction steps.
class WorkBudgetExceeded : public std::runtime_error {
 public:
  explicit WorkBudgetExceeded(std::size_t budget)
      : std::runtime_error("Groebner basis exceeded its budget of " + std::to_string(budget) + " work units") {}
};

namespace detail {

// Working representation for basis computations: primitive integer
// coefficients, terms sorted descending in the active ordering.
struct IPoly {
  std::vector<Monomial> mon;
  std::vector<Integer> coef;
  std::uint64_t lead_mask = 0;
  unsigned max_degree = 0;

  bool zero() const { return mon.empty(); }
  const Monomial& lead() const { return mon.front(); }
  unsigned ecart() const { return max_degree - mon.front().degree(); }
};

inline std::uint64_t support_mask(const Monomial& m) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) mask |= (std::uint64_t{1} << i);
  return mask;
}

inline void refresh(IPoly& p) {
  p.lead_mask = p.mon.empty() ? 0 : support_mask(p.mon.front());
  p.max_degree = 0;
  for (const auto& m : p.mon) p.max_degree = std::max(p.max_degree, m.degree());
}

inline void make_primitive(IPoly& p) {
  if (p.zero()) return;
  Integer g = 0;
  for (const auto& c : p.coef) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (p.coef.front() < 0) g = -g;
  if (g != 1)
    for (auto& c : p.coef) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

inline IPoly to_ipoly(const Polynomial& p, const Ordering& ord) {
  Polynomial q = p.primitive();
  std::vector<std::size_t> idx(q.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return ord.greater(q.terms()[a].mono, q.terms()[b].mono); });
  IPoly r;
  for (std::size_t i : idx) {
    r.mon.push_back(q.terms()[i].mono);
    r.coef.push_back(q.terms()[i].coeff.get_num());
  }
  make_primitive(r);
  refresh(r);
  return r;
}

inline Polynomial to_polynomial(const IPoly& p, const RingPtr& ring) {
  std::vector<Term> terms;
  terms.reserve(p.mon.size());
  for (std::size_t i = 0; i < p.mon.size(); ++i) terms.push_back({p.mon[i], Rational(p.coef[i])});
  return Polynomial(ring, std::move(terms));
}

// a*p - b*(m*g), where the leading terms are known to cancel when
// `cancels_lead` is set. Both inputs are sorted descending in `ord`.
inline IPoly combine(const Integer& a, const IPoly& p, const Integer& b, const Monomial& m, const IPoly& g,
                     const Ordering& ord, bool cancels_lead) {
  IPoly r;
  r.mon.reserve(p.mon.size() + g.mon.size());
  r.coef.reserve(p.mon.size() + g.mon.size());
  std::size_t i = cancels_lead ? 1 : 0, j = cancels_lead ? 1 : 0;
  Integer tmp;
  while (i < p.mon.size() || j < g.mon.size()) {
    if (j == g.mon.size()) {
      r.mon.push_back(p.mon[i]);
      r.coef.push_back(a == 1 ? p.coef[i] : Integer(a * p.coef[i]));
      ++i;
      continue;
    }
    Monomial mg = m * g.mon[j];
    Cmp c = i == p.mon.size() ? Cmp::LT : ord.compare(p.mon[i], mg);
    if (c == Cmp::GT) {
      r.mon.push_back(p.mon[i]);
      r.coef.push_back(a == 1 ? p.coef[i] : Integer(a * p.coef[i]));
      ++i;
    } else if (c == Cmp::LT) {
      r.mon.push_back(mg);
      tmp = b * g.coef[j];
      r.coef.push_back(-tmp);
      ++j;
    } else {
      tmp = a * p.coef[i] - b * g.coef[j];
      if (tmp != 0) {
        r.mon.push_back(mg);
        r.coef.push_back(tmp);
      }
      ++i;
      ++j;
    }
  }
  make_primitive(r);
  refresh(r);
  return r;
}

// Cancels the term of p at position `pos` (monomial t) against g.
inline void cancel_against(IPoly& p, std::size_t pos, const IPoly& g, const Ordering& ord) {
  const Monomial& t = p.mon[pos];
  Monomial m = t / g.lead();
  Integer d;
  mpz_gcd(d.get_mpz_t(), p.coef[pos].get_mpz_t(), g.coef.front().get_mpz_t());
  Integer a = g.coef.front() / d;
  Integer b = p.coef[pos] / d;
  p = combine(a, p, b, m, g, ord, pos == 0);
}

inline IPoly spoly(const IPoly& f, const IPoly& g, const Ordering& ord) {
  Monomial l = lcm(f.lead(), g.lead());
  Integer d;
  mpz_gcd(d.get_mpz_t(), f.coef.front().get_mpz_t(), g.coef.front().get_mpz_t());
  Integer a = g.coef.front() / d;
  Integer b = f.coef.front() / d;
  // a*(l/lf)*f - b*(l/lg)*g; scale f by its cofactor first.
  IPoly fs;
  Monomial mf = l / f.lead();
  fs.mon.reserve(f.mon.size());
  for (const auto& x : f.mon) fs.mon.push_back(mf * x);
  fs.coef = f.coef;
  return combine(a, fs, b, l / g.lead(), g, ord, true);
}

inline const IPoly* find_divisor(const std::vector<const IPoly*>& basis, const Monomial& t, std::uint64_t tmask) {
  for (const IPoly* g : basis)
    if ((g->lead_mask & ~tmask) == 0 && g->lead().divides(t)) return g;
  return nullptr;
}

// Full reduction for global orderings: no term of the result is divisible
// by a leading monomial of `basis`.
struct WorkMeter {
  std::size_t used = 0;
  std::size_t limit = 0;
  void charge(std::size_t n) {
    used += n;
    if (limit && used > limit) throw WorkBudgetExceeded(limit);
  }
};

inline IPoly reduce_global(IPoly p, const std::vector<const IPoly*>& basis, const Ordering& ord, bool tail = true,
                           WorkMeter* meter = nullptr) {
  std::size_t pos = 0;
  while (pos < p.mon.size()) {
    const Monomial& t = p.mon[pos];
    const IPoly* g = find_divisor(basis, t, support_mask(t));
    if (g) {
      cancel_against(p, pos, *g, ord);
      if (meter) meter->charge(p.mon.size());
    } else {
      if (!tail) break;
      ++pos;
    }
  }
  return p;
}

// Mora's weak normal form for local orderings: the leading monomial of the
// result is not divisible by any leading monomial of `basis`. The reducer
// with smallest ecart is chosen; intermediate remainders with smaller ecart
// than their reducer join the reducer set, which guarantees termination.
inline IPoly reduce_mora(IPoly h, const std::vector<const IPoly*>& basis, const Ordering& ord) {
  std::vector<IPoly> extra;
  extra.reserve(16);
  while (!h.zero()) {
    const Monomial& t = h.lead();
    std::uint64_t tmask = support_mask(t);
    const IPoly* best = nullptr;
    for (const IPoly* g : basis)
      if ((g->lead_mask & ~tmask) == 0 && g->lead().divides(t))
        if (!best || g->ecart() < best->ecart()) best = g;
    for (const IPoly& g : extra)
      if ((g.lead_mask & ~tmask) == 0 && g.lead().divides(t))
        if (!best || g.ecart() < best->ecart()) best = &g;
    if (!best) break;
    IPoly reducer = *best;
    if (reducer.ecart() > h.ecart()) extra.push_back(h);
    cancel_against(h, 0, reducer, ord);
  }
  return h;
}

}  // namespace detail

/// A reduced (global) or minimal (local) standard basis of an ideal.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, Ordering ord, std::vector<Polynomial> basis)
      : ring_(std::move(ring)), ord_(std::move(ord)), basis_(std::move(basis)) {
    for (const auto& g : basis_) leads_.push_back(leading_monomial(g));
  }

  const RingPtr& ring() const { return ring_; }
  const Ordering& ordering() const { return ord_; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  const std::vector<Monomial>& leading_monomials() const { return leads_; }
  std::size_t size() const { return basis_.size(); }

  Monomial leading_monomial(const Polynomial& p) const {
    if (p.is_zero()) throw std::invalid_argument("leading monomial of zero");
    const Monomial* best = &p.terms().front().mono;
    for (const auto& t : p.terms())
      if (ord_.greater(t.mono, *best)) best = &t.mono;
    return *best;
  }

 private:
  RingPtr ring_;
  Ordering ord_;
  std::vector<Polynomial> basis_;
  std::vector<Monomial> leads_;
};

struct BuchbergerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
};


namespace detail {

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  std::size_t serial;
};

class StandardBasisBuilder {
 public:
  StandardBasisBuilder(const Ordering& ord, BuchbergerStats* stats, std::size_t max_work = 0)
      : ord_(ord), stats_(stats) {
    meter_.limit = max_work;
  }

  void add_generator(IPoly h) {
    h = normal(std::move(h));
    if (!h.zero()) insert(std::move(h));
  }

  void run() {
    while (!pairs_.empty()) {
      // Normal strategy: smallest lcm, ties by insertion order.
      auto best = pairs_.begin();
      for (auto it = pairs_.begin(); it != pairs_.end(); ++it) {
        Cmp c = ord_.compare(it->lcm, best->lcm);
        if (c == Cmp::LT || (c == Cmp::EQ && it->serial < best->serial)) best = it;
      }
      Pair pr = *best;
      *best = pairs_.back();
      pairs_.pop_back();
      if (stats_) ++stats_->pairs_reduced;
      IPoly s = spoly(pool_[pr.i], pool_[pr.j], ord_);
      IPoly h = normal(std::move(s));
      if (h.zero()) {
        if (stats_) ++stats_->zero_reductions;
        continue;
      }
      if (is_constant(h)) {
        unit_ = true;
        pairs_.clear();
        return;
      }
      insert(std::move(h));
    }
  }

  bool unit() const { return unit_; }

  std::vector<IPoly> result() {
    std::vector<IPoly> out;
    if (unit_) {
      IPoly one;
      one.mon.push_back(Monomial(nvars()));
      one.coef.push_back(1);
      refresh(one);
      out.push_back(std::move(one));
      return out;
    }
    // Minimalize: drop elements whose lead is divisible by another lead.
    std::vector<std::size_t> keep;
    for (std::size_t i : active_) {
      bool redundant = false;
      for (std::size_t j : active_) {
        if (i == j) continue;
        const Monomial& li = pool_[i].lead();
        const Monomial& lj = pool_[j].lead();
        if (lj.divides(li) && (!(lj == li) || j < i)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) keep.push_back(i);
    }
    for (std::size_t i : keep) out.push_back(pool_[i]);
    if (ord_.is_global()) {
      // Interreduce tails.
      for (std::size_t k = 0; k < out.size(); ++k) {
        std::vector<const IPoly*> others;
        for (std::size_t m = 0; m < out.size(); ++m)
          if (m != k) others.push_back(&out[m]);
        out[k] = reduce_global(std::move(out[k]), others, ord_, true);
      }
    }
    std::sort(out.begin(), out.end(), [&](const IPoly& a, const IPoly& b) { return ord_.less(a.lead(), b.lead()); });
    return out;
  }

 private:
  std::size_t nvars() const { return pool_.empty() ? 0 : pool_.front().lead().size(); }

  static bool is_constant(const IPoly& h) { return h.lead().is_one() && h.mon.size() == 1; }

  std::vector<const IPoly*> active_ptrs() const {
    std::vector<const IPoly*> v;
    v.reserve(active_.size());
    for (std::size_t i : active_) v.push_back(&pool_[i]);
    return v;
  }

  IPoly normal(IPoly h) {
    if (h.zero()) return h;
    auto basis = active_ptrs();
    if (ord_.is_global()) return reduce_global(std::move(h), basis, ord_, true, &meter_);
    return reduce_mora(std::move(h), basis, ord_);
  }

  // Gebauer-Moeller update with the chain criterion; the product criterion
  // is applied for global orderings only.
  void insert(IPoly h) {
    if (!unit_ && h.lead().is_one() && ord_.is_global()) {
      unit_ = true;
      pairs_.clear();
    }
    if (!unit_ && ord_.is_local() && h.lead().is_one()) {
      unit_ = true;  // a unit leading term makes the local ideal the whole ring
      pairs_.clear();
    }
    std::size_t hi = pool_.size();
    pool_.push_back(std::move(h));
    if (unit_) return;
    const Monomial& lh = pool_[hi].lead();
    const bool global = ord_.is_global();

    // New candidate pairs (h, g).
    std::vector<Pair> cand;
    for (std::size_t g : active_) cand.push_back({g, hi, lcm(pool_[g].lead(), lh), 0});

    std::vector<bool> drop(cand.size(), false);
    for (std::size_t a = 0; a < cand.size(); ++a) {
      const bool coprime_a = global && coprime(pool_[cand[a].i].lead(), lh);
      if (coprime_a) continue;
      for (std::size_t b = 0; b < cand.size(); ++b) {
        if (a == b || drop[b]) continue;
        if (cand[b].lcm.divides(cand[a].lcm) && (!(cand[b].lcm == cand[a].lcm) || b < a)) {
          drop[a] = true;
          break;
        }
      }
    }
    // Old pairs killed by the chain criterion through h.
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (const auto& p : pairs_) {
      bool killed = lh.divides(p.lcm) && !(lcm(pool_[p.i].lead(), lh) == p.lcm) &&
                    !(lcm(pool_[p.j].lead(), lh) == p.lcm);
      if (stats_ && killed) ++stats_->pairs_considered;
      if (!killed) kept.push_back(p);
    }
    pairs_ = std::move(kept);
    for (std::size_t a = 0; a < cand.size(); ++a) {
      if (stats_) ++stats_->pairs_considered;
      if (drop[a]) continue;
      if (global && coprime(pool_[cand[a].i].lead(), lh)) continue;
      cand[a].serial = serial_++;
      pairs_.push_back(cand[a]);
    }
    // Drop basis elements made redundant by h (global only: Mora's
    // reducer sets keep them, they are cheap for local sizes).
    if (global) {
      std::vector<std::size_t> act;
      for (std::size_t g : active_)
        if (!lh.divides(pool_[g].lead())) act.push_back(g);
      active_ = std::move(act);
    }
    active_.push_back(hi);
  }

  Ordering ord_;
  BuchbergerStats* stats_;
  std::vector<IPoly> pool_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
  std::size_t serial_ = 0;
  WorkMeter meter_;
  bool unit_ = false;
};

}  // namespace detail

/// Reduced Groebner basis (global orderings: Buchberger with the product and
/// chain criteria) or minimal standard basis (local ordering: Mora's
/// tangent-cone algorithm). Deterministic for a given generator order.
/// A nonzero `max_work` bounds the terms written by reduction steps
/// (global orderings only) and raises WorkBudgetExceeded past it.
inline GroebnerBasis buchberger(const IdealGens& gens, const Ordering& ord, BuchbergerStats* stats = nullptr,
                                std::size_t max_work = 0) {
  const RingPtr& ring = gens.ring();
  if (ord.kind() == Ordering::Kind::BlockElimination && ord.permutation().size() != ring->size())
    throw std::invalid_argument("buchberger: elimination ordering built for another ring");
  detail::StandardBasisBuilder builder(ord, stats, max_work);
  for (const auto& g : gens) {
    builder.add_generator(detail::to_ipoly(g, ord));
    if (builder.unit()) break;
  }
  if (!builder.unit()) builder.run();
  std::vector<Polynomial> basis;
  for (const auto& p : builder.result()) basis.push_back(detail::to_polynomial(p, ring).monic());
  if (gens.empty()) basis.clear();
  return GroebnerBasis(ring, ord, std::move(basis));
}

inline bool is_unit_ideal(const GroebnerBasis& G) {
  return G.size() == 1 && G.leading_monomials()[0].is_one();
}

/// Krull dimension from the leading-monomial ideal; -1 for the unit ideal.
inline int ideal_dimension(const GroebnerBasis& G) {
  if (!G.ordering().is_global()) throw std::invalid_argument("ideal_dimension: requires a global ordering");
  if (is_unit_ideal(G)) return -1;
  const std::size_t n = G.ring()->size();
  std::vector<std::uint64_t> masks;
  for (const auto& m : G.leading_monomials()) masks.push_back(detail::support_mask(m));
  int best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    int card = __builtin_popcountll(s);
    if (card <= best) continue;
    bool independent = true;
    for (auto m : masks)
      if ((m & ~s) == 0) {
        independent = false;
        break;
      }
    if (independent) best = card;
  }
  return best;
}

struct QuotientInfo {
  bool zero_dimensional = false;
  /// Vector-space dimension; meaningful only when zero_dimensional.
  std::size_t dimension = 0;
  std::vector<Monomial> standard_monomials;
};

/// Standard monomials outside a monomial ideal, when finitely many.
inline QuotientInfo staircase(const std::vector<Monomial>& leads, std::size_t nvars) {
  QuotientInfo info;
  std::vector<unsigned> bound(nvars, 0);  // pure power exponent per variable
  for (const auto& m : leads) {
    auto s = m.support();
    if (m.is_one()) {
      info.zero_dimensional = true;
      info.dimension = 0;
      return info;
    }
    if (s.size() == 1) {
      unsigned e = m[s[0]];
      if (bound[s[0]] == 0 || e < bound[s[0]]) bound[s[0]] = e;
    }
  }
  for (unsigned b : bound)
    if (b == 0) return info;  // some variable is free: infinite staircase
  info.zero_dimensional = true;
  // Depth-first walk over the box, pruning at divisible monomials (the
  // complement of a monomial ideal is closed under division).
  Monomial cur(nvars);
  std::vector<Monomial> out;
  auto in_ideal = [&](const Monomial& m) {
    for (const auto& l : leads)
      if (l.divides(m)) return true;
    return false;
  };
  std::function<void(std::size_t)> walk = [&](std::size_t var) {
    if (var == nvars) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e < bound[var]; ++e) {
      cur.set(var, e);
      // Only prefix-check: a monomial divisible now stays divisible as later
      // variables grow, so later exponents can be skipped.
      Monomial probe = cur;
      for (std::size_t v = var + 1; v < nvars; ++v) probe.set(v, 0);
      if (in_ideal(probe)) break;
      walk(var + 1);
    }
    cur.set(var, 0);
  };
  walk(0);
  info.dimension = out.size();
  info.standard_monomials = std::move(out);
  return info;
}

inline QuotientInfo quotient_dimension(const GroebnerBasis& G) {
  return staircase(G.leading_monomials(), G.ring()->size());
}

namespace detail {

inline IPoly reduce_local_full(IPoly p, const std::vector<const IPoly*>& basis, const Ordering& ord,
                               std::optional<unsigned> degree_cap) {
  IPoly out;
  while (!p.zero()) {
    if (degree_cap) {
      // Drop terms that lie in the ideal because they sit past the staircase.
      IPoly q;
      for (std::size_t i = 0; i < p.mon.size(); ++i)
        if (p.mon[i].degree() <= *degree_cap) {
          q.mon.push_back(p.mon[i]);
          q.coef.push_back(p.coef[i]);
        }
      refresh(q);
      p = std::move(q);
      if (p.zero()) break;
    }
    p = reduce_mora(std::move(p), basis, ord);
    if (p.zero()) break;
    if (!degree_cap) {
      // Without a finite staircase only the weak normal form is available.
      for (std::size_t i = 0; i < p.mon.size(); ++i) {
        out.mon.push_back(p.mon[i]);
        out.coef.push_back(p.coef[i]);
      }
      break;
    }
    out.mon.push_back(p.mon.front());
    out.coef.push_back(p.coef.front());
    p.mon.erase(p.mon.begin());
    p.coef.erase(p.coef.begin());
    refresh(p);
  }
  refresh(out);
  return out;
}

}  // namespace detail

/// Global orderings: the unique fully reduced remainder, linear in p.
/// Local ordering: Mora's normal form, zero iff p lies in the ideal of the
/// local ring. It is the remainder of u*p for some unit u; when the local
/// quotient is finite the tail is reduced as well, dropping monomials beyond
/// the staircase (those lie in the local ideal).
inline Polynomial normal_form(const Polynomial& p, const GroebnerBasis& G) {
  if (p.is_zero()) return p;
  if (!same_ring(p.ring(), G.ring())) throw std::invalid_argument("normal_form: mismatched rings");
  const Ordering& ord = G.ordering();
  if (ord.is_global()) {
    Polynomial rem(p.ring());
    Polynomial work = p;
    while (!work.is_zero()) {
      Monomial lt = G.leading_monomial(work);
      Rational lc = work.coefficient(lt);
      bool reduced = false;
      for (std::size_t k = 0; k < G.size(); ++k) {
        const Monomial& lg = G.leading_monomials()[k];
        if (lg.divides(lt)) {
          const Polynomial& g = G.basis()[k];
          Rational c = lc / g.coefficient(lg);
          work -= c * (Polynomial::monomial(p.ring(), lt / lg) * g);
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        Polynomial t = Polynomial::monomial(p.ring(), lt, lc);
        rem += t;
        work -= t;
      }
    }
    return rem;
  }
  std::vector<detail::IPoly> gs;
  gs.reserve(G.size());
  for (const auto& g : G.basis()) gs.push_back(detail::to_ipoly(g, ord));
  std::vector<const detail::IPoly*> ptrs;
  for (const auto& g : gs) ptrs.push_back(&g);
  QuotientInfo qi = quotient_dimension(G);
  std::optional<unsigned> cap;
  if (qi.zero_dimensional) {
    unsigned d = 0;
    for (const auto& m : qi.standard_monomials) d = std::max(d, m.degree());
    cap = d;
  }
  detail::IPoly r = detail::reduce_local_full(detail::to_ipoly(p, ord), ptrs, ord, cap);
  return detail::to_polynomial(r, p.ring());
}

/// Least-degree monic m with normal_form(m(ell), G) = 0, in a fresh
/// univariate ring whose variable is named `var_name`.
inline Polynomial minimal_polynomial(const Polynomial& ell, const GroebnerBasis& G, const std::string& var_name = "t") {
  if (!G.ordering().is_global()) throw std::invalid_argument("minimal_polynomial: requires a global ordering");
  QuotientInfo qi = quotient_dimension(G);
  if (!qi.zero_dimensional) throw std::invalid_argument("minimal_polynomial: quotient is not finite-dimensional");
  RingPtr tring = make_ring({var_name});
  if (is_unit_ideal(G)) return Polynomial(tring, Rational(1));
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t i = 0; i < qi.standard_monomials.size(); ++i) index[qi.standard_monomials[i]] = i;
  const std::size_t D = qi.dimension;

  auto to_vec = [&](const Polynomial& nf) {
    std::vector<Rational> v(D);
    for (const auto& t : nf.terms()) v[index.at(t.mono)] = t.coeff;
    return v;
  };

  // Incremental echelon form; each row carries the power combination it encodes.
  struct Row {
    std::vector<Rational> vec;
    std::vector<Rational> combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  Polynomial power = normal_form(Polynomial(G.ring(), Rational(1)), G);
  for (std::size_t k = 0; k <= D; ++k) {
    Row r{to_vec(power), std::vector<Rational>(k + 1), 0};
    r.combo[k] = 1;
    for (const auto& row : rows) {
      const Rational& c = r.vec[row.pivot];
      if (c == 0) continue;
      Rational f = c;
      for (std::size_t i = 0; i < D; ++i) r.vec[i] -= f * row.vec[i];
      for (std::size_t i = 0; i < row.combo.size(); ++i) r.combo[i] -= f * row.combo[i];
    }
    std::size_t piv = D;
    for (std::size_t i = 0; i < D; ++i)
      if (r.vec[i] != 0) {
        piv = i;
        break;
      }
    if (piv == D) {
      Dense m(r.combo.begin(), r.combo.end());
      return from_dense(detail::dense_monic(m), tring, 0);
    }
    Rational inv = 1 / r.vec[piv];
    for (auto& x : r.vec) x *= inv;
    for (auto& x : r.combo) x *= inv;
    r.pivot = piv;
    // Keep earlier rows reduced against the new pivot.
    for (auto& row : rows) {
      Rational c = row.vec[piv];
      if (c == 0) continue;
      for (std::size_t i = 0; i < D; ++i) row.vec[i] -= c * r.vec[i];
      for (std::size_t i = 0; i < r.combo.size(); ++i) {
        if (row.combo.size() <= i) row.combo.resize(i + 1);
        row.combo[i] -= c * r.combo[i];
      }
    }
    rows.push_back(std::move(r));
    power = normal_form(ell * power, G);
  }
  throw std::logic_error("minimal_polynomial: no dependence found within quotient dimension");
}

/// Generators of the elimination ideal I ∩ Q[keep], computed with a
/// block elimination ordering. Results stay in the original ring.
inline IdealGens eliminate(const IdealGens& gens, const std::vector<std::size_t>& keep) {
  const std::size_t n = gens.ring()->size();
  std::vector<std::size_t> elim;
  for (std::size_t v = 0; v < n; ++v)
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) elim.push_back(v);
  GroebnerBasis G = buchberger(gens, Ordering::elimination(n, elim));
  IdealGens out(gens.ring());
  for (const auto& g : G.basis()) {
    bool inside = true;
    for (std::size_t v : g.support())
      if (std::find(keep.begin(), keep.end(), v) == keep.end()) inside = false;
    if (inside) out.add(g);
  }
  return out;
}

/// Exhaustive check that every S-polynomial of the basis reduces to zero.
inline bool verify_standard_basis(const GroebnerBasis& G) {
  const Ordering& ord = G.ordering();
  std::vector<detail::IPoly> gs;
  for (const auto& g : G.basis()) gs.push_back(detail::to_ipoly(g, ord));
  std::vector<const detail::IPoly*> ptrs;
  for (const auto& g : gs) ptrs.push_back(&g);
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      detail::IPoly s = detail::spoly(gs[i], gs[j], ord);
      detail::IPoly r = ord.is_global() ? detail::reduce_global(std::move(s), ptrs, ord, false)
                                        : detail::reduce_mora(std::move(s), ptrs, ord);
      if (!r.zero()) return false;
    }
  return true;
}

namespace detail {

// Subspace of Q^D kept in reduced row echelon form.
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  bool insert(std::vector<Rational> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational c = v[pivots_[r]];
      if (c == 0) continue;
      for (std::size_t i = 0; i < dim_; ++i)
        if (rows_[r][i] != 0) v[i] -= c * rows_[r][i];
    }
    std::size_t piv = dim_;
    for (std::size_t i = 0; i < dim_; ++i)
      if (v[i] != 0) {
        piv = i;
        break;
      }
    if (piv == dim_) return false;
    const Rational inv = 1 / v[piv];
    for (auto& x : v) x *= inv;
    for (auto& row : rows_) {
      const Rational c = row[piv];
      if (c == 0) continue;
      for (std::size_t i = 0; i < dim_; ++i)
        if (v[i] != 0) row[i] -= c * v[i];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

 private:
  std::size_t dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace detail

/// Matrix of multiplication by p on the standard monomial basis of a
/// zero-dimensional quotient; column b holds the normal form of p*b.
inline std::vector<std::vector<Rational>> multiplication_matrix(const Polynomial& p, const GroebnerBasis& G,
                                                                const QuotientInfo& qi) {
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t i = 0; i < qi.standard_monomials.size(); ++i) index[qi.standard_monomials[i]] = i;
  const std::size_t D = qi.dimension;
  std::vector<std::vector<Rational>> cols(D, std::vector<Rational>(D));
  for (std::size_t b = 0; b < D; ++b) {
    Polynomial nf = normal_form(p * Polynomial::monomial(G.ring(), qi.standard_monomials[b]), G);
    for (const auto& t : nf.terms()) cols[b][index.at(t.mono)] = t.coeff;
  }
  return cols;
}

/// Length of Q[x]/I localised at the origin, for I zero-dimensional with
/// global basis G. The quotient splits into one local algebra per point;
/// the stable image of x_i is the sum of the pieces at points with x_i != 0,
/// so the origin piece is what those images miss.
inline std::size_t origin_multiplicity(const GroebnerBasis& G) {
  if (!G.ordering().is_global()) throw std::invalid_argument("origin_multiplicity: requires a global ordering");
  QuotientInfo qi = quotient_dimension(G);
  if (!qi.zero_dimensional) throw std::invalid_argument("origin_multiplicity: quotient is not finite-dimensional");
  const std::size_t D = qi.dimension;
  if (D == 0) return 0;
  detail::Echelon away(D);
  for (std::size_t v = 0; v < G.ring()->size(); ++v) {
    auto cols = multiplication_matrix(Polynomial::variable(G.ring(), v), G, qi);
    std::vector<std::vector<Rational>> image;
    for (std::size_t b = 0; b < D; ++b) {
      std::vector<Rational> e(D);
      e[b] = 1;
      image.push_back(std::move(e));
    }
    for (;;) {
      detail::Echelon next(D);
      for (const auto& w : image) {
        std::vector<Rational> mw(D);
        for (std::size_t b = 0; b < D; ++b)
          if (w[b] != 0)
            for (std::size_t i = 0; i < D; ++i)
              if (cols[b][i] != 0) mw[i] += w[b] * cols[b][i];
        next.insert(std::move(mw));
      }
      bool stable = next.rank() == image.size();
      image = next.rows();
      if (stable) break;
    }
    for (const auto& w : image) away.insert(w);
    if (away.rank() == D) break;
  }
  return D - away.rank();
}

inline std::size_t origin_multiplicity(const IdealGens& gens) {
  return origin_multiplicity(buchberger(gens, Ordering::degrevlex()));
}

/// Generators of I : v^inf for the variable v, via a degrevlex basis of the
/// homogenised ideal with v ordered last.
inline IdealGens saturate(const IdealGens& gens, std::size_t var, std::size_t max_work = 0) {
  const RingPtr& ring = gens.ring();
  const std::size_t n = ring->size();
  if (var >= n) throw std::out_of_range("saturate: variable index");
  if (n + 1 > kMaxVars) throw std::length_error("saturate: too many variables");
  std::vector<std::string> names;
  std::vector<std::size_t> pos(n);
  for (std::size_t v = 0; v < n; ++v)
    if (v != var) {
      pos[v] = names.size();
      names.push_back(ring->name(v));
    }
  const std::size_t hpos = names.size();
  std::string hname = "_h";
  while (ring->index_of(hname)) hname += "_";
  names.push_back(hname);
  pos[var] = names.size();
  names.push_back(ring->name(var));
  RingPtr big = make_ring(names);
  IdealGens hom(big);
  for (const auto& g : gens) {
    const int d = g.total_degree();
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
      Monomial m(n + 1);
      for (std::size_t v = 0; v < n; ++v) m.set(pos[v], t.mono[v]);
      m.set(hpos, static_cast<unsigned>(d) - t.mono.degree());
      terms.push_back({m, t.coeff});
    }
    hom.add(Polynomial(big, std::move(terms)));
  }
  GroebnerBasis G = buchberger(hom, Ordering::degrevlex(), nullptr, max_work);
  IdealGens out(ring);
  for (const auto& g : G.basis()) {
    unsigned e = std::numeric_limits<unsigned>::max();
    for (const auto& t : g.terms()) e = std::min<unsigned>(e, t.mono[pos[var]]);
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
      Monomial m(n);
      for (std::size_t v = 0; v < n; ++v) m.set(v, t.mono[pos[v]]);
      m.set(var, t.mono[pos[var]] - e);
      terms.push_back({m, t.coeff});
    }
    out.add(Polynomial(ring, std::move(terms)));
  }
  return out;
}

/// Convenience: Groebner basis of polynomials under degrevlex.
inline GroebnerBasis groebner(const IdealGens& gens) { return buchberger(gens, Ordering::degrevlex()); }

}  // namespace detsing

#endif  // DETSING_GBASIS_HPP
