#ifndef DETSING_POLYNOMIAL_HPP
#define DETSING_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "detsing/monomial.hpp"

namespace detsing {

/// Exact rational; GMP keeps it canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Ordered variable names of a polynomial ring over Q.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxVars) throw std::invalid_argument("Ring: too many variables");
    for (const auto& n : names_) {
      bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
      for (char c : n) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
      if (!ok) throw std::invalid_argument("Ring: invalid variable name '" + n + "'");
    }
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw std::invalid_argument("Ring: duplicate variable '" + names_[i] + "'");
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  std::optional<std::size_t> index_of(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return i;
    return std::nullopt;
  }
  std::size_t require(const std::string& n) const {
    auto i = index_of(n);
    if (!i) throw std::invalid_argument("Ring: unknown variable '" + n + "'");
    return *i;
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Multivariate polynomial over Q. Terms are kept sorted by descending
/// degrevlex with no zero coefficients, so equality is structural.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
    if (c != 0) terms_.push_back({Monomial(ring_->size()), c});
    if (!terms_.empty()) terms_.back().coeff.canonicalize();
  }
  Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    canonicalize();
  }

  static Polynomial variable(RingPtr ring, std::size_t i) {
    std::size_t n = ring->size();
    if (i >= n) throw std::out_of_range("Polynomial::variable: index out of range");
    return Polynomial(std::move(ring), {{Monomial::variable(n, i), Rational(1)}});
  }
  static Polynomial variable(const RingPtr& ring, const std::string& name) {
    return variable(ring, ring->require(name));
  }
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c = 1) {
    return Polynomial(std::move(ring), {{m, c}});
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t nvars() const { return ring_ ? ring_->size() : 0; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return 0;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
    return d;
  }
  /// Lowest total degree among terms (order of vanishing at the origin); -1 for zero.
  int order() const { return terms_.empty() ? -1 : static_cast<int>(terms_.back().mono.degree()); }

  Rational coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return 0;
  }

  /// Variables actually occurring.
  std::vector<std::size_t> support() const {
    std::vector<bool> used(nvars(), false);
    for (const auto& t : terms_)
      for (std::size_t v : t.mono.support()) used[v] = true;
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < used.size(); ++v)
      if (used[v]) s.push_back(v);
    return s;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) { return combine(p, q, false); }
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return combine(p, q, true); }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    check_rings(p, q);
    RingPtr ring = p.ring_ ? p.ring_ : q.ring_;
    if (p.is_zero() || q.is_zero()) return Polynomial(ring);
    std::vector<Term> out;
    out.reserve(p.size() * q.size());
    for (const auto& a : p.terms_)
      for (const auto& b : q.terms_) out.push_back({a.mono * b.mono, a.coeff * b.coeff});
    return Polynomial(ring, std::move(out));
  }

  friend Polynomial operator*(const Rational& c, const Polynomial& p) {
    if (c == 0) return Polynomial(p.ring_);
    Polynomial r = p;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
  Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }
  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

  Polynomial pow(unsigned e) const {
    Polynomial result(ring_, Rational(1));
    Polynomial base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    if (p.terms_.size() != q.terms_.size()) return false;
    if (!p.terms_.empty() && !same_ring(p.ring_, q.ring_)) return false;
    for (std::size_t i = 0; i < p.terms_.size(); ++i)
      if (!(p.terms_[i].mono == q.terms_[i].mono) || p.terms_[i].coeff != q.terms_[i].coeff) return false;
    return true;
  }
  friend bool operator!=(const Polynomial& p, const Polynomial& q) { return !(p == q); }

  /// Same polynomial up to a nonzero rational factor.
  bool proportional(const Polynomial& q) const {
    if (terms_.size() != q.terms_.size()) return false;
    if (terms_.empty()) return true;
    Rational f = q.terms_[0].coeff / terms_[0].coeff;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].mono == q.terms_[i].mono) || terms_[i].coeff * f != q.terms_[i].coeff) return false;
    return true;
  }

  /// Scales so the coefficients are coprime integers with a positive first coefficient.
  Polynomial primitive() const {
    if (terms_.empty()) return *this;
    Integer den = 1, num = 0;
    for (const auto& t : terms_) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
    }
    Rational f(den, num);
    f.canonicalize();
    if (terms_[0].coeff < 0) f = -f;
    return f * *this;
  }

  Polynomial monic() const {
    if (terms_.empty()) return *this;
    return Rational(1 / terms_[0].coeff) * *this;
  }

  /// Formal partial derivative.
  Polynomial differentiate(std::size_t var) const {
    if (var >= nvars()) throw std::out_of_range("differentiate: variable index out of range");
    std::vector<Term> out;
    for (const auto& t : terms_) {
      unsigned e = t.mono[var];
      if (e == 0) continue;
      Monomial m = t.mono;
      m.set(var, e - 1);
      out.push_back({m, t.coeff * e});
    }
    return Polynomial(ring_, std::move(out));
  }

  /// Ring homomorphism into `target`: variable i maps to images[i]
  /// (every image must live in `target`).
  Polynomial compose(const RingPtr& target, const std::vector<Polynomial>& images) const {
    if (images.size() != nvars()) throw std::invalid_argument("compose: need one image per variable");
    Polynomial result(target);
    // Cache powers per variable; degrees are small.
    std::vector<std::vector<Polynomial>> powers(nvars());
    auto power_of = [&](std::size_t v, unsigned e) -> const Polynomial& {
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(Polynomial(target, Rational(1)));
      while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
      return cache[e];
    };
    for (const auto& t : terms_) {
      Polynomial term(target, t.coeff);
      for (std::size_t v = 0; v < nvars(); ++v)
        if (t.mono[v] != 0) term *= power_of(v, t.mono[v]);
      result += term;
    }
    return result;
  }

  /// Evaluates at a rational point.
  Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != nvars()) throw std::invalid_argument("evaluate: point dimension mismatch");
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational v = t.coeff;
      for (std::size_t i = 0; i < nvars(); ++i)
        for (unsigned e = 0; e < t.mono[i]; ++e) v *= point[i];
      sum += v;
    }
    return sum;
  }

  std::string to_string() const;

 private:
  static void check_rings(const Polynomial& p, const Polynomial& q) {
    if (p.ring_ && q.ring_ && !same_ring(p.ring_, q.ring_))
      throw std::invalid_argument("Polynomial: mismatched rings");
  }

  static Polynomial combine(const Polynomial& p, const Polynomial& q, bool subtract) {
    check_rings(p, q);
    RingPtr ring = p.ring_ ? p.ring_ : q.ring_;
    const Ordering ord = Ordering::degrevlex();
    std::vector<Term> out;
    out.reserve(p.size() + q.size());
    std::size_t i = 0, j = 0;
    while (i < p.size() || j < q.size()) {
      Cmp c = i == p.size() ? Cmp::LT : j == q.size() ? Cmp::GT : ord.compare(p.terms_[i].mono, q.terms_[j].mono);
      if (c == Cmp::GT) {
        out.push_back(p.terms_[i++]);
      } else if (c == Cmp::LT) {
        out.push_back(q.terms_[j++]);
        if (subtract) out.back().coeff = -out.back().coeff;
      } else {
        Rational s = subtract ? Rational(p.terms_[i].coeff - q.terms_[j].coeff) : Rational(p.terms_[i].coeff + q.terms_[j].coeff);
        if (s != 0) out.push_back({p.terms_[i].mono, s});
        ++i;
        ++j;
      }
    }
    Polynomial r(ring);
    r.terms_ = std::move(out);
    return r;
  }

  void canonicalize() {
    const Ordering ord = Ordering::degrevlex();
    for (auto& t : terms_) {
      if (t.mono.size() != nvars()) throw std::invalid_argument("Polynomial: monomial from another ring");
      t.coeff.canonicalize();
    }
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return ord.greater(a.mono, b.mono); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff += t.coeff;
      } else {
        if (!out.empty() && out.back().coeff == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
    terms_ = std::move(out);
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline Polynomial operator+(const Polynomial& p, const Rational& c) { return p + Polynomial(p.ring(), c); }
inline Polynomial operator-(const Polynomial& p, const Rational& c) { return p - Polynomial(p.ring(), c); }

inline std::string monomial_to_string(const Monomial& m, const Ring& ring) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += ring.name(i);
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

/// Prints in the input grammar, so the output parses back to the same polynomial.
inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    Rational c = t.coeff;
    if (c < 0) {
      s += i == 0 ? "-" : " - ";
      c = -c;
    } else if (i > 0) {
      s += " + ";
    }
    if (t.mono.is_one()) {
      s += c.get_str();
    } else {
      if (c != 1) s += c.get_str() + "*";
      s += monomial_to_string(t.mono, *ring_);
    }
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

/// Substitutes the listed variables; unassigned variables map to the
/// same-named variable of `target`.
inline Polynomial substitute(const Polynomial& p, const std::map<std::size_t, Polynomial>& assignment,
                             const RingPtr& target) {
  std::vector<Polynomial> images;
  images.reserve(p.nvars());
  for (std::size_t v = 0; v < p.nvars(); ++v) {
    auto it = assignment.find(v);
    if (it != assignment.end()) {
      if (!it->second.is_zero() && !same_ring(it->second.ring(), target))
        throw std::invalid_argument("substitute: image outside the target ring");
      images.push_back(it->second.is_zero() ? Polynomial(target) : it->second);
    } else {
      auto idx = target->index_of(p.ring()->name(v));
      if (!idx) {
        // A variable that does not occur can vanish from the target ring.
        bool occurs = false;
        for (const auto& t : p.terms())
          if (t.mono[v] != 0) occurs = true;
        if (occurs) throw std::invalid_argument("substitute: target ring lacks variable '" + p.ring()->name(v) + "'");
        images.push_back(Polynomial(target));
      } else {
        images.push_back(Polynomial::variable(target, *idx));
      }
    }
  }
  return p.compose(target, images);
}

inline Polynomial substitute(const Polynomial& p, const std::map<std::size_t, Polynomial>& assignment) {
  return substitute(p, assignment, p.ring());
}

/// Moves a polynomial into a ring containing all of its variables by name.
inline Polynomial embed(const Polynomial& p, const RingPtr& target) { return substitute(p, {}, target); }

}  // namespace detsing

#endif  // DETSING_POLYNOMIAL_HPP
