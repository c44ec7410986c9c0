#ifndef DETSING_UNIVARIATE_HPP
#define DETSING_UNIVARIATE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "detsing/polynomial.hpp"

namespace detsing {

/// Dense univariate polynomial over Q, coefficients from degree 0 upward.
using Dense = std::vector<Rational>;

namespace detail {

inline void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Dense dense_rem(Dense a, const Dense& b) {
  trim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Dense dense_monic(Dense a) {
  trim(a);
  if (a.empty()) return a;
  Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

inline Dense dense_derivative(const Dense& a) {
  Dense d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

}  // namespace detail

inline Dense dense_gcd(Dense a, Dense b) {
  detail::trim(a);
  detail::trim(b);
  while (!b.empty()) {
    Dense r = detail::dense_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return detail::dense_monic(a);
}

inline bool dense_squarefree(const Dense& m) {
  Dense d = detail::dense_derivative(m);
  if (d.empty()) return true;  // constants are squarefree
  return dense_gcd(m, d).size() == 1;
}

/// The single variable a polynomial lives in (nullopt for constants);
/// throws for multivariate input.
inline std::optional<std::size_t> univariate_variable(const Polynomial& p) {
  auto s = p.support();
  if (s.size() > 1) throw std::invalid_argument("expected a univariate polynomial");
  if (s.empty()) return std::nullopt;
  return s[0];
}

inline Dense to_dense(const Polynomial& p) {
  auto v = univariate_variable(p);
  Dense d;
  for (const auto& t : p.terms()) {
    unsigned e = v ? t.mono[*v] : 0;
    if (d.size() <= e) d.resize(e + 1);
    d[e] += t.coeff;
  }
  detail::trim(d);
  return d;
}

inline Polynomial from_dense(const Dense& d, const RingPtr& ring, std::size_t var) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) terms.push_back({Monomial::variable(ring->size(), var, static_cast<unsigned>(i)), d[i]});
  return Polynomial(ring, std::move(terms));
}

/// Monic gcd of two univariate polynomials in the same variable.
inline Polynomial univariate_gcd(const Polynomial& a, const Polynomial& b) {
  auto va = univariate_variable(a);
  auto vb = univariate_variable(b);
  if (va && vb && *va != *vb) throw std::invalid_argument("univariate_gcd: different variables");
  std::size_t var = va ? *va : vb ? *vb : 0;
  RingPtr ring = a.ring() ? a.ring() : b.ring();
  return from_dense(dense_gcd(to_dense(a), to_dense(b)), ring, var);
}

/// True iff gcd(m, m') is constant.
inline bool squarefree(const Polynomial& m) { return dense_squarefree(to_dense(m)); }

}  // namespace detsing

#endif  // DETSING_UNIVARIATE_HPP
