#ifndef DETSING_MATGERM_HPP
#define DETSING_MATGERM_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "detsing/ideal.hpp"
#include "detsing/parse.hpp"
#include "detsing/polynomial.hpp"

namespace detsing {

/// Dense row-major grid of polynomials over one ring.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Polynomial(ring_)) {}
  PolyMatrix(RingPtr ring, const std::vector<std::vector<Polynomial>>& grid) : ring_(std::move(ring)) {
    rows_ = grid.size();
    cols_ = rows_ ? grid[0].size() : 0;
    for (const auto& row : grid) {
      if (row.size() != cols_) throw std::invalid_argument("PolyMatrix: ragged entry grid");
      for (const auto& p : row) {
        if (!p.is_zero() && !same_ring(p.ring(), ring_)) throw std::invalid_argument("PolyMatrix: entry from another ring");
        data_.push_back(p.is_zero() ? Polynomial(ring_) : p);
      }
    }
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Polynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  PolyMatrix transpose() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  PolyMatrix map(const std::function<Polynomial(const Polynomial&)>& f, const RingPtr& target) const {
    PolyMatrix r(target, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = f(data_[k]);
    return r;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<std::vector<std::string>> to_strings() const {
    std::vector<std::vector<std::string>> g(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) g[i].push_back((*this)(i, j).to_string());
    return g;
  }

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial> data_;
};

/// Determinant of the submatrix on the given rows and columns, by cofactor
/// expansion along the first selected row.
inline Polynomial determinant(const PolyMatrix& A, const std::vector<std::size_t>& rows,
                              const std::vector<std::size_t>& cols) {
  const std::size_t n = rows.size();
  if (n != cols.size()) throw std::invalid_argument("determinant: non-square selection");
  if (n == 0) return Polynomial(A.ring(), Rational(1));
  if (n == 1) return A(rows[0], cols[0]);
  if (n == 2) return A(rows[0], cols[0]) * A(rows[1], cols[1]) - A(rows[0], cols[1]) * A(rows[1], cols[0]);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  Polynomial det(A.ring());
  for (std::size_t c = 0; c < n; ++c) {
    const Polynomial& a = A(rows[0], cols[c]);
    if (a.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t k = 0; k < n; ++k)
      if (k != c) sub_cols.push_back(cols[k]);
    Polynomial term = a * determinant(A, sub_rows, sub_cols);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

/// k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// All k x k minors, row subsets outermost, both in lexicographic order.
/// Zeros are kept so positions stay meaningful.
inline std::vector<Polynomial> all_minors(const PolyMatrix& A, std::size_t k) {
  if (k == 0 || k > std::min(A.rows(), A.cols())) throw std::invalid_argument("minors: size out of range");
  std::vector<Polynomial> out;
  auto col_sets = subsets(A.cols(), k);
  for (const auto& r : subsets(A.rows(), k))
    for (const auto& c : col_sets) out.push_back(determinant(A, r, c));
  return out;
}

/// k x k minors as an ideal (deduplicated, zeros dropped).
inline IdealGens kxk_minors(const PolyMatrix& A, std::size_t k) { return IdealGens(A.ring(), all_minors(A, k)); }

/// Matrix germ M whose t x t minors define X = M^{-1}(rank < t).
class PresentationMatrix {
 public:
  PresentationMatrix(PolyMatrix entries, std::optional<std::size_t> minor_size = std::nullopt, bool deformed = false)
      : m_(std::move(entries)), deformed_(deformed) {
    t_ = minor_size.value_or(std::min(m_.rows(), m_.cols()));
    if (t_ == 0 || t_ > std::min(m_.rows(), m_.cols()))
      throw std::invalid_argument("PresentationMatrix: minor size exceeds matrix dimensions");
  }

  static PresentationMatrix parse(const RingPtr& ring, const std::vector<std::vector<std::string>>& grid,
                                  const ParamMap& params = {}) {
    std::vector<std::vector<Polynomial>> g;
    for (const auto& row : grid) {
      g.emplace_back();
      for (const auto& s : row) g.back().push_back(parse_polynomial(s, ring, params));
    }
    return PresentationMatrix(PolyMatrix(ring, g));
  }

  const PolyMatrix& matrix() const { return m_; }
  const RingPtr& ring() const { return m_.ring(); }
  std::size_t rows() const { return m_.rows(); }
  std::size_t cols() const { return m_.cols(); }
  std::size_t minor_size() const { return t_; }
  std::size_t ambient_dimension() const { return ring()->size(); }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// Deformed members waive the M(0) = 0 germ condition.
  bool deformed() const { return deformed_; }
  bool vanishes_at_origin() const {
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j)
        if (m_(i, j).constant_term() != 0) return false;
    return true;
  }
  /// (n+1) x n or n x (n+1) with maximal minors: the codimension-2 case.
  bool codim2_shape() const {
    std::size_t a = rows(), b = cols();
    return (a == b + 1 || b == a + 1) && t_ == std::min(a, b);
  }

  friend bool operator==(const PresentationMatrix& a, const PresentationMatrix& b) {
    return a.t_ == b.t_ && a.m_ == b.m_;
  }

 private:
  PolyMatrix m_;
  std::size_t t_;
  bool deformed_;
};

/// Generators of the determinantal ideal: all t x t minors.
inline IdealGens maximal_minors(const PresentationMatrix& M) { return kxk_minors(M.matrix(), M.minor_size()); }

/// Maximal minors of a codimension-2 matrix indexed by the omitted
/// row (or column, for n x (n+1) input), unsigned.
inline std::vector<Polynomial> omitted_index_minors(const PresentationMatrix& M) {
  if (!M.codim2_shape()) throw std::invalid_argument("expected an (n+1) x n presentation matrix");
  PolyMatrix A = M.rows() > M.cols() ? M.matrix() : M.matrix().transpose();
  const std::size_t n = A.cols();
  std::vector<std::size_t> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = j;
  std::vector<Polynomial> out;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) rows.push_back(i);
    out.push_back(determinant(A, rows, cols));
  }
  return out;
}

/// Hilbert-Burch: the signed minor vector annihilates M, i.e. for every
/// column j of the (n+1) x n matrix, sum_i (-1)^i f_i M[i][j] = 0, where
/// f_i is the minor omitting row i.
inline bool hilbert_burch_check(const PresentationMatrix& M, const std::vector<Polynomial>& f) {
  if (!M.codim2_shape()) throw std::invalid_argument("hilbert_burch_check: shape mismatch");
  PolyMatrix A = M.rows() > M.cols() ? M.matrix() : M.matrix().transpose();
  if (f.size() != A.rows()) throw std::invalid_argument("hilbert_burch_check: need one minor per row");
  for (std::size_t j = 0; j < A.cols(); ++j) {
    Polynomial s(M.ring());
    for (std::size_t i = 0; i < A.rows(); ++i) {
      Polynomial term = f[i] * A(i, j);
      s = (i % 2 == 0) ? s + term : s - term;
    }
    if (!s.is_zero()) return false;
  }
  return true;
}

inline bool hilbert_burch_check(const PresentationMatrix& M) {
  return hilbert_burch_check(M, omitted_index_minors(M));
}

/// Row i is the gradient of generator i.
inline PolyMatrix jacobian(const IdealGens& f) {
  const RingPtr& ring = f.ring();
  PolyMatrix J(ring, f.size(), ring->size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t v = 0; v < ring->size(); ++v) J(i, v) = f[i].differentiate(v);
  return J;
}

/// A linear form p = sum c_i x_i and its differential omega = dp.
class ProjectionData {
 public:
  ProjectionData(RingPtr ring, std::vector<Rational> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
    if (c_.size() != ring_->size()) throw std::invalid_argument("ProjectionData: coefficient count mismatch");
    bool nonzero = false;
    for (const auto& c : c_) nonzero = nonzero || c != 0;
    if (!nonzero) throw std::invalid_argument("ProjectionData: zero linear form");
  }

  /// From a homogeneous linear polynomial such as "y - z".
  static ProjectionData from_polynomial(const Polynomial& p) {
    std::vector<Rational> c(p.nvars());
    for (const auto& t : p.terms()) {
      if (t.mono.degree() != 1) throw std::invalid_argument("projection must be a homogeneous linear form");
      c[t.mono.support()[0]] = t.coeff;
    }
    return ProjectionData(p.ring(), std::move(c));
  }
  static ProjectionData coordinate(const RingPtr& ring, std::size_t var) {
    std::vector<Rational> c(ring->size());
    c.at(var) = 1;
    return ProjectionData(ring, std::move(c));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Polynomial form() const {
    Polynomial p(ring_);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) p += c_[i] * Polynomial::variable(ring_, i);
    return p;
  }
  std::string to_string() const { return form().to_string(); }

 private:
  RingPtr ring_;
  std::vector<Rational> c_;
};

/// Appends the coefficient row of omega to the Jacobian.
inline PolyMatrix bordered_matrix(const PolyMatrix& J, const ProjectionData& omega) {
  if (omega.coefficients().size() != J.cols()) throw std::invalid_argument("bordered_matrix: length mismatch");
  PolyMatrix B(J.ring(), J.rows() + 1, J.cols());
  for (std::size_t i = 0; i < J.rows(); ++i)
    for (std::size_t j = 0; j < J.cols(); ++j) B(i, j) = J(i, j);
  for (std::size_t j = 0; j < J.cols(); ++j) B(J.rows(), j) = Polynomial(J.ring(), omega.coefficients()[j]);
  return B;
}

/// Result of cutting with p = 0: the section matrix and how the eliminated
/// variable was expressed.
struct Section {
  PresentationMatrix matrix;
  std::size_t eliminated;      // index in the original ring
  Polynomial substitution;     // the eliminated variable, in the new ring
};

/// Restricts M to the hyperplane p = 0 by solving for one variable (by
/// default the highest-index variable with nonzero coefficient) and
/// substituting; the result lives over the remaining r-1 variables.
inline Section hyperplane_section_detail(const PresentationMatrix& M, const ProjectionData& p,
                                         std::optional<std::size_t> solve_for = std::nullopt) {
  const auto& c = p.coefficients();
  std::size_t v;
  if (solve_for) {
    v = *solve_for;
    if (v >= c.size() || c[v] == 0) throw std::invalid_argument("hyperplane_section: chosen variable not in the form");
  } else {
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) last = i;
    if (!last) throw std::invalid_argument("hyperplane_section: zero form");
    v = *last;
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (i != v) names.push_back(M.ring()->name(i));
  RingPtr target = make_ring(names);
  Polynomial image(target);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (i != v && c[i] != 0)
      image -= Rational(c[i] / c[v]) * Polynomial::variable(target, M.ring()->name(i));
  std::map<std::size_t, Polynomial> assign{{v, image}};
  PolyMatrix S = M.matrix().map([&](const Polynomial& e) { return substitute(e, assign, target); }, target);
  return Section{PresentationMatrix(std::move(S), M.minor_size(), M.deformed()), v, image};
}

inline PresentationMatrix hyperplane_section(const PresentationMatrix& M, const ProjectionData& p,
                                             std::optional<std::size_t> solve_for = std::nullopt) {
  return hyperplane_section_detail(M, p, solve_for).matrix;
}

/// Positive integer weights making every entry weighted homogeneous, with
/// deg M_ij = row[i] + col[j] (row[0] = 0 fixes the shift).
struct Grading {
  std::vector<long> weights;
  std::vector<long> row, col;
  long entry_degree(std::size_t i, std::size_t j) const { return row[i] + col[j]; }
  long degree(const Monomial& m) const {
    long d = 0;
    for (std::size_t v = 0; v < weights.size(); ++v) d += weights[v] * static_cast<long>(m[v]);
    return d;
  }
  bool homogeneous(const Polynomial& p) const {
    if (p.is_zero()) return true;
    long d = degree(p.terms().front().mono);
    for (const auto& t : p.terms())
      if (degree(t.mono) != d) return false;
    return true;
  }
};

/// Searches the space of gradings of M for one with all variable weights
/// positive, preferring the smallest largest weight.
inline std::optional<Grading> detect_grading(const PresentationMatrix& M) {
  const std::size_t r = M.ambient_dimension(), n = M.rows(), p = M.cols();
  const std::size_t N = r + n + p;
  std::vector<std::vector<Rational>> eqs;
  {
    std::vector<Rational> gauge(N);
    gauge[r] = 1;
    eqs.push_back(gauge);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (const auto& t : M(i, j).terms()) {
        std::vector<Rational> e(N);
        for (std::size_t v = 0; v < r; ++v) e[v] = t.mono[v];
        e[r + i] -= 1;
        e[r + n + j] -= 1;
        eqs.push_back(std::move(e));
      }
  // Reduced row echelon form, then a nullspace basis.
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < N && row < eqs.size(); ++c) {
    std::size_t piv = row;
    while (piv < eqs.size() && eqs[piv][c] == 0) ++piv;
    if (piv == eqs.size()) continue;
    std::swap(eqs[row], eqs[piv]);
    Rational inv = 1 / eqs[row][c];
    for (auto& x : eqs[row]) x *= inv;
    for (std::size_t k = 0; k < eqs.size(); ++k) {
      if (k == row || eqs[k][c] == 0) continue;
      Rational f = eqs[k][c];
      for (std::size_t m = 0; m < N; ++m) eqs[k][m] -= f * eqs[row][m];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < N; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<Rational> v(N);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -eqs[k][f];
    basis.push_back(std::move(v));
  }
  if (basis.empty() || basis.size() > 4) return std::nullopt;
  std::optional<Grading> best;
  long best_max = 0;
  std::vector<int> coef(basis.size(), -2);
  for (;;) {
    std::vector<Rational> v(N);
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (coef[b] != 0)
        for (std::size_t m = 0; m < N; ++m) v[m] += coef[b] * basis[b][m];
    bool positive = true;
    for (std::size_t m = 0; m < r; ++m) positive = positive && v[m] > 0;
    if (positive) {
      Integer den = 1, g = 0;
      for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
      std::vector<Integer> iv;
      for (const auto& x : v) {
        Integer y = x.get_num() * (den / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_mpz_t());
        iv.push_back(y);
      }
      Grading gr;
      for (std::size_t m = 0; m < N; ++m) {
        long val = Integer(iv[m] / g).get_si();
        if (m < r) gr.weights.push_back(val);
        else if (m < r + n) gr.row.push_back(val);
        else gr.col.push_back(val);
      }
      long mx = *std::max_element(gr.weights.begin(), gr.weights.end());
      if (!best || mx < best_max) {
        best = gr;
        best_max = mx;
      }
    }
    std::size_t b = 0;
    while (b < coef.size() && coef[b] == 2) coef[b++] = -2;
    if (b == coef.size()) break;
    ++coef[b];
  }
  return best;
}

/// Deterministic generator for every random choice in the toolkit.
/// mt19937_64 output is fixed by the standard; draws avoid the
/// implementation-defined std distributions so results are portable.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed ^ 0x9e3779b97f4a7c15ULL) {}
  /// Uniform integer in [-bound, bound] \ {0}.
  long nonzero(long bound) {
    std::uint64_t r = eng_() % static_cast<std::uint64_t>(2 * bound);
    long v = static_cast<long>(r) - bound;  // [-bound, bound-1]
    return v >= 0 ? v + 1 : v;
  }
  /// Uniform integer in [-bound, bound].
  long uniform(long bound) {
    return static_cast<long>(eng_() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
  }
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

/// Base matrix plus a perturbation whose entries may use named parameters
/// (e.g. lambda); the parameter assignment selects one member.
class DeformationTemplate {
 public:
  DeformationTemplate(PresentationMatrix base, std::vector<std::string> parameters,
                      std::vector<std::vector<std::string>> perturbation, std::map<std::string, Rational> assignment,
                      const ParamMap& exponents = {})
      : base_(std::move(base)), parameters_(std::move(parameters)), assignment_(std::move(assignment)) {
    std::vector<std::string> names = base_.ring()->names();
    for (const auto& p : parameters_) names.push_back(p);
    ext_ = make_ring(names);
    if (perturbation.size() != base_.rows()) throw std::invalid_argument("deformation: grid shape mismatch");
    std::vector<std::vector<Polynomial>> g;
    for (const auto& row : perturbation) {
      if (row.size() != base_.cols()) throw std::invalid_argument("deformation: grid shape mismatch");
      g.emplace_back();
      for (const auto& s : row) g.back().push_back(parse_polynomial(s, ext_, exponents));
    }
    perturbation_ = PolyMatrix(ext_, g);
  }

  const PresentationMatrix& base() const { return base_; }
  const std::vector<std::string>& parameters() const { return parameters_; }
  const std::map<std::string, Rational>& assignment() const { return assignment_; }
  const PolyMatrix& perturbation() const { return perturbation_; }

  DeformationTemplate with_assignment(std::map<std::string, Rational> a) const {
    DeformationTemplate t = *this;
    t.assignment_ = std::move(a);
    return t;
  }

  /// The member selected by the assignment. Every parameter must be assigned.
  PresentationMatrix instantiate() const {
    std::map<std::size_t, Polynomial> assign;
    for (std::size_t k = 0; k < parameters_.size(); ++k) {
      auto it = assignment_.find(parameters_[k]);
      if (it == assignment_.end())
        throw std::invalid_argument("deformation: parameter '" + parameters_[k] + "' has no assignment");
      assign.emplace(base_.ring()->size() + k, Polynomial(base_.ring(), it->second));
    }
    PolyMatrix out(base_.ring(), base_.rows(), base_.cols());
    for (std::size_t i = 0; i < base_.rows(); ++i)
      for (std::size_t j = 0; j < base_.cols(); ++j)
        out(i, j) = base_(i, j) + substitute(perturbation_(i, j), assign, base_.ring());
    return PresentationMatrix(std::move(out), base_.minor_size(), true);
  }

 private:
  PresentationMatrix base_;
  std::vector<std::string> parameters_;
  std::map<std::string, Rational> assignment_;
  RingPtr ext_;
  PolyMatrix perturbation_;
};

struct PerturbOptions {
  long bound = 5;        // constants drawn from [-bound, bound] \ {0}
  Rational lambda = 1;   // single scaling parameter
};

/// Adds lambda * c_ij to every entry, c_ij drawn from the seeded generator.
inline PresentationMatrix perturb(const PresentationMatrix& M, std::uint64_t seed, const PerturbOptions& opt = {}) {
  SeededRng rng(seed);
  PolyMatrix out(M.ring(), M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      out(i, j) = M(i, j) + Polynomial(M.ring(), Rational(opt.lambda * rng.nonzero(opt.bound)));
  return PresentationMatrix(std::move(out), M.minor_size(), true);
}

inline PresentationMatrix perturb(const DeformationTemplate& tmpl) { return tmpl.instantiate(); }

}  // namespace detsing

#endif  // DETSING_MATGERM_HPP
