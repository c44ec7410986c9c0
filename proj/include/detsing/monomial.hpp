#ifndef DETSING_MONOMIAL_HPP
#define DETSING_MONOMIAL_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace detsing {

/// Hard cap on ring size. The pipelines never need more than the ambient
/// variables plus a deformation parameter and a saturation variable.
inline constexpr std::size_t kMaxVars = 12;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVars) throw std::invalid_argument("Monomial: too many variables");
  }
  Monomial(std::initializer_list<unsigned> exps) : Monomial(exps.size()) {
    std::size_t i = 0;
    for (unsigned e : exps) set(i++, e);
  }
  static Monomial from_vector(const std::vector<unsigned>& exps) {
    Monomial m(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
    return m;
  }
  static Monomial variable(std::size_t nvars, std::size_t var, unsigned power = 1) {
    Monomial m(nvars);
    m.set(var, power);
    return m;
  }

  std::size_t size() const { return nvars_; }
  unsigned operator[](std::size_t i) const { return exp_[i]; }
  unsigned degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, unsigned e) {
    deg_ = deg_ - exp_[i] + e;
    exp_[i] = static_cast<std::uint16_t>(e);
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    check_same(a, b);
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exp_[i] = static_cast<std::uint16_t>(a.exp_[i] + b.exp_[i]);
    r.deg_ = a.deg_ + b.deg_;
    return r;
  }

  /// True iff this monomial divides `other`.
  bool divides(const Monomial& other) const {
    if (deg_ > other.deg_) return false;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  /// Exact quotient; caller guarantees `d.divides(*this)`.
  Monomial operator/(const Monomial& d) const {
    Monomial r(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) r.exp_[i] = static_cast<std::uint16_t>(exp_[i] - d.exp_[i]);
    r.deg_ = deg_ - d.deg_;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    check_same(a, b);
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.set(i, std::max(a.exp_[i], b.exp_[i]));
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.exp_[i] != 0 && b.exp_[i] != 0) return false;
    return true;
  }

  /// Variables with a nonzero exponent.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exp_[i] != 0) s.push_back(i);
    return s;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.nvars_ == b.nvars_ && a.deg_ == b.deg_ && a.exp_ == b.exp_;
  }

  std::size_t hash() const {
    std::size_t h = nvars_;
    for (std::size_t i = 0; i < nvars_; ++i) h = h * 1000003u + exp_[i];
    return h;
  }

  static void check_same(const Monomial& a, const Monomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("Monomial: mismatched ring dimension");
  }

 private:
  std::array<std::uint16_t, kMaxVars> exp_{};
  std::uint8_t nvars_ = 0;
  unsigned deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class Cmp { LT = -1, EQ = 0, GT = 1 };

/// Monomial orderings. Global orderings are well-orderings with 1 smallest;
/// the local ordering puts 1 above every variable.
class Ordering {
 public:
  enum class Kind { DegRevLex, BlockElimination, NegDegRevLex };

  static Ordering degrevlex() { return Ordering(Kind::DegRevLex, {}, 0); }
  static Ordering negdegrevlex() { return Ordering(Kind::NegDegRevLex, {}, 0); }
  /// Variables in `eliminate` form the first (larger) block; each block is
  /// ordered by degrevlex in the listed order.
  static Ordering elimination(std::size_t nvars, const std::vector<std::size_t>& eliminate) {
    std::vector<std::size_t> perm(eliminate);
    for (std::size_t v = 0; v < nvars; ++v)
      if (std::find(eliminate.begin(), eliminate.end(), v) == eliminate.end()) perm.push_back(v);
    return Ordering(Kind::BlockElimination, std::move(perm), eliminate.size());
  }

  Kind kind() const { return kind_; }
  bool is_global() const { return kind_ != Kind::NegDegRevLex; }
  bool is_local() const { return kind_ == Kind::NegDegRevLex; }
  const std::vector<std::size_t>& permutation() const { return perm_; }
  std::size_t block_size() const { return block_; }

  Cmp compare(const Monomial& a, const Monomial& b) const {
    Monomial::check_same(a, b);
    switch (kind_) {
      case Kind::DegRevLex:
        if (a.degree() != b.degree()) return a.degree() > b.degree() ? Cmp::GT : Cmp::LT;
        return revlex_tail(a, b, 0, a.size(), nullptr);
      case Kind::NegDegRevLex:
        if (a.degree() != b.degree()) return a.degree() < b.degree() ? Cmp::GT : Cmp::LT;
        return revlex_tail(a, b, 0, a.size(), nullptr);
      case Kind::BlockElimination: {
        check_perm(a.size());
        Cmp c = block_cmp(a, b, 0, block_);
        if (c != Cmp::EQ) return c;
        return block_cmp(a, b, block_, perm_.size());
      }
    }
    return Cmp::EQ;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) == Cmp::LT; }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) == Cmp::GT; }

  friend bool operator==(const Ordering& a, const Ordering& b) {
    return a.kind_ == b.kind_ && a.perm_ == b.perm_ && a.block_ == b.block_;
  }

 private:
  Ordering(Kind k, std::vector<std::size_t> perm, std::size_t block)
      : kind_(k), perm_(std::move(perm)), block_(block) {}

  void check_perm(std::size_t n) const {
    if (perm_.size() != n) throw std::invalid_argument("Ordering: elimination block built for another ring");
  }

  // Reverse lexicographic tie-break: the monomial with the smaller exponent
  // in the last differing variable is larger.
  static Cmp revlex_tail(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi,
                         const std::vector<std::size_t>* perm) {
    for (std::size_t k = hi; k-- > lo;) {
      std::size_t v = perm ? (*perm)[k] : k;
      if (a[v] != b[v]) return a[v] < b[v] ? Cmp::GT : Cmp::LT;
    }
    return Cmp::EQ;
  }

  Cmp block_cmp(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) const {
    unsigned da = 0, db = 0;
    for (std::size_t k = lo; k < hi; ++k) {
      da += a[perm_[k]];
      db += b[perm_[k]];
    }
    if (da != db) return da > db ? Cmp::GT : Cmp::LT;
    return revlex_tail(a, b, lo, hi, &perm_);
  }

  Kind kind_;
  std::vector<std::size_t> perm_;
  std::size_t block_;
};

inline Cmp mono_compare(const Monomial& a, const Monomial& b, const Ordering& ord) {
  return ord.compare(a, b);
}

}  // namespace detsing

#endif  // DETSING_MONOMIAL_HPP
