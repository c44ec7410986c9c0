#ifndef DETSING_IDEAL_HPP
#define DETSING_IDEAL_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "detsing/polynomial.hpp"

namespace detsing {

/// Generators of an ideal: nonzero, deduplicated up to scalar multiples,
/// in first-occurrence order.
class IdealGens {
 public:
  explicit IdealGens(RingPtr ring) : ring_(std::move(ring)) {}
  IdealGens(RingPtr ring, const std::vector<Polynomial>& gens) : ring_(std::move(ring)) {
    for (const auto& g : gens) add(g);
  }

  /// Adds a generator; zeros and scalar duplicates are dropped.
  void add(const Polynomial& g) {
    if (g.is_zero()) return;
    if (!same_ring(g.ring(), ring_)) throw std::invalid_argument("IdealGens: generator from another ring");
    Polynomial p = g.primitive();
    for (const auto& h : gens_)
      if (h == p) return;
    gens_.push_back(std::move(p));
  }
  void add(const IdealGens& other) {
    for (const auto& g : other.gens_) add(g);
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const Polynomial& operator[](std::size_t i) const { return gens_[i]; }
  auto begin() const { return gens_.begin(); }
  auto end() const { return gens_.end(); }

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
};

inline IdealGens operator+(IdealGens a, const IdealGens& b) {
  a.add(b);
  return a;
}

}  // namespace detsing

#endif  // DETSING_IDEAL_HPP
