// distribution.hpp: finite probability vectors

#pragma once

#include "nphase/types.hpp"

#include <span>
#include <vector>

namespace nphase {

// Probability vector: non-negative entries summing to one within a tolerance.
class DiscreteDistribution {
 public:
  explicit DiscreteDistribution(std::vector<double> probs, double sum_tolerance = 1e-9);

  // Clamps entries in [−clamp, 0) to zero and rescales to unit sum.
  // Throws if an entry is below −clamp or the total drifts by more than
  // max_drift from one.
  static DiscreteDistribution normalized(std::vector<double> raw, double clamp, double max_drift);

  static DiscreteDistribution uniform(std::size_t n);
  static DiscreteDistribution deterministic(std::size_t n, std::size_t index);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  double total() const noexcept;

 private:
  std::vector<double> probs_;
};

}  // namespace nphase
