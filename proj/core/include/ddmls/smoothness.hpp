#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ddmls/geometry.hpp"

namespace ddmls {

// Regularisation and exponent of the data-dependent weight
// w / (eps_reg + I)^t.
struct DdWeightParams {
  double eps_reg = 1e-6;
  double t = 4.0;

  // Throws InvalidArgument unless both are positive and finite.
  void validate() const;
};

// Per-node smoothness indicators over balls of radius delta.
class SmoothnessField {
 public:
  SmoothnessField(std::vector<double> indicators, std::vector<std::size_t> neighbor_counts, double delta);

  std::size_t size() const noexcept { return indicators_.size(); }
  double delta() const noexcept { return delta_; }
  std::span<const double> indicators() const noexcept { return indicators_; }
  std::span<const std::size_t> neighbor_counts() const noexcept { return neighbor_counts_; }
  double indicator(std::size_t i) const { return indicators_[i]; }
  double max_indicator() const noexcept;

 private:
  std::vector<double> indicators_;
  std::vector<std::size_t> neighbor_counts_;
  double delta_;
};

// sqrt(2) / floor(sqrt(N) / 2). Throws TooFewNodes for N < 4.
double default_delta(std::size_t node_count);

// For every node, fits a plane by unweighted least squares to the data in
// its delta-ball and records the mean absolute residual. Balls with too few
// nodes for a plane, or whose nodes are collinear, fall back to the mean.
// `threads` == 0 picks the hardware concurrency.
SmoothnessField compute_indicators(const NodeSet& nodes, double delta, unsigned threads = 0);

// base / (eps_reg + indicator)^t.
double dd_weight(double base, double indicator, const DdWeightParams& params);

}  // namespace ddmls
