#include "ddmls/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddmls/lsq.hpp"
#include "ddmls/parallel.hpp"
#include "ddmls/polybasis.hpp"

namespace ddmls {

namespace {

constexpr double kPlaneRankTol = 1e-12;

}  // namespace

void DdWeightParams::validate() const {
  if (!(eps_reg > 0.0) || !std::isfinite(eps_reg)) {
    throw Error(ErrorCode::InvalidArgument, "eps_reg must be positive, got " + std::to_string(eps_reg));
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "exponent t must be positive, got " + std::to_string(t));
  }
}

SmoothnessField::SmoothnessField(std::vector<double> indicators, std::vector<std::size_t> neighbor_counts,
                                 double delta)
    : indicators_(std::move(indicators)), neighbor_counts_(std::move(neighbor_counts)), delta_(delta) {
  if (indicators_.size() != neighbor_counts_.size()) {
    throw Error(ErrorCode::InvalidArgument, "indicator and neighbour-count lengths differ");
  }
  if (!(delta_ > 0.0)) throw Error(ErrorCode::NonPositiveDelta, "delta " + std::to_string(delta_));
  for (std::size_t i = 0; i < indicators_.size(); ++i) {
    if (!(indicators_[i] >= 0.0) || !std::isfinite(indicators_[i])) {
      throw Error(ErrorCode::InvalidArgument, "indicator " + std::to_string(i) + " is not a finite non-negative value");
    }
    if (neighbor_counts_[i] < 1) {
      throw Error(ErrorCode::InvalidArgument, "node " + std::to_string(i) + " has an empty ball");
    }
  }
}

double SmoothnessField::max_indicator() const noexcept {
  return indicators_.empty() ? 0.0 : *std::max_element(indicators_.begin(), indicators_.end());
}

double default_delta(std::size_t node_count) {
  const auto half_side = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(node_count)) / 2.0));
  if (node_count < 4 || half_side == 0) {
    throw Error(ErrorCode::TooFewNodes, "need at least 4 nodes, got " + std::to_string(node_count));
  }
  return std::sqrt(2.0) / static_cast<double>(half_side);
}

SmoothnessField compute_indicators(const NodeSet& nodes, double delta, unsigned threads) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::NonPositiveDelta, "delta " + std::to_string(delta));
  }
  const SpatialIndex index(nodes, delta);
  const BasisSpec plane(nodes.dim(), 1);
  const std::size_t m = plane.size();

  std::vector<double> indicators(nodes.size());
  std::vector<std::size_t> counts(nodes.size());

  parallel_for(nodes.size(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> design;
    std::vector<double> rhs;
    std::vector<double> unit;
    std::vector<double> coeffs;
    std::vector<double> row(m);
    for (std::size_t i = begin; i < end; ++i) {
      const Point& center = nodes.point(i);
      const std::vector<std::size_t> ball = index.ball_query(center, delta);
      const std::size_t count = ball.size();
      counts[i] = count;

      design.resize(count * m);
      rhs.resize(count);
      unit.assign(count, 1.0);
      for (std::size_t k = 0; k < count; ++k) {
        eval_basis_into(plane, nodes.point(ball[k]), center, std::span<double>(design).subspan(k * m, m));
        rhs[k] = nodes.value(ball[k]);
      }

      double residual = 0.0;
      if (count >= m && solve_weighted_lsq(design, m, rhs, unit, kPlaneRankTol, coeffs) == SolveStatus::Ok) {
        for (std::size_t k = 0; k < count; ++k) {
          double fit = 0.0;
          for (std::size_t j = 0; j < m; ++j) fit += coeffs[j] * design[k * m + j];
          residual += std::abs(rhs[k] - fit);
        }
      } else {
        double mean = 0.0;
        for (double v : rhs) mean += v;
        mean /= static_cast<double>(count);
        for (double v : rhs) residual += std::abs(v - mean);
      }
      indicators[i] = residual / static_cast<double>(count);
    }
  });

  return SmoothnessField(std::move(indicators), std::move(counts), delta);
}

double dd_weight(double base, double indicator, const DdWeightParams& params) {
  return base / std::pow(params.eps_reg + indicator, params.t);
}

}  // namespace ddmls
