#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ddmls/error.hpp"

namespace ddmls {

// A location in R^1 or R^2. Unused trailing coordinates are kept at zero.
class Point {
 public:
  Point() = default;
  explicit Point(double x) : coords_{x, 0.0}, dim_(1) {}
  Point(double x, double y) : coords_{x, y}, dim_(2) {}

  int dim() const noexcept { return dim_; }
  double operator[](int axis) const noexcept { return coords_[static_cast<std::size_t>(axis)]; }
  double& operator[](int axis) noexcept { return coords_[static_cast<std::size_t>(axis)]; }
  double x() const noexcept { return coords_[0]; }
  double y() const noexcept { return coords_[1]; }

  bool is_finite() const noexcept { return std::isfinite(coords_[0]) && std::isfinite(coords_[1]); }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::array<double, 2> coords_{0.0, 0.0};
  int dim_ = 0;
};

inline double squared_distance(const Point& a, const Point& b) noexcept {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

// Euclidean distance. Both points are assumed to share a dimension; trailing
// coordinates of 1-D points are zero, so the formula is valid for either case.
inline double distance(const Point& a, const Point& b) noexcept {
  return std::sqrt(squared_distance(a, b));
}

// Throws DimensionMismatch unless both points have the same dimension.
void require_same_dim(const Point& a, const Point& b);

// Axis-aligned box, closed on both ends.
struct Box {
  Point lower;
  Point upper;

  int dim() const noexcept { return lower.dim(); }
  bool contains(const Point& p) const noexcept;
  double diameter() const noexcept { return distance(lower, upper); }

  static Box unit(int dim);
  static Box bounding(std::span<const Point> points);
};

// Immutable scattered data: distinct nodes, one value per node, and the
// domain box they live in.
class NodeSet {
 public:
  // Validates every invariant; throws EmptyNodeSet, DimensionMismatch,
  // UnsupportedDimension, NonFiniteInput, PointOutsideDomain or DuplicatePoint.
  NodeSet(std::vector<Point> points, std::vector<double> values, Box domain);

  // Domain taken as the bounding box of the points.
  static NodeSet with_bounding_box(std::vector<Point> points, std::vector<double> values);

  std::size_t size() const noexcept { return points_.size(); }
  int dim() const noexcept { return domain_.dim(); }
  const Box& domain() const noexcept { return domain_; }
  std::span<const Point> points() const noexcept { return points_; }
  std::span<const double> values() const noexcept { return values_; }
  const Point& point(std::size_t i) const { return points_[i]; }
  double value(std::size_t i) const { return values_[i]; }

  // Same geometry, new values. Throws InvalidArgument on length mismatch.
  NodeSet with_values(std::vector<double> values) const;

 private:
  NodeSet() = default;

  std::vector<Point> points_;
  std::vector<double> values_;
  Box domain_;
};

// Uniform-grid bucketing of a node set for fixed-radius queries.
//
// Each node lives in the bucket of the cell that contains it; cells are
// addressed relative to the lower corner of the node set's domain. Only
// occupied cells are stored.
class SpatialIndex {
 public:
  using CellCoord = std::array<std::int64_t, 2>;

  // Throws NonPositiveCellSize unless cell_size > 0 (and finite).
  SpatialIndex(const NodeSet& nodes, double cell_size);

  double cell_size() const noexcept { return cell_size_; }
  std::size_t node_count() const noexcept { return points_.size(); }
  std::size_t bucket_count() const noexcept { return bucket_cells_.size(); }

  CellCoord cell_of(const Point& p) const noexcept;

  // Node indices stored in the bucket for `cell`; empty when unoccupied.
  std::span<const std::size_t> bucket(const CellCoord& cell) const;

  // All i with |x_i - center| <= radius, ascending. Throws NonPositiveRadius.
  std::vector<std::size_t> ball_query(const Point& center, double radius) const;

  // Index and distance of a closest node.
  std::pair<std::size_t, double> nearest(const Point& center) const;

 private:
  template <typename Visit>
  void visit_ball(const Point& center, double radius, Visit&& visit) const;

  struct CellHash {
    std::size_t operator()(const CellCoord& c) const noexcept {
      return static_cast<std::size_t>(static_cast<std::uint64_t>(c[0]) * 0x9E3779B97F4A7C15ULL ^
                                      static_cast<std::uint64_t>(c[1]));
    }
  };

  std::vector<Point> points_;
  Point origin_;
  int dim_ = 0;
  double cell_size_ = 0.0;
  CellCoord min_cell_{0, 0};
  CellCoord max_cell_{0, 0};
  std::vector<CellCoord> bucket_cells_;
  std::vector<std::size_t> bucket_offsets_;  // size bucket_count + 1
  std::vector<std::size_t> bucket_members_;
  std::unordered_map<CellCoord, std::size_t, CellHash> lookup_;
};

inline SpatialIndex build_spatial_index(const NodeSet& nodes, double cell_size) {
  return SpatialIndex(nodes, cell_size);
}

// Free-function form of SpatialIndex::ball_query; `nodes` must be the set the
// index was built from (checked by size).
std::vector<std::size_t> ball_query(const SpatialIndex& index, const NodeSet& nodes,
                                    const Point& center, double radius);

// Max over a resolution^n probe grid spanning the domain of the distance to
// the nearest node. Throws InvalidArgument when resolution < 2.
double fill_distance_estimate(const NodeSet& nodes, int resolution = 512);

}  // namespace ddmls
