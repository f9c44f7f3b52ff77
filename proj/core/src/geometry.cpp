#include "ddmls/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace ddmls {

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "points of dimension " + std::to_string(a.dim()) +
                                                  " and " + std::to_string(b.dim()));
  }
}

bool Box::contains(const Point& p) const noexcept {
  if (p.dim() != dim()) return false;
  for (int a = 0; a < dim(); ++a) {
    if (p[a] < lower[a] || p[a] > upper[a]) return false;
  }
  return true;
}

Box Box::unit(int dim) {
  if (dim == 1) return {Point(0.0), Point(1.0)};
  if (dim == 2) return {Point(0.0, 0.0), Point(1.0, 1.0)};
  throw Error(ErrorCode::UnsupportedDimension, "dimension " + std::to_string(dim));
}

Box Box::bounding(std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyNodeSet, "bounding box of no points");
  Box box{points.front(), points.front()};
  for (const Point& p : points) {
    require_same_dim(p, box.lower);
    for (int a = 0; a < p.dim(); ++a) {
      box.lower[a] = std::min(box.lower[a], p[a]);
      box.upper[a] = std::max(box.upper[a], p[a]);
    }
  }
  return box;
}

NodeSet::NodeSet(std::vector<Point> points, std::vector<double> values, Box domain)
    : points_(std::move(points)), values_(std::move(values)), domain_(domain) {
  if (points_.empty()) throw Error(ErrorCode::EmptyNodeSet, "node set needs at least one node");
  if (points_.size() != values_.size()) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(points_.size()) + " points but " +
                                                std::to_string(values_.size()) + " values");
  }
  const int n = domain_.dim();
  if (n != 1 && n != 2) throw Error(ErrorCode::UnsupportedDimension, "dimension " + std::to_string(n));
  if (domain_.upper.dim() != n) throw Error(ErrorCode::DimensionMismatch, "domain corners differ in dimension");

  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (p.dim() != n) {
      throw Error(ErrorCode::DimensionMismatch, "node " + std::to_string(i) + " has dimension " +
                                                    std::to_string(p.dim()));
    }
    if (!p.is_finite() || !std::isfinite(values_[i])) {
      throw Error(ErrorCode::NonFiniteInput, "node " + std::to_string(i));
    }
    if (!domain_.contains(p)) {
      throw Error(ErrorCode::PointOutsideDomain, "node " + std::to_string(i));
    }
  }

  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    const Point& p = points_[a];
    const Point& q = points_[b];
    return p[0] != q[0] ? p[0] < q[0] : p[1] < q[1];
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (points_[order[k - 1]] == points_[order[k]]) {
      throw Error(ErrorCode::DuplicatePoint, "nodes " + std::to_string(std::min(order[k - 1], order[k])) +
                                                 " and " + std::to_string(std::max(order[k - 1], order[k])) +
                                                 " coincide");
    }
  }
}

NodeSet NodeSet::with_bounding_box(std::vector<Point> points, std::vector<double> values) {
  const Box box = Box::bounding(points);
  return NodeSet(std::move(points), std::move(values), box);
}

NodeSet NodeSet::with_values(std::vector<double> values) const {
  if (values.size() != points_.size()) {
    throw Error(ErrorCode::InvalidArgument, "value count does not match node count");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error(ErrorCode::NonFiniteInput, "value " + std::to_string(i));
  }
  NodeSet out;
  out.points_ = points_;
  out.values_ = std::move(values);
  out.domain_ = domain_;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t clamp_cell(double c, std::int64_t lo, std::int64_t hi) {
  if (!(c > static_cast<double>(lo))) return lo;
  if (!(c < static_cast<double>(hi))) return hi;
  return static_cast<std::int64_t>(c);
}

}  // namespace

SpatialIndex::SpatialIndex(const NodeSet& nodes, double cell_size)
    : points_(nodes.points().begin(), nodes.points().end()),
      origin_(nodes.domain().lower),
      dim_(nodes.dim()),
      cell_size_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw Error(ErrorCode::NonPositiveCellSize, "cell size " + std::to_string(cell_size));
  }
  const double span = nodes.domain().diameter() / cell_size;
  if (span > static_cast<double>(std::int64_t{1} << 31)) {
    throw Error(ErrorCode::InvalidArgument, "cell size too small for the domain");
  }

  std::vector<std::pair<CellCoord, std::size_t>> keyed;
  keyed.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) keyed.emplace_back(cell_of(points_[i]), i);
  std::sort(keyed.begin(), keyed.end());

  min_cell_ = keyed.front().first;
  max_cell_ = keyed.front().first;
  bucket_members_.reserve(keyed.size());
  for (const auto& [cell, idx] : keyed) {
    if (bucket_cells_.empty() || bucket_cells_.back() != cell) {
      bucket_cells_.push_back(cell);
      bucket_offsets_.push_back(bucket_members_.size());
      for (int a = 0; a < 2; ++a) {
        min_cell_[a] = std::min(min_cell_[a], cell[a]);
        max_cell_[a] = std::max(max_cell_[a], cell[a]);
      }
    }
    bucket_members_.push_back(idx);
  }
  bucket_offsets_.push_back(bucket_members_.size());

  lookup_.reserve(bucket_cells_.size());
  for (std::size_t b = 0; b < bucket_cells_.size(); ++b) lookup_.emplace(bucket_cells_[b], b);
}

SpatialIndex::CellCoord SpatialIndex::cell_of(const Point& p) const noexcept {
  CellCoord c{0, 0};
  for (int a = 0; a < dim_; ++a) {
    c[a] = static_cast<std::int64_t>(std::floor((p[a] - origin_[a]) / cell_size_));
  }
  return c;
}

std::span<const std::size_t> SpatialIndex::bucket(const CellCoord& cell) const {
  const auto it = lookup_.find(cell);
  if (it == lookup_.end()) return {};
  const std::size_t b = it->second;
  return std::span<const std::size_t>(bucket_members_).subspan(
      bucket_offsets_[b], bucket_offsets_[b + 1] - bucket_offsets_[b]);
}

template <typename Visit>
void SpatialIndex::visit_ball(const Point& center, double radius, Visit&& visit) const {
  CellCoord lo{0, 0};
  CellCoord hi{0, 0};
  double cells = 1.0;
  for (int a = 0; a < dim_; ++a) {
    // One cell of slack on each side absorbs rounding in the cell arithmetic.
    lo[a] = clamp_cell(std::floor((center[a] - radius - origin_[a]) / cell_size_) - 1.0, min_cell_[a], max_cell_[a]);
    hi[a] = clamp_cell(std::floor((center[a] + radius - origin_[a]) / cell_size_) + 1.0, min_cell_[a], max_cell_[a]);
    cells *= static_cast<double>(hi[a] - lo[a] + 1);
  }
  auto test = [&](std::size_t i) {
    if (distance(points_[i], center) <= radius) visit(i);
  };
  if (cells > static_cast<double>(bucket_cells_.size())) {
    for (std::size_t i = 0; i < points_.size(); ++i) test(i);
    return;
  }
  for (std::int64_t cx = lo[0]; cx <= hi[0]; ++cx) {
    for (std::int64_t cy = lo[1]; cy <= hi[1]; ++cy) {
      for (std::size_t i : bucket({cx, cy})) test(i);
    }
  }
}

std::vector<std::size_t> SpatialIndex::ball_query(const Point& center, double radius) const {
  if (!(radius > 0.0)) throw Error(ErrorCode::NonPositiveRadius, "radius " + std::to_string(radius));
  if (center.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "query point dimension");
  std::vector<std::size_t> out;
  visit_ball(center, radius, [&out](std::size_t i) { out.push_back(i); });
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<std::size_t, double> SpatialIndex::nearest(const Point& center) const {
  if (center.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "query point dimension");
  // The first non-empty ball contains a closest node.
  double radius = cell_size_;
  for (;;) {
    std::size_t best = points_.size();
    double best_d2 = std::numeric_limits<double>::infinity();
    visit_ball(center, radius, [&](std::size_t i) {
      const double d2 = squared_distance(points_[i], center);
      if (d2 < best_d2 || (d2 == best_d2 && i < best)) {
        best_d2 = d2;
        best = i;
      }
    });
    if (best < points_.size()) return {best, std::sqrt(best_d2)};
    radius *= 2.0;
  }
}

std::vector<std::size_t> ball_query(const SpatialIndex& index, const NodeSet& nodes, const Point& center,
                                    double radius) {
  if (index.node_count() != nodes.size()) {
    throw Error(ErrorCode::InvalidArgument, "index was built for a different node set");
  }
  return index.ball_query(center, radius);
}

double fill_distance_estimate(const NodeSet& nodes, int resolution) {
  if (nodes.size() == 0) throw Error(ErrorCode::EmptyNodeSet, "fill distance of no nodes");
  if (resolution < 2) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 2");

  const Box& box = nodes.domain();
  const double diameter = box.diameter();
  const double cell = diameter > 0.0 ? diameter / std::sqrt(static_cast<double>(nodes.size())) : 1.0;
  const SpatialIndex index(nodes, cell);

  auto probe = [&](int axis, int k) {
    const double t = static_cast<double>(k) / static_cast<double>(resolution - 1);
    return box.lower[axis] + t * (box.upper[axis] - box.lower[axis]);
  };

  double h = 0.0;
  if (nodes.dim() == 1) {
    for (int i = 0; i < resolution; ++i) h = std::max(h, index.nearest(Point(probe(0, i))).second);
  } else {
    for (int i = 0; i < resolution; ++i) {
      for (int j = 0; j < resolution; ++j) {
        h = std::max(h, index.nearest(Point(probe(0, i), probe(1, j))).second);
      }
    }
  }
  return h;
}

}  // namespace ddmls
