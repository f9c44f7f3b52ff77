#pragma once

// Independent reference implementations. Nothing here calls the library's
// solver, basis or index code; Eigen does the dense linear algebra.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "ddmls/geometry.hpp"

namespace oracle {

inline double dist(const ddmls::Point& a, const ddmls::Point& b) {
  double s = 0.0;
  for (int k = 0; k < a.dim(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

inline std::vector<std::size_t> ball(const ddmls::NodeSet& nodes, const ddmls::Point& c, double r) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (dist(nodes.point(i), c) <= r) out.push_back(i);
  }
  return out;
}

// Table of kernels written out again, directly from the formulas.
inline double kernel(int kind, double r) {
  switch (kind) {
    case 0: return std::exp(-r * r);
    case 1: return 1.0 / std::sqrt(1.0 + r * r);
    case 2: return std::exp(-r);
    case 3: return std::exp(-r) * (1.0 + r);
    case 4: return std::exp(-r) * (3.0 + 3.0 * r + r * r);
    case 5: return r < 1.0 ? std::pow(1.0 - r, 2) : 0.0;
    case 6: return r < 1.0 ? std::pow(1.0 - r, 4) * (4.0 * r + 1.0) : 0.0;
    default: return r < 1.0 ? std::pow(1.0 - r, 6) * (35.0 * r * r + 18.0 * r + 3.0) : 0.0;
  }
}

// Monomials 1, x, y, x^2, xy, y^2, ... centred at x0, listed the obvious way.
inline Eigen::RowVectorXd monomials(const ddmls::Point& x, const ddmls::Point& x0, int dim, int degree) {
  std::vector<double> row;
  const double dx = x[0] - x0[0];
  const double dy = dim == 2 ? x[1] - x0[1] : 0.0;
  for (int k = 0; k <= degree; ++k) {
    if (dim == 1) {
      row.push_back(std::pow(dx, k));
      continue;
    }
    for (int b = 0; b <= k; ++b) row.push_back(std::pow(dx, k - b) * std::pow(dy, b));
  }
  return Eigen::Map<Eigen::RowVectorXd>(row.data(), static_cast<Eigen::Index>(row.size()));
}

// c = (X^T W X)^{-1} X^T W f.
inline Eigen::VectorXd normal_equations(const std::vector<ddmls::Point>& pts, const std::vector<double>& f,
                                        const std::vector<double>& w, const ddmls::Point& x0, int dim, int degree) {
  const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
  const Eigen::Index m = monomials(x0, x0, dim, degree).size();
  Eigen::MatrixXd X(n, m);
  Eigen::VectorXd F(n);
  Eigen::VectorXd W(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    X.row(i) = monomials(pts[static_cast<std::size_t>(i)], x0, dim, degree);
    F(i) = f[static_cast<std::size_t>(i)];
    W(i) = w[static_cast<std::size_t>(i)];
  }
  const Eigen::MatrixXd A = X.transpose() * W.asDiagonal() * X;
  const Eigen::VectorXd b = X.transpose() * W.asDiagonal() * F;
  return A.inverse() * b;
}

struct Indicator {
  double value;
  std::size_t count;
};

// Plane fit over the delta-ball by dense QR, mean absolute residual; mean fit
// when fewer than three neighbours or a collinear neighbourhood.
inline Indicator indicator(const ddmls::NodeSet& nodes, std::size_t i, double delta) {
  const auto idx = ball(nodes, nodes.point(i), delta);
  const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
  const int dim = nodes.dim();
  Eigen::VectorXd f(n);
  for (Eigen::Index k = 0; k < n; ++k) f(k) = nodes.value(idx[static_cast<std::size_t>(k)]);
  Eigen::VectorXd fitted;
  bool planar = false;
  if (n >= dim + 1) {
    Eigen::MatrixXd A(n, dim + 1);
    for (Eigen::Index k = 0; k < n; ++k) A.row(k) = monomials(nodes.point(idx[static_cast<std::size_t>(k)]), nodes.point(i), dim, 1);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-10);
    if (qr.rank() == dim + 1) {
      fitted = A * qr.solve(f);
      planar = true;
    }
  }
  if (!planar) fitted = Eigen::VectorXd::Constant(n, f.mean());
  return {(f - fitted).cwiseAbs().mean(), idx.size()};
}

inline double fill_distance(const ddmls::NodeSet& nodes, int resolution) {
  const ddmls::Box& box = nodes.domain();
  double worst = 0.0;
  auto probe = [&](const ddmls::Point& p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) best = std::min(best, dist(p, nodes.point(i)));
    worst = std::max(worst, best);
  };
  auto coord = [&](int axis, int k) {
    return box.lower[axis] + (box.upper[axis] - box.lower[axis]) * k / (resolution - 1);
  };
  for (int a = 0; a < resolution; ++a) {
    if (nodes.dim() == 1) {
      probe(ddmls::Point(coord(0, a)));
      continue;
    }
    for (int b = 0; b < resolution; ++b) probe(ddmls::Point(coord(0, a), coord(1, b)));
  }
  return worst;
}

}  // namespace oracle
