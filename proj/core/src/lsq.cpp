#include "ddmls/lsq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ddmls {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Ok: return "Ok";
    case SolveStatus::InsufficientNodes: return "InsufficientNodes";
    case SolveStatus::RankDeficient: return "RankDeficient";
    case SolveStatus::NonFiniteInput: return "NonFiniteInput";
  }
  return "Unknown";
}

SolveStatus solve_weighted_lsq(std::span<const double> design, std::size_t cols,
                               std::span<const double> rhs, std::span<const double> weights,
                               double rank_tol, std::vector<double>& coefficients) {
  const std::size_t rows = rhs.size();
  if (cols == 0 || rows < cols) return SolveStatus::InsufficientNodes;

  double wmax = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::isfinite(weights[i]) || !std::isfinite(rhs[i]) || weights[i] < 0.0) {
      return SolveStatus::NonFiniteInput;
    }
    wmax = std::max(wmax, weights[i]);
  }
  if (!(wmax > 0.0)) return SolveStatus::InsufficientNodes;

  // Column-major working copy of diag(sqrt(w)) * A, and sqrt(w) * b.
  std::vector<double> a(rows * cols);
  std::vector<double> b(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const double s = std::sqrt(weights[i] / wmax);
    b[i] = s * rhs[i];
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = design[i * cols + j];
      if (!std::isfinite(v)) return SolveStatus::NonFiniteInput;
      a[j * rows + i] = s * v;
    }
  }
  auto col = [&](std::size_t j) { return a.data() + j * rows; };

  std::vector<double> scale(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    const double* c = col(j);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < rows; ++i) norm2 += c[i] * c[i];
    const double norm = std::sqrt(norm2);
    if (!(norm > 0.0)) return SolveStatus::RankDeficient;
    scale[j] = norm;
    double* cm = col(j);
    for (std::size_t i = 0; i < rows; ++i) cm[i] /= norm;
  }

  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> diag(cols);

  for (std::size_t k = 0; k < cols; ++k) {
    // Pivot on the largest remaining column norm.
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < cols; ++j) {
      const double* c = col(j);
      double s = 0.0;
      for (std::size_t i = k; i < rows; ++i) s += c[i] * c[i];
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best != k) {
      std::swap_ranges(col(k), col(k) + rows, col(best));
      std::swap(perm[k], perm[best]);
    }

    double* v = col(k);
    double alpha2 = 0.0;
    for (std::size_t i = k; i < rows; ++i) alpha2 += v[i] * v[i];
    double alpha = std::sqrt(alpha2);
    if (v[k] > 0.0) alpha = -alpha;
    diag[k] = alpha;
    if (k == 0 ? !(std::abs(alpha) > 0.0) : std::abs(alpha) <= rank_tol * std::abs(diag[0])) {
      return SolveStatus::RankDeficient;
    }

    // Householder vector in place: v = x - alpha e_k, normalised so that
    // H = I - 2 v v^T / (v^T v).
    v[k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < rows; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 > 0.0) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        double* c = col(j);
        double dot = 0.0;
        for (std::size_t i = k; i < rows; ++i) dot += v[i] * c[i];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < rows; ++i) c[i] -= f * v[i];
      }
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += v[i] * b[i];
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < rows; ++i) b[i] -= f * v[i];
    }
  }

  // Back substitution on R y = (Q^T b)[0:cols]; R's strict upper part lives
  // in rows 0..k-1 of the later columns, its diagonal in `diag`.
  std::vector<double> y(cols);
  for (std::size_t kk = cols; kk-- > 0;) {
    double s = b[kk];
    for (std::size_t j = kk + 1; j < cols; ++j) s -= col(j)[kk] * y[j];
    y[kk] = s / diag[kk];
  }

  coefficients.assign(cols, 0.0);
  for (std::size_t k = 0; k < cols; ++k) coefficients[perm[k]] = y[k] / scale[perm[k]];
  for (double c : coefficients) {
    if (!std::isfinite(c)) return SolveStatus::NonFiniteInput;
  }
  return SolveStatus::Ok;
}

}  // namespace ddmls
