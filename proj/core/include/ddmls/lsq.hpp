#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ddmls {

enum class SolveStatus { Ok, InsufficientNodes, RankDeficient, NonFiniteInput };

std::string_view to_string(SolveStatus status);

// Dense weighted linear least squares, min sum_i w_i (b_i - (A c)_i)^2.
//
// The rows are scaled by sqrt(w_i / max w), the columns are equilibrated to
// unit norm, and the result is factored by Householder QR with column
// pivoting. The problem is declared rank deficient when a pivot falls to
// rank_tol times the leading pivot or below.
//
// `design` is row-major with `cols` columns. Weights must be positive.
// On success `coefficients` holds `cols` entries.
SolveStatus solve_weighted_lsq(std::span<const double> design, std::size_t cols,
                               std::span<const double> rhs, std::span<const double> weights,
                               double rank_tol, std::vector<double>& coefficients);

}  // namespace ddmls
