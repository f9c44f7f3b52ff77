#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ddmls/geometry.hpp"

namespace ddmls {

using MultiIndex = std::array<int, 2>;

// Monomials (x - x0)^a0 (y - y0)^a1 with a0 + a1 <= degree, centered at the
// query point. Default order: total degree ascending, then a0 descending,
// i.e. 1, x, y, x^2, xy, y^2, ...
class BasisSpec {
 public:
  // Throws UnsupportedDimension unless dim is 1 or 2, InvalidArgument for degree < 0.
  BasisSpec(int dim, int degree);

  // Same polynomial space with a caller-supplied term order. `exponents` must
  // be a permutation of the default list.
  static BasisSpec with_order(int dim, int degree, std::vector<MultiIndex> exponents);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return exponents_.size(); }
  std::span<const MultiIndex> exponents() const noexcept { return exponents_; }

  // Index of the constant term.
  std::size_t constant_index() const noexcept { return constant_index_; }

 private:
  int dim_;
  int degree_;
  std::vector<MultiIndex> exponents_;
  std::size_t constant_index_ = 0;
};

// binomial(d + n, n). Throws UnsupportedDimension for n outside {1, 2}.
std::size_t basis_size(int dim, int degree);

// Writes the centered monomials at x into `out` (length spec.size()).
// Unchecked; callers guarantee matching dimensions.
void eval_basis_into(const BasisSpec& spec, const Point& x, const Point& x0, std::span<double> out);

// Checked version. Throws DimensionMismatch.
std::vector<double> eval_basis(const BasisSpec& spec, const Point& x, const Point& x0);

}  // namespace ddmls
