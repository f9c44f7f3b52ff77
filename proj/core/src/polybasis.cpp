#include "ddmls/polybasis.hpp"

#include <algorithm>
#include <string>

namespace ddmls {

namespace {

std::vector<MultiIndex> graded_exponents(int dim, int degree) {
  std::vector<MultiIndex> out;
  for (int total = 0; total <= degree; ++total) {
    if (dim == 1) {
      out.push_back({total, 0});
    } else {
      for (int a0 = total; a0 >= 0; --a0) out.push_back({a0, total - a0});
    }
  }
  return out;
}

}  // namespace

BasisSpec::BasisSpec(int dim, int degree) : dim_(dim), degree_(degree) {
  if (dim != 1 && dim != 2) throw Error(ErrorCode::UnsupportedDimension, "dimension " + std::to_string(dim));
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "degree " + std::to_string(degree));
  exponents_ = graded_exponents(dim, degree);
}

BasisSpec BasisSpec::with_order(int dim, int degree, std::vector<MultiIndex> exponents) {
  BasisSpec spec(dim, degree);
  auto sorted_given = exponents;
  auto sorted_default = spec.exponents_;
  std::sort(sorted_given.begin(), sorted_given.end());
  std::sort(sorted_default.begin(), sorted_default.end());
  if (sorted_given != sorted_default) {
    throw Error(ErrorCode::InvalidArgument, "exponent list is not a permutation of the degree-" +
                                                std::to_string(degree) + " monomials");
  }
  spec.exponents_ = std::move(exponents);
  const auto it = std::find(spec.exponents_.begin(), spec.exponents_.end(), MultiIndex{0, 0});
  spec.constant_index_ = static_cast<std::size_t>(it - spec.exponents_.begin());
  return spec;
}

std::size_t basis_size(int dim, int degree) {
  if (dim != 1 && dim != 2) throw Error(ErrorCode::UnsupportedDimension, "dimension " + std::to_string(dim));
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "degree " + std::to_string(degree));
  const auto d = static_cast<std::size_t>(degree);
  return dim == 1 ? d + 1 : (d + 1) * (d + 2) / 2;
}

void eval_basis_into(const BasisSpec& spec, const Point& x, const Point& x0, std::span<double> out) {
  const double dx = x[0] - x0[0];
  const double dy = x[1] - x0[1];
  // Powers up to the degree, reused across terms.
  std::array<double, 16> px{};
  std::array<double, 16> py{};
  const int deg = spec.degree();
  if (deg < 16) {
    px[0] = py[0] = 1.0;
    for (int k = 1; k <= deg; ++k) {
      px[static_cast<std::size_t>(k)] = px[static_cast<std::size_t>(k - 1)] * dx;
      py[static_cast<std::size_t>(k)] = py[static_cast<std::size_t>(k - 1)] * dy;
    }
    std::size_t j = 0;
    for (const MultiIndex& a : spec.exponents()) {
      out[j++] = px[static_cast<std::size_t>(a[0])] * py[static_cast<std::size_t>(a[1])];
    }
    return;
  }
  std::size_t j = 0;
  for (const MultiIndex& a : spec.exponents()) {
    double v = 1.0;
    for (int k = 0; k < a[0]; ++k) v *= dx;
    for (int k = 0; k < a[1]; ++k) v *= dy;
    out[j++] = v;
  }
}

std::vector<double> eval_basis(const BasisSpec& spec, const Point& x, const Point& x0) {
  require_same_dim(x, x0);
  if (x.dim() != spec.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "basis of dimension " + std::to_string(spec.dim()) +
                                                  " evaluated at a point of dimension " + std::to_string(x.dim()));
  }
  std::vector<double> out(spec.size());
  eval_basis_into(spec, x, x0, out);
  return out;
}

}  // namespace ddmls
