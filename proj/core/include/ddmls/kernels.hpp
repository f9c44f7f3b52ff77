#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include "ddmls/geometry.hpp"

namespace ddmls {

// Radial weight profiles: Gaussian, inverse multiquadric, Matern C0/C2/C4
// and Wendland C0/C2/C4.
enum class KernelKind { G, IMQ, M0, M2, M4, W0, W2, W4 };

inline constexpr std::array<KernelKind, 8> kAllKernels = {
    KernelKind::G,  KernelKind::IMQ, KernelKind::M0, KernelKind::M2,
    KernelKind::M4, KernelKind::W0,  KernelKind::W2, KernelKind::W4,
};

// Canonical uppercase acronym.
std::string_view kernel_name(KernelKind kind);

// Case-insensitive; throws InvalidArgument for anything else.
KernelKind parse_kernel(std::string_view name);

// Wendland kernels vanish for r >= 1; the rest are strictly positive.
constexpr bool is_compactly_supported(KernelKind kind) {
  return kind == KernelKind::W0 || kind == KernelKind::W2 || kind == KernelKind::W4;
}

// omega(r). Throws NegativeRadius for r < 0.
double kernel_eval(KernelKind kind, double r);

inline constexpr double kDefaultTruncation = 1e-10;

struct WeightConfig {
  KernelKind kind = KernelKind::W2;
  double shape_eps = 1.0;
  // Weights <= truncation count as zero for globally supported kernels.
  double truncation = 0.0;

  // Truncation defaults to 1e-10 for G/IMQ/Matern and 0 for Wendland.
  static WeightConfig with_defaults(KernelKind kind, double shape_eps);

  // Throws InvalidArgument unless shape_eps > 0 and truncation in [0, 1).
  void validate() const;
};

// omega(shape_eps * |x - xi|), truncated as configured.
double weight(const WeightConfig& cfg, const Point& x, const Point& xi);

// Same as weight() from a precomputed distance.
double weight_at_distance(const WeightConfig& cfg, double dist);

// Distance beyond which weight() is zero; nullopt when the kernel never
// reaches the truncation level (truncation == 0 for a global kernel).
std::optional<double> support_radius(const WeightConfig& cfg);

// 1/2 * floor(sqrt(N)/2). Throws TooFewNodes for N < 4.
double default_shape_eps(std::size_t node_count);

}  // namespace ddmls
