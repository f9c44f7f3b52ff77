#include "ddmls/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

namespace ddmls {

std::string_view kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::G: return "G";
    case KernelKind::IMQ: return "IMQ";
    case KernelKind::M0: return "M0";
    case KernelKind::M2: return "M2";
    case KernelKind::M4: return "M4";
    case KernelKind::W0: return "W0";
    case KernelKind::W2: return "W2";
    case KernelKind::W4: return "W4";
  }
  return "?";
}

KernelKind parse_kernel(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (KernelKind k : kAllKernels) {
    if (kernel_name(k) == upper) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + std::string(name) + "'");
}

double kernel_eval(KernelKind kind, double r) {
  if (r < 0.0 || std::isnan(r)) throw Error(ErrorCode::NegativeRadius, "r = " + std::to_string(r));
  switch (kind) {
    case KernelKind::G: return std::exp(-r * r);
    case KernelKind::IMQ: return 1.0 / std::sqrt(1.0 + r * r);
    case KernelKind::M0: return std::exp(-r);
    case KernelKind::M2: return std::exp(-r) * (1.0 + r);
    case KernelKind::M4: return std::exp(-r) * (3.0 + 3.0 * r + r * r);
    case KernelKind::W0: {
      if (r >= 1.0) return 0.0;
      const double s = 1.0 - r;
      return s * s;
    }
    case KernelKind::W2: {
      if (r >= 1.0) return 0.0;
      const double s2 = (1.0 - r) * (1.0 - r);
      return s2 * s2 * (4.0 * r + 1.0);
    }
    case KernelKind::W4: {
      if (r >= 1.0) return 0.0;
      const double s2 = (1.0 - r) * (1.0 - r);
      return s2 * s2 * s2 * (35.0 * r * r + 18.0 * r + 3.0);
    }
  }
  return 0.0;
}

WeightConfig WeightConfig::with_defaults(KernelKind kind, double shape_eps) {
  return {kind, shape_eps, is_compactly_supported(kind) ? 0.0 : kDefaultTruncation};
}

void WeightConfig::validate() const {
  if (!(shape_eps > 0.0) || !std::isfinite(shape_eps)) {
    throw Error(ErrorCode::InvalidArgument, "shape_eps must be positive, got " + std::to_string(shape_eps));
  }
  if (!(truncation >= 0.0 && truncation < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "truncation must lie in [0, 1), got " + std::to_string(truncation));
  }
}

double weight_at_distance(const WeightConfig& cfg, double dist) {
  const double w = kernel_eval(cfg.kind, cfg.shape_eps * dist);
  if (!is_compactly_supported(cfg.kind) && w <= cfg.truncation) return 0.0;
  return w;
}

double weight(const WeightConfig& cfg, const Point& x, const Point& xi) {
  require_same_dim(x, xi);
  return weight_at_distance(cfg, distance(x, xi));
}

namespace {

// Smallest scaled radius s with kernel(s) <= level, for a decreasing kernel.
double invert_by_bisection(KernelKind kind, double level) {
  double lo = 0.0;
  double hi = 1.0;
  while (kernel_eval(kind, hi) > level) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (kernel_eval(kind, mid) > level ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

std::optional<double> support_radius(const WeightConfig& cfg) {
  cfg.validate();
  if (is_compactly_supported(cfg.kind)) return 1.0 / cfg.shape_eps;
  const double tau = cfg.truncation;
  if (tau == 0.0) return std::nullopt;

  double scaled = 0.0;
  switch (cfg.kind) {
    case KernelKind::G: scaled = std::sqrt(std::log(1.0 / tau)); break;
    case KernelKind::IMQ: scaled = std::sqrt(1.0 / (tau * tau) - 1.0); break;
    case KernelKind::M0: scaled = std::log(1.0 / tau); break;
    case KernelKind::M2:
    case KernelKind::M4:
      // M4 starts at 3, so any tau < 1 is reached somewhere; same for M2 at 1.
      scaled = invert_by_bisection(cfg.kind, tau);
      break;
    default: break;
  }
  return scaled / cfg.shape_eps;
}

double default_shape_eps(std::size_t node_count) {
  const auto half_side = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(node_count)) / 2.0));
  if (half_side == 0) {
    throw Error(ErrorCode::TooFewNodes, "need at least 4 nodes, got " + std::to_string(node_count));
  }
  return 0.5 * static_cast<double>(half_side);
}

}  // namespace ddmls
