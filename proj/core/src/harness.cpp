#include "ddmls/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ddmls {

ErrorMetrics error_metrics(std::span<const double> errors) {
  if (errors.empty()) throw Error(ErrorCode::EmptyErrors, "no errors to summarise");
  ErrorMetrics m;
  double sum_sq = 0.0;
  for (double e : errors) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw Error(ErrorCode::InvalidArgument, "errors must be finite and non-negative");
    }
    m.mae = std::max(m.mae, e);
    sum_sq += e * e;
  }
  m.rmse = std::sqrt(sum_sq / static_cast<double>(errors.size()));
  return m;
}

double convergence_rate(double e_prev, double e_cur, double h_prev, double h_cur) {
  if (!(e_prev > 0.0 && e_cur > 0.0 && h_prev > 0.0 && h_cur > 0.0) || !(h_prev > h_cur)) {
    throw Error(ErrorCode::NonPositiveInput, "rates need positive errors and h_prev > h_cur > 0");
  }
  return std::log(e_prev / e_cur) / std::log(h_prev / h_cur);
}

// ---------------------------------------------------------------------------

void EvalGrid::validate() const {
  if (per_axis < 2) throw Error(ErrorCode::InvalidArgument, "eval grid needs at least 2 points per axis");
  if (lower.dim() != upper.dim() || (lower.dim() != 1 && lower.dim() != 2)) {
    throw Error(ErrorCode::DimensionMismatch, "eval grid corners must both be 1-D or 2-D");
  }
  for (int a = 0; a < lower.dim(); ++a) {
    if (!(lower[a] < upper[a])) throw Error(ErrorCode::InvalidArgument, "eval grid corners out of order");
  }
}

std::vector<Point> EvalGrid::points() const {
  validate();
  const auto n = static_cast<std::size_t>(per_axis);
  auto coord = [&](int axis, std::size_t k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    return lower[axis] + t * (upper[axis] - lower[axis]);
  };
  std::vector<Point> out;
  if (lower.dim() == 1) {
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(coord(0, i));
    return out;
  }
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.emplace_back(coord(0, i), coord(1, j));
  }
  return out;
}

std::string_view source_name(NodeSource source) {
  return source == NodeSource::Grid ? "grid" : "halton";
}

NodeSource parse_source(std::string_view name) {
  if (name == "grid") return NodeSource::Grid;
  if (name == "halton") return NodeSource::Halton;
  throw Error(ErrorCode::InvalidArgument, "unknown node source '" + std::string(name) + "' (expected grid or halton)");
}

NodeSet level_nodes(NodeSource source, int level) {
  if (source == NodeSource::Grid) return regular_grid(level);
  if (level < 1 || level > 14) throw Error(ErrorCode::InvalidArgument, "level must lie in [1, 14]");
  const std::size_t side = (std::size_t{1} << level) + 1;
  return halton_points(side * side);
}

void StudyConfig::validate() const {
  if (levels.empty()) throw Error(ErrorCode::InvalidArgument, "study needs at least one level");
  for (std::size_t k = 1; k < levels.size(); ++k) {
    if (levels[k] <= levels[k - 1]) throw Error(ErrorCode::InvalidArgument, "levels must be strictly increasing");
  }
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "degree must be >= 0");
  if (fill_resolution < 2) throw Error(ErrorCode::InvalidArgument, "fill resolution must be >= 2");
  if (delta && !(*delta > 0.0)) throw Error(ErrorCode::NonPositiveDelta, "delta must be positive");
  eval.validate();
  if (eval.lower.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "studies run on the plane");
}

MlsConfig study_mls_config(const StudyConfig& cfg, std::size_t node_count) {
  MlsConfig mls;
  mls.basis = BasisSpec(2, cfg.degree);
  mls.weights = WeightConfig::with_defaults(cfg.kernel, cfg.shape_eps ? *cfg.shape_eps : default_shape_eps(node_count));
  if (cfg.truncation) mls.weights.truncation = *cfg.truncation;
  mls.mode = cfg.mode;
  mls.dd = cfg.dd;
  mls.rank_tol = cfg.rank_tol;
  mls.validate();
  return mls;
}

namespace {

std::string describe_point(const Point& p) {
  char buf[96];
  if (p.dim() == 2) {
    std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", p.x(), p.y());
  } else {
    std::snprintf(buf, sizeof buf, "(%.17g)", p.x());
  }
  return buf;
}

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

ConvergenceTable run_convergence_study(const StudyConfig& cfg) {
  cfg.validate();
  const std::vector<Point> queries = cfg.eval.points();
  std::vector<double> exact(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) exact[q] = cfg.fn(queries[q]);

  ConvergenceTable table;
  for (int level : cfg.levels) {
    const NodeSet nodes = sample(cfg.fn, level_nodes(cfg.source, level));
    const MlsConfig mls = study_mls_config(cfg, nodes.size());
    const double delta = cfg.delta ? *cfg.delta : default_delta(nodes.size());
    const Approximant approx(nodes, mls, delta, cfg.threads);

    const FieldEvaluation result = approx.evaluate(queries, {cfg.threads, cfg.auto_degree});
    if (const auto bad = result.first_failure()) {
      throw Error(ErrorCode::StudyFailed, "level " + std::to_string(level) + ", query " + std::to_string(*bad) +
                                              " at " + describe_point(queries[*bad]) + ": " +
                                              std::string(to_string(result.status[*bad])));
    }

    std::vector<double> errors(queries.size());
    for (std::size_t q = 0; q < queries.size(); ++q) errors[q] = std::abs(exact[q] - result.values[q]);
    const ErrorMetrics metrics = error_metrics(errors);

    ConvergenceRow row;
    row.level = level;
    row.n = nodes.size();
    row.h = cfg.source == NodeSource::Grid ? std::sqrt(2.0) / std::ldexp(1.0, level + 1)
                                           : fill_distance_estimate(nodes, cfg.fill_resolution);
    row.mae = metrics.mae;
    row.rmse = metrics.rmse;
    if (!table.rows.empty()) {
      const ConvergenceRow& prev = table.rows.back();
      if (prev.h > row.h && row.mae > 0.0 && prev.mae > 0.0) {
        row.rate_inf = convergence_rate(prev.mae, row.mae, prev.h, row.h);
      }
      if (prev.h > row.h && row.rmse > 0.0 && prev.rmse > 0.0) {
        row.rate_2 = convergence_rate(prev.rmse, row.rmse, prev.h, row.h);
      }
    }
    table.rows.push_back(row);
  }
  return table;
}

void ConvergenceTable::write_csv(std::ostream& out) const {
  std::string text = "l,N,h,MAE,rate_inf,RMSE,rate_2\n";
  for (const ConvergenceRow& r : rows) {
    text += std::to_string(r.level) + ',' + std::to_string(r.n) + ',';
    append_number(text, r.h);
    text += ',';
    append_number(text, r.mae);
    text += ',';
    if (r.rate_inf) append_number(text, *r.rate_inf);
    text += ',';
    append_number(text, r.rmse);
    text += ',';
    if (r.rate_2) append_number(text, *r.rate_2);
    text += '\n';
  }
  out << text;
}

std::string ConvergenceTable::to_json(int indent) const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ConvergenceRow& r : rows) {
    nlohmann::ordered_json row;
    row["l"] = r.level;
    row["N"] = r.n;
    row["h"] = r.h;
    row["MAE"] = r.mae;
    row["rate_inf"] = r.rate_inf ? nlohmann::ordered_json(*r.rate_inf) : nlohmann::ordered_json(nullptr);
    row["RMSE"] = r.rmse;
    row["rate_2"] = r.rate_2 ? nlohmann::ordered_json(*r.rate_2) : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(row));
  }
  return arr.dump(indent);
}

// ---------------------------------------------------------------------------

ErrorField evaluate_error_field(const Approximant& approx, std::span<const Point> queries,
                                const TestFunction* reference, const EvalOptions& options) {
  const FieldEvaluation result = approx.evaluate(queries, options);
  ErrorField field;
  field.points.assign(queries.begin(), queries.end());
  field.approx = result.values;
  field.status = result.status;
  field.exact.assign(queries.size(), std::numeric_limits<double>::quiet_NaN());
  if (reference != nullptr) {
    for (std::size_t q = 0; q < queries.size(); ++q) field.exact[q] = (*reference)(queries[q]);
  }
  return field;
}

void ErrorField::write_csv(std::ostream& out) const {
  const bool planar = !points.empty() && points.front().dim() == 2;
  std::string text = planar ? "x,y,f_true,f_approx,abs_err\n" : "x,f_true,f_approx,abs_err\n";
  for (std::size_t q = 0; q < points.size(); ++q) {
    append_number(text, points[q].x());
    text += ',';
    if (planar) {
      append_number(text, points[q].y());
      text += ',';
    }
    if (!std::isnan(exact[q])) append_number(text, exact[q]);
    text += ',';
    if (!std::isnan(approx[q])) append_number(text, approx[q]);
    text += ',';
    if (!std::isnan(exact[q]) && !std::isnan(approx[q])) append_number(text, std::abs(exact[q] - approx[q]));
    text += '\n';
  }
  out << text;
}

OscillationReport oscillation_report(const MlsConfig& cfg, const TestFunction& fn, const NodeSet& nodes,
                                     const OscillationOptions& options) {
  const double delta = options.delta ? *options.delta : default_delta(nodes.size());
  const Approximant approx(nodes, cfg, delta, options.threads);
  const std::vector<Point> queries = options.eval.points();
  const FieldEvaluation result = approx.evaluate(queries, {options.threads, false});
  if (const auto bad = result.first_failure()) {
    throw Error(ErrorCode::StudyFailed, "query " + std::to_string(*bad) + " at " + describe_point(queries[*bad]) +
                                            ": " + std::string(to_string(result.status[*bad])));
  }

  const auto [lo_it, hi_it] = std::minmax_element(nodes.values().begin(), nodes.values().end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  OscillationReport report;
  std::vector<double> errors(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const double v = result.values[q];
    report.max_overshoot = std::max({report.max_overshoot, v - hi, lo - v});
    errors[q] = std::abs(fn(queries[q]) - v);
  }

  const double interior_cut = options.interior_deltas * delta;
  std::vector<double> interior;
  std::vector<double> dist(queries.size(), std::numeric_limits<double>::infinity());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    if (const auto d = fn.interface_distance(queries[q])) dist[q] = *d;
    if (dist[q] > interior_cut) interior.push_back(errors[q]);
  }
  if (!fn.has_interface() || interior.empty()) return report;

  const std::size_t mid = interior.size() / 2;
  std::nth_element(interior.begin(), interior.begin() + static_cast<std::ptrdiff_t>(mid), interior.end());
  double median = interior[mid];
  if (interior.size() % 2 == 0) {
    const double below = *std::max_element(interior.begin(), interior.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + below);
  }
  report.interior_median = median;

  const double threshold = options.band_factor * median;
  std::size_t tube = 0;
  for (std::size_t q = 0; q < queries.size(); ++q) {
    if (errors[q] > threshold) ++report.band_points;
    if (dist[q] <= interior_cut) ++tube;
  }
  if (tube == 0) {
    report.band_width = report.band_points > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    report.band_width = static_cast<double>(report.band_points) / static_cast<double>(tube) * 2.0 * interior_cut;
  }
  return report;
}

}  // namespace ddmls
