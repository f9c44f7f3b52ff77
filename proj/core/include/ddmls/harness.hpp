#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddmls/datasets.hpp"
#include "ddmls/kernels.hpp"
#include "ddmls/mls.hpp"

namespace ddmls {

struct ErrorMetrics {
  double mae = 0.0;   // max |e_i|
  double rmse = 0.0;  // sqrt(mean e_i^2)
};

// Throws EmptyErrors for an empty list, InvalidArgument for negative or
// non-finite entries.
ErrorMetrics error_metrics(std::span<const double> errors);

// log(e_prev / e_cur) / log(h_prev / h_cur). Throws NonPositiveInput unless
// every input is positive and h_prev > h_cur.
double convergence_rate(double e_prev, double e_cur, double h_prev, double h_cur);

// Tensor grid of evaluation points; default 120 x 120 over [0.025, 0.975]^2.
struct EvalGrid {
  Point lower{0.025, 0.025};
  Point upper{0.975, 0.975};
  int per_axis = 120;

  // Row-major (x outer, y inner) list; 1-D when the corners are 1-D.
  std::vector<Point> points() const;
  void validate() const;
};

enum class NodeSource { Grid, Halton };

std::string_view source_name(NodeSource source);
NodeSource parse_source(std::string_view name);

// Nodes for a refinement level: the (2^l+1)^2 grid, or that many Halton points.
NodeSet level_nodes(NodeSource source, int level);

struct StudyConfig {
  std::vector<int> levels;
  NodeSource source = NodeSource::Grid;
  TestFunction fn = TestFunction::franke();
  int degree = 2;
  KernelKind kernel = KernelKind::W2;
  Mode mode = Mode::Linear;
  DdWeightParams dd;
  double rank_tol = 1e-12;
  std::optional<double> truncation;  // default per kernel
  std::optional<double> shape_eps;   // default 1/2 floor(sqrt(N)/2) per level
  std::optional<double> delta;       // default sqrt(2)/floor(sqrt(N)/2) per level
  EvalGrid eval;
  int fill_resolution = 512;  // probe grid for Halton fill distance
  bool auto_degree = false;
  unsigned threads = 0;

  void validate() const;
};

// MlsConfig the study uses for a node set of the given size.
MlsConfig study_mls_config(const StudyConfig& cfg, std::size_t node_count);

struct ConvergenceRow {
  int level = 0;
  std::size_t n = 0;
  double h = 0.0;
  double mae = 0.0;
  std::optional<double> rate_inf;
  double rmse = 0.0;
  std::optional<double> rate_2;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  // Header `l,N,h,MAE,rate_inf,RMSE,rate_2`; empty rate fields when absent.
  void write_csv(std::ostream& out) const;
  // Array of row objects with the same field names; absent rates are null.
  std::string to_json(int indent = 2) const;
};

// Builds nodes per level, samples cfg.fn, evaluates on cfg.eval and records
// errors and rates. h is sqrt(2)/2^(l+1) for grids and the probe-grid fill
// distance for Halton sets. Any failed query aborts with StudyFailed naming
// the level and query point.
ConvergenceTable run_convergence_study(const StudyConfig& cfg);

// Per-point comparison of an approximant against a known function.
struct ErrorField {
  std::vector<Point> points;
  std::vector<double> exact;   // NaN when no reference function is known
  std::vector<double> approx;  // NaN where the solve failed
  std::vector<SolveStatus> status;

  // Header `x,y,f_true,f_approx,abs_err` (`x,...` in 1-D); unknown fields empty.
  void write_csv(std::ostream& out) const;
};

ErrorField evaluate_error_field(const Approximant& approx, std::span<const Point> queries,
                                const TestFunction* reference, const EvalOptions& options = {});

struct OscillationOptions {
  EvalGrid eval;
  std::optional<double> delta;  // indicator radius; default sqrt(2)/floor(sqrt(N)/2)
  double band_factor = 10.0;    // error threshold as a multiple of the interior median
  double interior_deltas = 3.0; // interior = farther than this many deltas from the curve
  unsigned threads = 0;
};

struct OscillationReport {
  double max_overshoot = 0.0;  // largest excursion outside [min f_i, max f_i]
  double band_width = 0.0;     // area of the high-error set / length of the curve
  double interior_median = 0.0;
  std::size_t band_points = 0;
};

// Overshoot and smearing diagnostics for `nodes` (values already sampled
// from `fn`). The curve length is measured as the area of the eval points
// within interior_deltas * delta of it divided by twice that distance, so the
// band width is in units of length and comparable between modes. For smooth
// functions band_width is 0.
OscillationReport oscillation_report(const MlsConfig& cfg, const TestFunction& fn, const NodeSet& nodes,
                                     const OscillationOptions& options = {});

}  // namespace ddmls
