#include "ddmls/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "ddmls/datasets.hpp"
#include "ddmls/error.hpp"
#include "ddmls/harness.hpp"
#include "ddmls/kernels.hpp"
#include "ddmls/mls.hpp"
#include "ddmls/smoothness.hpp"

namespace ddmls {
namespace {

struct Options {
  std::optional<int> grid;
  std::optional<std::size_t> halton;
  std::optional<std::string> nodes_path;
  std::optional<std::string> fn;
  std::optional<int> degree;
  std::string kernel = "W2";
  std::string mode = "linear";
  std::optional<double> exponent;
  std::optional<double> eps_reg;
  std::optional<double> shape_eps;
  std::optional<double> delta;
  std::optional<double> trunc;
  std::optional<std::string> eval_grid;
  std::string levels;
  std::string source = "grid";
  std::optional<std::string> out;
  bool json = false;
  bool auto_degree = false;
};

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
    case ErrorCode::ParseError:
    case ErrorCode::DuplicatePoint:
    case ErrorCode::EmptyNodeSet:
    case ErrorCode::PointOutsideDomain:
      return kExitIo;
    case ErrorCode::InvalidArgument:
    case ErrorCode::NonPositiveCellSize:
    case ErrorCode::NonPositiveRadius:
    case ErrorCode::NegativeRadius:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::UnsupportedDimension:
    case ErrorCode::NonPositiveDelta:
    case ErrorCode::NonPositiveInput:
      return kExitUsage;
    default:
      return kExitNumerical;
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = s.find(sep, start);
    parts.push_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) return parts;
    start = at + 1;
  }
}

template <typename T>
T parse_value(std::string_view text, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return v;
}

std::vector<int> parse_levels(const std::string& spec) {
  const std::size_t dots = spec.find("..");
  if (dots == std::string::npos) throw UsageError("--levels expects A..B, got '" + spec + "'");
  const int a = parse_value<int>(std::string_view(spec).substr(0, dots), "level");
  const int b = parse_value<int>(std::string_view(spec).substr(dots + 2), "level");
  if (a > b) throw UsageError("--levels range is empty: " + spec);
  std::vector<int> levels;
  for (int l = a; l <= b; ++l) levels.push_back(l);
  return levels;
}

// NX | NX,lo,hi | NX,xlo,ylo,xhi,yhi (the 5-field form only in 2-D).
EvalGrid parse_eval_grid(const std::optional<std::string>& spec, int dim) {
  EvalGrid grid;
  if (dim == 1) {
    grid.lower = Point(0.025);
    grid.upper = Point(0.975);
  }
  if (!spec) return grid;
  const auto parts = split(*spec, ',');
  grid.per_axis = parse_value<int>(parts[0], "eval grid size");
  if (parts.size() == 3) {
    const double lo = parse_value<double>(parts[1], "eval grid corner");
    const double hi = parse_value<double>(parts[2], "eval grid corner");
    grid.lower = dim == 1 ? Point(lo) : Point(lo, lo);
    grid.upper = dim == 1 ? Point(hi) : Point(hi, hi);
  } else if (parts.size() == 5 && dim == 2) {
    grid.lower = Point(parse_value<double>(parts[1], "eval grid corner"), parse_value<double>(parts[2], "eval grid corner"));
    grid.upper = Point(parse_value<double>(parts[3], "eval grid corner"), parse_value<double>(parts[4], "eval grid corner"));
  } else if (parts.size() != 1) {
    throw UsageError("--eval-grid expects NX, NX,lo,hi or NX,xlo,ylo,xhi,yhi");
  }
  if (grid.per_axis < 2) throw UsageError("--eval-grid needs at least 2 points per axis");
  grid.validate();
  return grid;
}

DdWeightParams dd_params(const Options& o) {
  DdWeightParams dd;
  if (o.exponent) dd.t = *o.exponent;
  if (o.eps_reg) dd.eps_reg = *o.eps_reg;
  return dd;
}

std::optional<TestFunction> test_function(const Options& o) {
  if (!o.fn) return std::nullopt;
  return TestFunction::parse(*o.fn);
}

// Node set from --grid / --halton / --nodes; generated sets are sampled from --fn.
NodeSet load_nodes(const Options& o, const std::optional<TestFunction>& fn) {
  if (o.nodes_path) return load_csv(*o.nodes_path);
  if (!fn) throw UsageError("--fn is required with --grid or --halton");
  if (o.grid) return sample(*fn, regular_grid(*o.grid));
  if (o.halton) return sample(*fn, halton_points(*o.halton));
  throw UsageError("one of --grid, --halton or --nodes is required");
}

MlsConfig mls_config(const Options& o, const NodeSet& nodes) {
  MlsConfig cfg;
  cfg.basis = BasisSpec(nodes.dim(), *o.degree);
  cfg.weights = WeightConfig::with_defaults(parse_kernel(o.kernel),
                                            o.shape_eps ? *o.shape_eps : default_shape_eps(nodes.size()));
  if (o.trunc) cfg.weights.truncation = *o.trunc;
  cfg.mode = parse_mode(o.mode);
  cfg.dd = dd_params(o);
  cfg.validate();
  return cfg;
}

std::string point_text(const Point& p) {
  return p.dim() == 2 ? "(" + fmt(p.x()) + ", " + fmt(p.y()) + ")" : "(" + fmt(p.x()) + ")";
}

std::string cmd_approximate(const Options& o) {
  const auto fn = test_function(o);
  const NodeSet nodes = load_nodes(o, fn);
  const MlsConfig cfg = mls_config(o, nodes);
  const Approximant approx(nodes, cfg, o.delta);
  const std::vector<Point> queries = parse_eval_grid(o.eval_grid, nodes.dim()).points();
  const bool comparable = fn && nodes.dim() == 2;
  const ErrorField field = evaluate_error_field(approx, queries, comparable ? &*fn : nullptr, {0, o.auto_degree});
  for (std::size_t q = 0; q < queries.size(); ++q) {
    if (field.status[q] != SolveStatus::Ok) {
      const SolveStatus s = field.status[q];
      const ErrorCode code = s == SolveStatus::InsufficientNodes ? ErrorCode::InsufficientNodes
                             : s == SolveStatus::RankDeficient   ? ErrorCode::RankDeficient
                                                                 : ErrorCode::NonFiniteInput;
      throw Error(code, "query " + std::to_string(q) + " at " + point_text(queries[q]) + ": " +
                            std::string(to_string(s)));
    }
  }
  std::ostringstream text;
  field.write_csv(text);
  return text.str();
}

std::string cmd_indicators(const Options& o) {
  const auto fn = test_function(o);
  const NodeSet nodes = load_nodes(o, fn);
  const double delta = o.delta ? *o.delta : default_delta(nodes.size());
  const SmoothnessField field = compute_indicators(nodes, delta);
  std::string text = nodes.dim() == 2 ? "i,x,y,f,Ni,I\n" : "i,x,f,Ni,I\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Point& p = nodes.point(i);
    text += std::to_string(i) + ',' + fmt(p.x()) + ',';
    if (nodes.dim() == 2) text += fmt(p.y()) + ',';
    text += fmt(nodes.value(i)) + ',' + std::to_string(field.neighbor_counts()[i]) + ',' +
            fmt(field.indicator(i)) + '\n';
  }
  return text;
}

std::string cmd_convergence(const Options& o) {
  if (!o.fn) throw UsageError("--fn is required");
  StudyConfig cfg;
  cfg.levels = parse_levels(o.levels);
  cfg.source = parse_source(o.source);
  cfg.fn = TestFunction::parse(*o.fn);
  cfg.degree = *o.degree;
  cfg.kernel = parse_kernel(o.kernel);
  cfg.mode = parse_mode(o.mode);
  cfg.dd = dd_params(o);
  cfg.truncation = o.trunc;
  cfg.shape_eps = o.shape_eps;
  cfg.delta = o.delta;
  cfg.eval = parse_eval_grid(o.eval_grid, 2);
  cfg.auto_degree = o.auto_degree;
  const ConvergenceTable table = run_convergence_study(cfg);
  if (o.json) return table.to_json() + "\n";
  std::ostringstream text;
  table.write_csv(text);
  return text.str();
}

std::string cmd_oscillation(const Options& o) {
  if (!o.fn) throw UsageError("--fn is required");
  const TestFunction fn = TestFunction::parse(*o.fn);
  const NodeSet nodes = load_nodes(o, fn);
  if (nodes.dim() != 2) throw UsageError("oscillation diagnostics need planar nodes");
  const MlsConfig cfg = mls_config(o, nodes);
  OscillationOptions opts;
  opts.eval = parse_eval_grid(o.eval_grid, 2);
  opts.delta = o.delta;
  const OscillationReport r = oscillation_report(cfg, fn, nodes, opts);
  if (o.json) {
    return "{\"max_overshoot\": " + fmt(r.max_overshoot) + ", \"band_width\": " + fmt(r.band_width) +
           ", \"interior_median\": " + fmt(r.interior_median) + ", \"band_points\": " +
           std::to_string(r.band_points) + "}\n";
  }
  return "max_overshoot,band_width,interior_median,band_points\n" + fmt(r.max_overshoot) + ',' +
         fmt(r.band_width) + ',' + fmt(r.interior_median) + ',' + std::to_string(r.band_points) + '\n';
}

void add_node_source(CLI::App* sub, Options& o) {
  auto* g = sub->add_option("--grid", o.grid, "regular grid level L, (2^L+1)^2 nodes");
  auto* h = sub->add_option("--halton", o.halton, "first N Halton points");
  auto* n = sub->add_option("--nodes", o.nodes_path, "CSV with header x,y,f or x,f");
  g->excludes(h)->excludes(n);
  h->excludes(n);
}

void add_model(CLI::App* sub, Options& o, bool degree_required) {
  auto* d = sub->add_option("--degree", o.degree, "polynomial degree")->check(CLI::NonNegativeNumber);
  if (degree_required) d->required();
  sub->add_option("--kernel", o.kernel, "G, IMQ, M0, M2, M4, W0, W2 or W4")->capture_default_str();
  sub->add_option("--mode", o.mode, "linear or dd")->capture_default_str();
  sub->add_option("--exponent", o.exponent, "exponent t of the data-dependent weight");
  sub->add_option("--eps-reg", o.eps_reg, "regularisation of the data-dependent weight");
  sub->add_option("--shape-eps", o.shape_eps, "kernel shape parameter");
  sub->add_option("--trunc", o.trunc, "truncation threshold for global kernels");
  sub->add_option("--eval-grid", o.eval_grid, "NX[,lo,hi | ,xlo,ylo,xhi,yhi]");
  sub->add_flag("--auto-degree", o.auto_degree, "lower the degree where the fit is singular");
}

void write_output(const Options& o, const std::string& text, std::ostream& out) {
  if (!o.out) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(*o.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot write " + *o.out);
  file << text;
  if (!file) throw Error(ErrorCode::IoError, "write failed for " + *o.out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Moving least squares and data-dependent MLS approximation", "ddmls"};
  app.require_subcommand(1);

  auto* approximate = app.add_subcommand("approximate", "approximate on an evaluation grid, write the error field");
  add_node_source(approximate, o);
  approximate->add_option("--fn", o.fn, "franke, glevin, zcircle, pfranke[:c]");
  approximate->add_option("--delta", o.delta, "indicator radius");
  add_model(approximate, o, true);
  approximate->add_option("--out", o.out, "output path (default stdout)");

  auto* indicators = app.add_subcommand("indicators", "smoothness indicator per node");
  add_node_source(indicators, o);
  indicators->add_option("--fn", o.fn, "franke, glevin, zcircle, pfranke[:c]");
  indicators->add_option("--delta", o.delta, "indicator radius");
  indicators->add_option("--out", o.out, "output path (default stdout)");

  auto* convergence = app.add_subcommand("convergence", "errors and rates over refinement levels");
  convergence->add_option("--levels", o.levels, "A..B")->required();
  convergence->add_option("--source", o.source, "grid or halton")->capture_default_str();
  convergence->add_option("--fn", o.fn, "franke, glevin, zcircle, pfranke[:c]")->required();
  convergence->add_option("--delta", o.delta, "indicator radius for every level");
  add_model(convergence, o, true);
  convergence->add_option("--out", o.out, "output path (default stdout)");
  convergence->add_flag("--json", o.json, "JSON array instead of CSV");

  auto* oscillation = app.add_subcommand("oscillation", "overshoot and error band near the discontinuity");
  add_node_source(oscillation, o);
  oscillation->add_option("--fn", o.fn, "franke, glevin, zcircle, pfranke[:c]")->required();
  oscillation->add_option("--delta", o.delta, "indicator radius");
  add_model(oscillation, o, true);
  oscillation->add_option("--out", o.out, "output path (default stdout)");
  oscillation->add_flag("--json", o.json, "JSON object instead of CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::string text;
    if (approximate->parsed()) {
      text = cmd_approximate(o);
    } else if (indicators->parsed()) {
      text = cmd_indicators(o);
    } else if (convergence->parsed()) {
      text = cmd_convergence(o);
    } else {
      text = cmd_oscillation(o);
    }
    write_output(o, text, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace ddmls
