// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ddmls/cli.hpp"
#include "ddmls/datasets.hpp"
#include "ddmls/harness.hpp"
#include "ddmls/mls.hpp"
#include "ddmls/smoothness.hpp"
#include "oracles.hpp"

using namespace ddmls;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Random polynomial of total degree <= d with coefficients in [-1, 1].
struct Poly {
  int degree;
  std::vector<double> c;
  double operator()(const Point& p) const {
    double v = 0.0;
    std::size_t k = 0;
    for (int t = 0; t <= degree; ++t) {
      for (int b = 0; b <= t; ++b) v += c[k++] * std::pow(p.x(), t - b) * std::pow(p.y(), b);
    }
    return v;
  }
};

Outcome polynomial_reproduction() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> where(0.05, 0.95);
  const std::vector<NodeSet> bases{regular_grid(5), halton_points(1089)};
  double worst = 0.0;
  std::size_t failures = 0;
  std::size_t solves = 0;
  for (int d = 0; d <= 2; ++d) {
    for (int trial = 0; trial < 100; ++trial) {
      Poly p{d, std::vector<double>(basis_size(2, d))};
      for (double& c : p.c) c = coef(rng);
      std::vector<Point> queries;
      for (int q = 0; q < 8; ++q) queries.emplace_back(where(rng), where(rng));
      std::vector<double> exact;
      for (const Point& q : queries) exact.push_back(p(q));
      for (const NodeSet& base : bases) {
        std::vector<double> v(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) v[i] = p(base.point(i));
        const NodeSet nodes = base.with_values(std::move(v));
        for (KernelKind kind : kAllKernels) {
          for (Mode mode : {Mode::Linear, Mode::DataDependent}) {
            MlsConfig cfg;
            cfg.basis = BasisSpec(2, d);
            cfg.weights = WeightConfig::with_defaults(kind, default_shape_eps(nodes.size()));
            cfg.mode = mode;
            const Approximant approx(nodes, cfg);
            const FieldEvaluation r = approx.evaluate(queries);
            failures += r.failure_count();
            for (std::size_t q = 0; q < queries.size(); ++q) {
              ++solves;
              if (r.status[q] == SolveStatus::Ok) {
                worst = std::max(worst, std::abs(r.values[q] - exact[q]) / (1.0 + std::abs(exact[q])));
              }
            }
          }
        }
      }
    }
  }
  return {failures == 0 && worst <= 1e-8,
          std::to_string(solves) + " solves, max rel err " + fmt("%.3e", worst) + ", failed solves " +
              std::to_string(failures)};
}

ConvergenceTable study(int degree, Mode mode, int first = 4, int last = 7) {
  StudyConfig cfg;
  for (int l = first; l <= last; ++l) cfg.levels.push_back(l);
  cfg.degree = degree;
  cfg.mode = mode;
  return run_convergence_study(cfg);
}

bool within_factor(double v, double target, double factor) { return v <= target * factor && v >= target / factor; }

Outcome table_quadratic() {
  const ConvergenceTable lin = study(2, Mode::Linear);
  const ConvergenceTable dd = study(2, Mode::DataDependent);
  const bool ok = within_factor(lin.rows[3].mae, 1.7035e-5, 2.0) && std::abs(*lin.rows[2].rate_inf - 3.7728) <= 0.4 &&
                  std::abs(*lin.rows[3].rate_inf - 3.9115) <= 0.4 && within_factor(dd.rows[2].mae, 9.5542e-4, 3.0) &&
                  within_factor(dd.rows[3].mae, 5.1915e-5, 3.0);
  return {ok, "linear MAE7 " + fmt("%.4e", lin.rows[3].mae) + " r6 " + fmt("%.4f", *lin.rows[2].rate_inf) + " r7 " +
                  fmt("%.4f", *lin.rows[3].rate_inf) + "; dd MAE6 " + fmt("%.4e", dd.rows[2].mae) + " MAE7 " +
                  fmt("%.4e", dd.rows[3].mae)};
}

Outcome table_linear() {
  const double lin = *study(1, Mode::Linear, 6, 7).rows[1].rate_inf;
  const double dd = *study(1, Mode::DataDependent, 6, 7).rows[1].rate_inf;
  return {std::abs(lin - 1.9490) <= 0.3 && std::abs(dd - 2.2835) <= 0.4,
          "linear r7 " + fmt("%.4f", lin) + ", dd r7 " + fmt("%.4f", dd)};
}

Outcome table_shepard() {
  const double lin = *study(0, Mode::Linear, 6, 7).rows[1].rate_inf;
  return {std::abs(lin - 1.9485) <= 0.3, "linear r7 " + fmt("%.4f", lin)};
}

double max_indicator(const TestFunction& fn, int level) {
  const NodeSet nodes = sample(fn, regular_grid(level));
  return compute_indicators(nodes, default_delta(nodes.size())).max_indicator();
}

Outcome indicator_properties() {
  const double order = std::log2(max_indicator(TestFunction::franke(), 6) / max_indicator(TestFunction::franke(), 7));
  double smallest = 1e300;
  for (int l = 4; l <= 7; ++l) smallest = std::min(smallest, max_indicator(TestFunction::zcircle(), l));
  return {order >= 1.5 && order <= 2.5 && smallest >= 0.05,
          "P1 log2 ratio " + fmt("%.4f", order) + ", P2 min over levels of max I " + fmt("%.4f", smallest)};
}

OscillationReport oscillation(int degree, KernelKind kind, Mode mode) {
  const TestFunction fn = TestFunction::zcircle();
  const NodeSet nodes = sample(fn, regular_grid(6));
  MlsConfig cfg;
  cfg.basis = BasisSpec(2, degree);
  cfg.weights = WeightConfig::with_defaults(kind, default_shape_eps(nodes.size()));
  cfg.mode = mode;
  return oscillation_report(cfg, fn, nodes);
}

Outcome gibbs() {
  const double lin = oscillation(2, KernelKind::W2, Mode::Linear).max_overshoot;
  const double dd = oscillation(2, KernelKind::W2, Mode::DataDependent).max_overshoot;
  return {lin > 1e-2 && dd < 1e-3, "linear overshoot " + fmt("%.4e", lin) + ", dd overshoot " + fmt("%.4e", dd)};
}

Outcome smearing() {
  bool ok = true;
  std::string detail;
  for (KernelKind kind : {KernelKind::W2, KernelKind::G}) {
    for (int d : {0, 1}) {
      const double lin = oscillation(d, kind, Mode::Linear).band_width;
      const double dd = oscillation(d, kind, Mode::DataDependent).band_width;
      ok = ok && dd < lin;
      detail += std::string(kernel_name(kind)) + " d=" + std::to_string(d) + " " + fmt("%.4f", lin) + "->" +
                fmt("%.4f", dd) + "; ";
    }
  }
  return {ok, "band width linear->dd: " + detail};
}

Outcome oracles() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> ind(0.5, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int degree = trial % 3;
    const std::size_t n = 12 + static_cast<std::size_t>(u(rng) * 30);
    std::vector<Point> pts;
    std::vector<double> f;
    for (std::size_t i = 0; i < n; ++i) {
      pts.emplace_back(u(rng), u(rng));
      f.push_back(2.0 * u(rng) - 1.0);
    }
    const NodeSet nodes(pts, f, Box::unit(2));
    const int k = trial % 8;
    MlsConfig cfg;
    cfg.basis = BasisSpec(2, degree);
    cfg.weights = WeightConfig::with_defaults(kAllKernels[static_cast<std::size_t>(k)], 0.5);
    cfg.mode = trial % 2 == 0 ? Mode::Linear : Mode::DataDependent;
    std::vector<double> indicators(n);
    for (double& v : indicators) v = ind(rng);
    const SmoothnessField field(indicators, std::vector<std::size_t>(n, 1), 0.1);
    const Point x0(u(rng), u(rng));
    const SpatialIndex index(nodes, 0.5);
    const MlsSolution s =
        solve_point(nodes, index, cfg, cfg.mode == Mode::DataDependent ? &field : nullptr, x0);
    std::vector<double> w;
    for (std::size_t i = 0; i < n; ++i) {
      double wi = oracle::kernel(k, 0.5 * oracle::dist(pts[i], x0));
      if (cfg.mode == Mode::DataDependent) wi /= std::pow(1e-6 + indicators[i], 4.0);
      w.push_back(wi);
    }
    const Eigen::VectorXd ref = oracle::normal_equations(pts, f, w, x0, 2, degree);
    const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
    for (Eigen::Index c = 0; c < ref.size(); ++c) {
      worst = std::max(worst, std::abs(s.coefficients[static_cast<std::size_t>(c)] - ref(c)) / scale);
    }
  }

  std::size_t mismatches = 0;
  std::size_t queries = 0;
  for (std::size_t n = 1; n <= 200; ++n) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng));
    const NodeSet nodes(pts, std::vector<double>(n, 0.0), Box::unit(2));
    const SpatialIndex index(nodes, 0.02 + 0.3 * u(rng));
    std::vector<Point> centres(pts);
    for (int q = 0; q < 10; ++q) centres.emplace_back(1.4 * u(rng) - 0.2, 1.4 * u(rng) - 0.2);
    for (const Point& c : centres) {
      // Radii hitting node distances exactly exercise the boundary case.
      std::vector<double> radii{0.01, 0.1, 0.3, 1.5};
      radii.push_back(oracle::dist(c, pts[static_cast<std::size_t>(u(rng) * n)]));
      for (double r : radii) {
        if (!(r > 0.0)) continue;
        ++queries;
        if (ball_query(index, nodes, c, r) != oracle::ball(nodes, c, r)) ++mismatches;
      }
    }
  }
  return {worst <= 1e-9 && mismatches == 0,
          "solve vs normal equations max rel diff " + fmt("%.3e", worst) + " over 1000 instances; ball_query " +
              std::to_string(mismatches) + " mismatches in " + std::to_string(queries) + " queries"};
}

Outcome determinism() {
  const std::vector<std::string> args{"convergence", "--levels", "4..6", "--source", "halton", "--fn", "franke",
                                      "--degree", "2", "--kernel", "W2", "--mode", "dd"};
  std::ostringstream a;
  std::ostringstream b;
  std::ostringstream err;
  const int ca = run_cli(args, a, err);
  const int cb = run_cli(args, b, err);
  return {ca == 0 && cb == 0 && !a.str().empty() && a.str() == b.str(),
          std::to_string(a.str().size()) + " bytes, exit codes " + std::to_string(ca) + "/" + std::to_string(cb)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0 = no runtime bound
  };
  const std::vector<Criterion> criteria{
      {"polynomial reproduction", polynomial_reproduction, 120.0},
      {"quadratic MLS golden table (grid, Franke, W2)", table_quadratic, 300.0},
      {"linear MLS rates", table_linear, 0.0},
      {"Shepard rates", table_shepard, 0.0},
      {"indicator order and persistence", indicator_properties, 0.0},
      {"Gibbs suppression on ZCircle", gibbs, 0.0},
      {"smearing reduction on ZCircle", smearing, 0.0},
      {"oracle equivalence", oracles, 0.0},
      {"CLI determinism", determinism, 0.0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_s > 0.0 && secs > criteria[i].budget_s) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", criteria[i].budget_s) + " s budget";
    }
    std::printf("%s %zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
