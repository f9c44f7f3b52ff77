#include "ddmls/mls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ddmls/parallel.hpp"

namespace ddmls {

std::string_view mode_name(Mode mode) {
  return mode == Mode::Linear ? "linear" : "dd";
}

Mode parse_mode(std::string_view name) {
  if (name == "linear") return Mode::Linear;
  if (name == "dd") return Mode::DataDependent;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + std::string(name) + "' (expected linear or dd)");
}

void MlsConfig::validate() const {
  weights.validate();
  if (mode == Mode::DataDependent) dd.validate();
  if (!(rank_tol > 0.0 && rank_tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "rank_tol must lie in (0, 1), got " + std::to_string(rank_tol));
  }
}

namespace {

void check_inputs(const NodeSet& nodes, const SpatialIndex& index, const MlsConfig& cfg,
                  const SmoothnessField* field, const Point& x0) {
  if (index.node_count() != nodes.size()) {
    throw Error(ErrorCode::InvalidArgument, "index was built for a different node set");
  }
  if (x0.dim() != nodes.dim() || cfg.basis.dim() != nodes.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "query, basis and nodes must share a dimension");
  }
  if ((cfg.mode == Mode::DataDependent) != (field != nullptr)) {
    throw Error(ErrorCode::InvalidArgument, "smoothness field must be supplied exactly in data-dependent mode");
  }
  if (field != nullptr && field->size() != nodes.size()) {
    throw Error(ErrorCode::InvalidArgument, "smoothness field does not match the node set");
  }
}

void gather_into(const NodeSet& nodes, const SpatialIndex& index, const MlsConfig& cfg,
                 const SmoothnessField* field, const Point& x0, std::vector<ActiveNode>& out) {
  out.clear();
  auto consider = [&](std::size_t i) {
    double w = weight_at_distance(cfg.weights, distance(nodes.point(i), x0));
    if (!(w > 0.0)) return;
    if (field != nullptr) w = dd_weight(w, field->indicator(i), cfg.dd);
    out.push_back({i, w});
  };
  if (const auto radius = support_radius(cfg.weights)) {
    for (std::size_t i : index.ball_query(x0, *radius)) consider(i);
  } else {
    for (std::size_t i = 0; i < nodes.size(); ++i) consider(i);
  }
}

SolveStatus solve_active(const NodeSet& nodes, const BasisSpec& basis, double rank_tol,
                         const std::vector<ActiveNode>& active, const Point& x0, MlsSolution& out) {
  const std::size_t m = basis.size();
  if (active.size() < m) return SolveStatus::InsufficientNodes;

  std::vector<double> design(active.size() * m);
  std::vector<double> rhs(active.size());
  std::vector<double> weights(active.size());
  for (std::size_t k = 0; k < active.size(); ++k) {
    eval_basis_into(basis, nodes.point(active[k].index), x0, std::span<double>(design).subspan(k * m, m));
    rhs[k] = nodes.value(active[k].index);
    weights[k] = active[k].weight;
  }
  std::vector<double> coeffs;
  const SolveStatus status = solve_weighted_lsq(design, m, rhs, weights, rank_tol, coeffs);
  if (status != SolveStatus::Ok) return status;
  out.value = coeffs[basis.constant_index()];
  out.coefficients = std::move(coeffs);
  out.active_count = active.size();
  return SolveStatus::Ok;
}

[[noreturn]] void throw_status(SolveStatus status, const Point& x0, std::size_t active, std::size_t m) {
  std::string where = "at (" + std::to_string(x0[0]);
  if (x0.dim() == 2) where += ", " + std::to_string(x0[1]);
  where += ")";
  switch (status) {
    case SolveStatus::InsufficientNodes:
      throw Error(ErrorCode::InsufficientNodes,
                  std::to_string(active) + " active nodes, need " + std::to_string(m) + " " + where);
    case SolveStatus::RankDeficient:
      throw Error(ErrorCode::RankDeficient, "weighted design matrix lost rank " + where);
    case SolveStatus::NonFiniteInput:
      throw Error(ErrorCode::NonFiniteInput, "non-finite data " + where);
    case SolveStatus::Ok: break;
  }
  throw Error(ErrorCode::InvalidArgument, "unexpected status");
}

}  // namespace

std::vector<ActiveNode> gather_active(const NodeSet& nodes, const SpatialIndex& index, const MlsConfig& cfg,
                                      const SmoothnessField* field, const Point& x0) {
  check_inputs(nodes, index, cfg, field, x0);
  std::vector<ActiveNode> out;
  if (!x0.is_finite()) return out;
  gather_into(nodes, index, cfg, field, x0, out);
  return out;
}

SolveStatus try_solve_point(const NodeSet& nodes, const SpatialIndex& index, const MlsConfig& cfg,
                            const SmoothnessField* field, const Point& x0, MlsSolution& out) {
  check_inputs(nodes, index, cfg, field, x0);
  if (!x0.is_finite()) return SolveStatus::NonFiniteInput;
  std::vector<ActiveNode> active;
  gather_into(nodes, index, cfg, field, x0, active);
  return solve_active(nodes, cfg.basis, cfg.rank_tol, active, x0, out);
}

MlsSolution solve_point(const NodeSet& nodes, const SpatialIndex& index, const MlsConfig& cfg,
                        const SmoothnessField* field, const Point& x0) {
  cfg.validate();
  check_inputs(nodes, index, cfg, field, x0);
  if (!x0.is_finite()) throw_status(SolveStatus::NonFiniteInput, x0, 0, cfg.basis.size());
  std::vector<ActiveNode> active;
  gather_into(nodes, index, cfg, field, x0, active);
  MlsSolution out;
  const SolveStatus status = solve_active(nodes, cfg.basis, cfg.rank_tol, active, x0, out);
  if (status != SolveStatus::Ok) throw_status(status, x0, active.size(), cfg.basis.size());
  return out;
}

std::size_t FieldEvaluation::failure_count() const noexcept {
  std::size_t n = 0;
  for (SolveStatus s : status) n += s != SolveStatus::Ok ? 1 : 0;
  return n;
}

std::optional<std::size_t> FieldEvaluation::first_failure() const noexcept {
  for (std::size_t i = 0; i < status.size(); ++i) {
    if (status[i] != SolveStatus::Ok) return i;
  }
  return std::nullopt;
}

FieldEvaluation evaluate_field(const NodeSet& nodes, const SpatialIndex& index, const MlsConfig& cfg,
                               const SmoothnessField* field, std::span<const Point> queries,
                               const EvalOptions& options) {
  cfg.validate();
  if (queries.empty()) throw Error(ErrorCode::InvalidArgument, "no query points");
  for (const Point& q : queries) check_inputs(nodes, index, cfg, field, q);

  // Bases for the fallback degrees, highest first.
  std::vector<BasisSpec> ladder{cfg.basis};
  if (options.auto_degree) {
    for (int d = cfg.basis.degree() - 1; d >= 0; --d) ladder.emplace_back(cfg.basis.dim(), d);
  }

  FieldEvaluation result;
  result.values.assign(queries.size(), std::numeric_limits<double>::quiet_NaN());
  result.status.assign(queries.size(), SolveStatus::Ok);
  result.degree_used.assign(queries.size(), -1);

  parallel_for(queries.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<ActiveNode> active;
    MlsSolution sol;
    for (std::size_t q = begin; q < end; ++q) {
      const Point& x0 = queries[q];
      if (!x0.is_finite()) {
        result.status[q] = SolveStatus::NonFiniteInput;
        continue;
      }
      gather_into(nodes, index, cfg, field, x0, active);
      SolveStatus status = SolveStatus::Ok;
      for (const BasisSpec& basis : ladder) {
        status = solve_active(nodes, basis, cfg.rank_tol, active, x0, sol);
        if (status == SolveStatus::Ok) {
          result.values[q] = sol.value;
          result.degree_used[q] = basis.degree();
          break;
        }
        if (status == SolveStatus::NonFiniteInput) break;
      }
      result.status[q] = status;
    }
  });
  return result;
}

double index_cell_size(const NodeSet& nodes, const WeightConfig& weights) {
  if (const auto radius = support_radius(weights)) {
    // Very wide truncated supports (IMQ) would give a single cell; cap at the
    // domain diameter so the grid stays meaningful.
    const double diameter = nodes.domain().diameter();
    return diameter > 0.0 ? std::min(*radius, diameter) : *radius;
  }
  const double diameter = nodes.domain().diameter();
  return diameter > 0.0 ? diameter / std::sqrt(static_cast<double>(nodes.size())) : 1.0;
}

Approximant::Approximant(NodeSet nodes, MlsConfig cfg, std::optional<double> delta, unsigned threads)
    : nodes_(std::move(nodes)), cfg_(std::move(cfg)), index_(nodes_, index_cell_size(nodes_, cfg_.weights)) {
  cfg_.validate();
  if (cfg_.mode == Mode::DataDependent) {
    field_ = compute_indicators(nodes_, delta ? *delta : default_delta(nodes_.size()), threads);
  }
}

}  // namespace ddmls
