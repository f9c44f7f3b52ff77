#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ddmls/geometry.hpp"
#include "ddmls/kernels.hpp"
#include "ddmls/lsq.hpp"
#include "ddmls/polybasis.hpp"
#include "ddmls/smoothness.hpp"

namespace ddmls {

enum class Mode { Linear, DataDependent };

// "linear" or "dd".
std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view name);

struct MlsConfig {
  BasisSpec basis{2, 2};
  WeightConfig weights;
  Mode mode = Mode::Linear;
  DdWeightParams dd;
  double rank_tol = 1e-12;

  // Throws InvalidArgument on any out-of-range parameter.
  void validate() const;
};

struct MlsSolution {
  double value = 0.0;                // the fitted polynomial at x0
  std::vector<double> coefficients;  // in basis order
  std::size_t active_count = 0;
};

struct ActiveNode {
  std::size_t index;
  double weight;
};

// Nodes with positive weight at x0 and their effective weights; in
// data-dependent mode each kernel weight is divided by (eps_reg + I_i)^t.
// `field` must be non-null exactly when cfg.mode is DataDependent.
std::vector<ActiveNode> gather_active(const NodeSet& nodes, const SpatialIndex& index, const MlsConfig& cfg,
                                      const SmoothnessField* field, const Point& x0);

// Non-throwing core of solve_point; `out` is filled only on Ok.
SolveStatus try_solve_point(const NodeSet& nodes, const SpatialIndex& index, const MlsConfig& cfg,
                            const SmoothnessField* field, const Point& x0, MlsSolution& out);

// Weighted polynomial least squares about x0. Throws InsufficientNodes,
// RankDeficient or NonFiniteInput.
MlsSolution solve_point(const NodeSet& nodes, const SpatialIndex& index, const MlsConfig& cfg,
                        const SmoothnessField* field, const Point& x0);

struct EvalOptions {
  unsigned threads = 0;      // 0: hardware concurrency
  bool auto_degree = false;  // on failure retry with degree d-1, ..., 0
};

struct FieldEvaluation {
  std::vector<double> values;        // NaN where status != Ok
  std::vector<SolveStatus> status;
  std::vector<int> degree_used;      // -1 where no degree succeeded

  std::size_t failure_count() const noexcept;
  // Position of the first failed query, if any.
  std::optional<std::size_t> first_failure() const noexcept;
};

// Independent solve per query. Failures are recorded per entry and never
// abort the batch. Output order follows `queries` regardless of threading.
FieldEvaluation evaluate_field(const NodeSet& nodes, const SpatialIndex& index, const MlsConfig& cfg,
                               const SmoothnessField* field, std::span<const Point> queries,
                               const EvalOptions& options = {});

// Cell size for the index behind gather_active: the weight support radius,
// or diameter / sqrt(N) when the support is unbounded.
double index_cell_size(const NodeSet& nodes, const WeightConfig& weights);

// Nodes, index and (in data-dependent mode) indicators bundled for repeated
// evaluation.
class Approximant {
 public:
  // `delta` defaults to default_delta(N); it is ignored in linear mode.
  Approximant(NodeSet nodes, MlsConfig cfg, std::optional<double> delta = std::nullopt, unsigned threads = 0);

  const NodeSet& nodes() const noexcept { return nodes_; }
  const SpatialIndex& index() const noexcept { return index_; }
  const MlsConfig& config() const noexcept { return cfg_; }
  const SmoothnessField* field() const noexcept { return field_ ? &*field_ : nullptr; }

  MlsSolution solve(const Point& x0) const { return solve_point(nodes_, index_, cfg_, field(), x0); }

  FieldEvaluation evaluate(std::span<const Point> queries, const EvalOptions& options = {}) const {
    return evaluate_field(nodes_, index_, cfg_, field(), queries, options);
  }

 private:
  NodeSet nodes_;
  MlsConfig cfg_;
  SpatialIndex index_;
  std::optional<SmoothnessField> field_;
};

}  // namespace ddmls
