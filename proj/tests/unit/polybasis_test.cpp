#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ddmls/error.hpp"
#include "ddmls/mls.hpp"
#include "ddmls/polybasis.hpp"

using namespace ddmls;

TEST(BasisSize, Examples) {
  EXPECT_EQ(basis_size(2, 2), 6u);
  EXPECT_EQ(basis_size(2, 0), 1u);
  EXPECT_EQ(basis_size(1, 3), 4u);
  for (int d = 0; d < 8; ++d) EXPECT_EQ(basis_size(2, d), static_cast<std::size_t>((d + 1) * (d + 2) / 2));
  EXPECT_THROW((void)basis_size(3, 1), Error);
}

TEST(BasisSpec, EnumeratesEachMultiIndexOnceByDegree) {
  for (int d = 0; d <= 5; ++d) {
    const BasisSpec spec(2, d);
    auto ex = std::vector<MultiIndex>(spec.exponents().begin(), spec.exponents().end());
    EXPECT_EQ(ex.size(), basis_size(2, d));
    for (std::size_t k = 1; k < ex.size(); ++k) EXPECT_LE(ex[k - 1][0] + ex[k - 1][1], ex[k][0] + ex[k][1]);
    std::sort(ex.begin(), ex.end());
    EXPECT_EQ(std::adjacent_find(ex.begin(), ex.end()), ex.end());
    EXPECT_EQ(spec.constant_index(), 0u);
  }
  EXPECT_THROW(BasisSpec(2, -1), Error);
  EXPECT_THROW(BasisSpec(0, 1), Error);
}

TEST(EvalBasis, Examples) {
  const auto at_centre = eval_basis(BasisSpec(2, 2), Point(0.3, 0.7), Point(0.3, 0.7));
  EXPECT_EQ(at_centre, (std::vector<double>{1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(eval_basis(BasisSpec(2, 1), Point(0.5, 0.25), Point(0, 0)), (std::vector<double>{1, 0.5, 0.25}));
  EXPECT_EQ(eval_basis(BasisSpec(2, 2), Point(2, 3), Point(0, 0)), (std::vector<double>{1, 2, 3, 4, 6, 9}));
  EXPECT_EQ(eval_basis(BasisSpec(1, 3), Point(2.0), Point(1.0)), (std::vector<double>{1, 1, 1, 1}));
  EXPECT_THROW((void)eval_basis(BasisSpec(2, 1), Point(0.5), Point(0, 0)), Error);
}

TEST(BasisSpec, WithOrderRejectsNonPermutation) {
  EXPECT_THROW((void)BasisSpec::with_order(2, 1, {{0, 0}, {1, 0}, {1, 0}}), Error);
  EXPECT_THROW((void)BasisSpec::with_order(2, 1, {{0, 0}, {1, 0}}), Error);
  const BasisSpec ok = BasisSpec::with_order(2, 1, {{0, 1}, {0, 0}, {1, 0}});
  EXPECT_EQ(ok.constant_index(), 1u);
}

TEST(BasisSpec, ApproximantInvariantUnderOrdering) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  std::vector<double> f;
  for (int i = 0; i < 200; ++i) {
    pts.emplace_back(u(rng), u(rng));
    f.push_back(std::sin(5 * pts.back().x()) * std::cos(3 * pts.back().y()));
  }
  const NodeSet nodes(pts, f, Box::unit(2));
  MlsConfig cfg;
  cfg.weights = WeightConfig::with_defaults(KernelKind::W2, 3.0);
  const SpatialIndex index(nodes, 1.0 / 3.0);
  std::vector<MultiIndex> order(cfg.basis.exponents().begin(), cfg.basis.exponents().end());
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    MlsConfig shuffled = cfg;
    shuffled.basis = BasisSpec::with_order(2, 2, order);
    for (int q = 0; q < 20; ++q) {
      const Point x0(0.1 + 0.8 * u(rng), 0.1 + 0.8 * u(rng));
      const double a = solve_point(nodes, index, cfg, nullptr, x0).value;
      const double b = solve_point(nodes, index, shuffled, nullptr, x0).value;
      EXPECT_NEAR(a, b, 1e-10);
    }
  }
}
