#include "cme/measures.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace cme {
namespace {

using testing::normal_points;
using testing::scalars;

struct Pair {
  CmeModel a;
  CmeModel b;
};

Pair random_pair(std::uint64_t seed, Eigen::Index d_z, Eigen::Index d_x) {
  NormalStream rng(seed);
  const Kernel k_z = Kernel::gaussian(0.8), k_x = Kernel::laplacian(0.6);
  const Eigen::Index n1 = 12, n2 = 17;
  CmeModel a = fit(normal_points(rng, n1, d_z), normal_points(rng, n1, d_x), k_z, k_x, 0.02);
  CmeModel b = fit(normal_points(rng, n2, d_z), normal_points(rng, n2, d_x), k_z, k_x, 0.05);
  return {std::move(a), std::move(b)};
}

HscicData random_hscic(std::uint64_t seed, Eigen::Index n) {
  NormalStream rng(seed);
  PointSet z = normal_points(rng, n);
  PointSet x = normal_points(rng, n, 2);
  PointSet y = normal_points(rng, n);
  return {z, x, y, Kernel::gaussian(0.5), Kernel::laplacian(1.5), Kernel::gaussian(1.0), 0.03};
}

TEST(Mcmd, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Pair p = random_pair(seed, 1 + seed % 2, 1 + seed % 3);
    NormalStream rng(seed + 100);
    const PointSet z = normal_points(rng, 3, p.a.z_train().dimension());
    for (Eigen::Index q = 0; q < 3; ++q) {
      EXPECT_NEAR(mcmd_squared(p.a, p.b, z.point(q)), mcmd_squared_bruteforce(p.a, p.b, z.point(q)), 1e-12);
    }
  }
}

TEST(Mcmd, SymmetricNonNegativeAndZeroOnItself) {
  const Pair p = random_pair(7, 1, 1);
  for (const double zq : {-2.0, -0.3, 0.0, 1.1}) {
    const double z[] = {zq};
    const double d = mcmd_squared(p.a, p.b, z);
    EXPECT_GE(d, -kNegativeTolerance);
    EXPECT_NEAR(d, mcmd_squared(p.b, p.a, z), 1e-13);
    EXPECT_NEAR(mcmd_squared(p.a, p.a, z), 0.0, 1e-13);
  }
}

TEST(Mcmd, RejectsIncompatibleModels) {
  NormalStream rng(8);
  const CmeModel a = fit(normal_points(rng, 5), normal_points(rng, 5), Kernel::gaussian(1.0), Kernel::gaussian(1.0), 0.1);
  const CmeModel b = fit(normal_points(rng, 5), normal_points(rng, 5), Kernel::gaussian(1.0), Kernel::gaussian(2.0), 0.1);
  const CmeModel c = fit(normal_points(rng, 5), normal_points(rng, 5, 2), Kernel::gaussian(1.0), Kernel::gaussian(1.0), 0.1);
  const double z[] = {0.0};
  EXPECT_THROW(mcmd_squared(a, b, z), std::invalid_argument);
  EXPECT_THROW(mcmd_squared(a, c, z), DimensionError);
  EXPECT_THROW(mcmd_squared_bruteforce(a, c, z), DimensionError);
}

TEST(Mcmd, CurveIsSquareRootOfPointwiseValues) {
  const Pair p = random_pair(9, 1, 1);
  const PointSet grid = scalars({-1.0, 0.0, 0.5, 2.0});
  const DiscrepancyCurve c = mcmd_curve(p.a, p.b, grid);
  EXPECT_EQ(c.kind, DiscrepancyKind::Mcmd);
  ASSERT_EQ(c.values.size(), 4);
  for (Eigen::Index g = 0; g < 4; ++g) {
    EXPECT_NEAR(c.values(g), std::sqrt(std::max(0.0, mcmd_squared(p.a, p.b, grid.point(g)))), 1e-12);
  }
  EXPECT_EQ(c.metadata.at("n_1"), 12.0);
  EXPECT_EQ(c.metadata.at("lambda_2"), 0.05);
}

TEST(Witness, DifferenceOfEmbeddings) {
  const Pair p = random_pair(10, 1, 1);
  const PointSet zg = scalars({-0.5, 0.7});
  const PointSet xg = scalars({-1.0, 0.0, 1.0});
  const WitnessField w = witness(p.a, p.b, zg, xg);
  ASSERT_EQ(w.values.rows(), 2);
  ASSERT_EQ(w.values.cols(), 3);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      EXPECT_NEAR(w.values(i, j),
                  evaluate_embedding(p.a, zg.point(i), xg.point(j)) -
                      evaluate_embedding(p.b, zg.point(i), xg.point(j)),
                  1e-13);
    }
  }
  EXPECT_EQ(witness(p.a, p.a, zg, xg).values.cwiseAbs().maxCoeff(), 0.0);
}

TEST(CheckedSqrt, ClampsRoundingAndRejectsRealNegatives) {
  EXPECT_EQ(checked_sqrt(4.0), 2.0);
  EXPECT_EQ(checked_sqrt(-1e-12), 0.0);
  EXPECT_THROW(checked_sqrt(-1e-6), ConsistencyError);
  EXPECT_THROW(checked_sqrt(std::nan("")), ConsistencyError);
}

TEST(Hscic, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const HscicData data = random_hscic(seed, 6 + static_cast<Eigen::Index>(seed));
    const HscicModel model(data);
    for (const double zq : {-1.0, 0.2, 1.5}) {
      const double z[] = {zq};
      EXPECT_NEAR(hscic_squared(model, z), hscic_squared_bruteforce(model, z), 1e-12);
      EXPECT_NEAR(hscic_squared(data, z), hscic_squared(model, z), 1e-15);
      EXPECT_NEAR(hscic_squared_bruteforce(data, z), hscic_squared_bruteforce(model, z), 1e-15);
    }
  }
}

TEST(Hscic, SingleSampleClosedForm) {
  const double lambda = 0.2;
  const HscicData data(scalars({0.4}), scalars({1.0}), scalars({-2.0}), Kernel::gaussian(1.0),
                       Kernel::gaussian(1.0), Kernel::gaussian(1.0), lambda);
  const double beta = 1.0 / (1.0 + lambda);
  const double z[] = {0.4};
  EXPECT_NEAR(hscic_squared(data, z), beta * beta * (1.0 - beta) * (1.0 - beta), 1e-15);
}

// With a constant Y the cross-covariance part collapses:
// HSCIC^2 = (beta' K_X beta) (1 - sum(beta))^2.
TEST(Hscic, ConstantResponse) {
  NormalStream rng(30);
  const PointSet z = normal_points(rng, 10);
  const PointSet x = normal_points(rng, 10);
  const PointSet y(RowMatrix::Constant(10, 1, 0.7));
  const HscicModel model(HscicData(z, x, y, Kernel::gaussian(0.5), Kernel::gaussian(3.0), Kernel::gaussian(1.0), 0.05));
  const double zq[] = {0.3};
  const Eigen::VectorXd beta = embedding_weights(model.x_model(), zq).beta;
  const double q = beta.dot(model.x_model().gram_x() * beta);
  const double s = beta.sum();
  EXPECT_NEAR(hscic_squared(model, zq), q * (1.0 - s) * (1.0 - s), 1e-14);
}

TEST(Hscic, SymmetricInXAndY) {
  const HscicData d = random_hscic(31, 9);
  const HscicData swapped(d.z, d.y, d.x, d.k_y, d.k_x, d.k_z, d.lambda);
  for (const double zq : {-0.5, 0.8}) {
    const double z[] = {zq};
    EXPECT_NEAR(hscic_squared(d, z), hscic_squared(swapped, z), 1e-13);
    EXPECT_GE(hscic_squared(d, z), -kNegativeTolerance);
  }
}

TEST(Hscic, RejectsBadData) {
  EXPECT_THROW(HscicData(scalars({0.0, 1.0}), scalars({0.0}), scalars({0.0, 1.0}), Kernel::gaussian(1.0),
                         Kernel::gaussian(1.0), Kernel::gaussian(1.0), 0.1),
               DimensionError);
  EXPECT_THROW(HscicData(scalars({0.0}), scalars({0.0}), scalars({0.0}), Kernel::gaussian(1.0),
                         Kernel::gaussian(1.0), Kernel::gaussian(1.0), 0.0),
               std::invalid_argument);
}

TEST(Hscic, CurveMetadata) {
  const HscicModel model(random_hscic(32, 8));
  const DiscrepancyCurve c = hscic_curve(model, scalars({-1.0, 1.0}));
  EXPECT_EQ(c.kind, DiscrepancyKind::Hscic);
  EXPECT_EQ(c.metadata.at("n"), 8.0);
  EXPECT_EQ(c.metadata.at("bandwidth_y"), 1.5);
  const double z[] = {1.0};
  EXPECT_NEAR(c.values(1), std::sqrt(std::max(0.0, hscic_squared(model, z))), 1e-13);
}

TEST(PercentileGrid, SpansFirstToNinetyNinthPercentile) {
  std::vector<double> v(101);
  std::iota(v.begin(), v.end(), 0.0);
  std::reverse(v.begin(), v.end());
  const std::vector<double> g = percentile_grid(v, 5).column();
  const std::vector<double> expected{1.0, 25.5, 50.0, 74.5, 99.0};
  ASSERT_EQ(g.size(), 5U);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(g[i], expected[i], 1e-12);
}

TEST(PercentileGrid, EdgeCases) {
  EXPECT_EQ(percentile_grid(std::vector<double>{3.0}, 3).column(), (std::vector<double>{3.0, 3.0, 3.0}));
  EXPECT_NEAR(percentile_grid(std::vector<double>{0.0, 10.0}, 1).column()[0], 5.0, 1e-12);
  EXPECT_THROW(percentile_grid(std::vector<double>{}, 3), std::invalid_argument);
  EXPECT_THROW(percentile_grid(std::vector<double>{1.0}, 0), std::invalid_argument);
}

}  // namespace
}  // namespace cme
