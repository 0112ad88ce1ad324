#include "cme/bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace cme {
namespace {

BoundInputs unit(std::int64_t n, double lambda) {
  BoundInputs in;
  in.n = n;
  in.lambda = lambda;
  return in;
}

// Second transcription of the rate bound, expanded term by term in long double.
long double rate_expanded(long double n, long double lambda, long double bx, long double bz,
                          long double f, long double delta) {
  const long double l = std::log(4.0L / delta);
  const long double s = std::sqrt(lambda);
  const long double c = (2.0L * l) / (3.0L * n * lambda) + (2.0L * l) / (3.0L * n * lambda) *
                                                               std::sqrt(1.0L + 18.0L * n / l);
  const long double q = bz * bz * f * f * lambda + 2.0L * bz * f * bx * lambda + bx * bx * lambda +
                        bx * bx * bz * bz + 2.0L * bx * bx * bz * s + bx * bx * lambda;
  return lambda * f * f + c * q;
}

TEST(Bounds, StabilityHandValue) {
  const StabilityBound b = stability_bound(unit(100, 0.01));
  EXPECT_EQ(b.beta_stability, 242.0);
  EXPECT_EQ(b.kappa2, 121.0);
  EXPECT_DOUBLE_EQ(stability_bound(unit(1000, 0.01)).beta_stability, 24.2);
}

TEST(Bounds, GeneralizationGapFormula) {
  BoundInputs in = unit(500, 0.04);
  in.b_x = 1.5;
  in.kappa1 = 0.8;
  in.delta = 0.1;
  const StabilityBound b = stability_bound(in);
  const double kappa2 = 1.5 * (1.0 + 0.8 / 0.2) * (1.0 + 0.8 / 0.2);
  const double beta = 2.0 * 0.64 * kappa2 / (0.04 * 500.0);
  EXPECT_DOUBLE_EQ(b.kappa2, kappa2);
  EXPECT_DOUBLE_EQ(b.beta_stability, beta);
  EXPECT_DOUBLE_EQ(b.generalization_gap,
                   2.0 * beta + (2000.0 * beta + kappa2) * std::sqrt(std::log(10.0) / 1000.0));
}

TEST(Bounds, StabilityDecaysAsOneOverN) {
  const double b1 = stability_bound(unit(1000, 0.1)).beta_stability;
  const double b2 = stability_bound(unit(4000, 0.1)).beta_stability;
  EXPECT_NEAR(b1 / b2, 4.0, 1e-12);
}

TEST(Bounds, RateBoundMatchesExpandedForm) {
  for (const std::int64_t n : {1, 10, 1000, 1000000}) {
    for (const double lambda : {1e-4, 0.1, 2.0}) {
      BoundInputs in = unit(n, lambda);
      in.b_x = 0.7;
      in.norm_f = 2.5;
      in.delta = 0.01;
      const double expected = static_cast<double>(
          rate_expanded(static_cast<long double>(n), lambda, 0.7L, 1.3L, 2.5L, 0.01L));
      EXPECT_NEAR(rate_bound(in, 1.3), expected, 1e-12 * expected) << "n=" << n << " lambda=" << lambda;
    }
  }
}

TEST(Bounds, RateBoundDecreasesAlongDecayingSchedule) {
  double previous = INFINITY;
  for (double n = 1e2; n <= 1e8; n *= 10.0) {
    const double r = rate_bound(unit(static_cast<std::int64_t>(n), std::pow(n, -0.25)), 1.0);
    EXPECT_LT(r, previous);
    previous = r;
  }
}

TEST(Bounds, ZeroConstantsAreAllowed) {
  BoundInputs in = unit(100, 0.01);
  in.norm_f = 0.0;
  in.b_x = 0.0;
  EXPECT_EQ(rate_bound(in, 0.0), 0.0);
  EXPECT_EQ(stability_bound(in).beta_stability, 0.0);
}

TEST(Bounds, RejectsInvalidInputs) {
  const auto bad = [](auto mutate) {
    BoundInputs in;
    mutate(in);
    return in;
  };
  EXPECT_THROW(stability_bound(bad([](BoundInputs& b) { b.n = 0; })), std::invalid_argument);
  EXPECT_THROW(stability_bound(bad([](BoundInputs& b) { b.lambda = 0.0; })), std::invalid_argument);
  EXPECT_THROW(stability_bound(bad([](BoundInputs& b) { b.delta = 0.0; })), std::invalid_argument);
  EXPECT_THROW(stability_bound(bad([](BoundInputs& b) { b.delta = 1.0; })), std::invalid_argument);
  EXPECT_THROW(stability_bound(bad([](BoundInputs& b) { b.b_x = -1.0; })), std::invalid_argument);
  EXPECT_THROW(stability_bound(bad([](BoundInputs& b) { b.kappa1 = std::nan(""); })), std::invalid_argument);
  EXPECT_THROW(rate_bound(bad([](BoundInputs& b) { b.norm_f = INFINITY; }), 1.0), std::invalid_argument);
  EXPECT_THROW(rate_bound(BoundInputs{}, -0.5), std::invalid_argument);
}

}  // namespace
}  // namespace cme
