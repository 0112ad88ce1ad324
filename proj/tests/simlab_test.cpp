#include "cme/simlab.hpp"

#include "cme/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace cme {
namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

TEST(NormalStream, DeterministicAndInUnitInterval) {
  NormalStream a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double ua = a.uniform();
    EXPECT_EQ(ua, b.uniform());
    EXPECT_GT(ua, 0.0);
    EXPECT_LT(ua, 1.0);
    const double na = a.normal();
    EXPECT_EQ(na, b.normal());
    differs |= na != c.normal();
  }
  EXPECT_TRUE(differs);
}

TEST(NormalStream, FirstVariatesFollowBoxMuller) {
  std::mt19937_64 engine(7);
  const double u1 = (static_cast<double>(engine() >> 11) + 0.5) * 0x1p-53;
  const double u2 = (static_cast<double>(engine() >> 11) + 0.5) * 0x1p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  NormalStream s(7);
  EXPECT_DOUBLE_EQ(s.normal(), r * std::cos(t));
  EXPECT_DOUBLE_EQ(s.normal(), r * std::sin(t));
}

TEST(NormalStream, Moments) {
  NormalStream s(9);
  const int n = 200000;
  double sum = 0.0, sq = 0.0, quart = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = s.normal();
    sum += v;
    sq += v * v;
    quart += v * v * v * v;
  }
  EXPECT_NEAR(sum / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(sq / n, 1.0, 5.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(quart / n, 3.0, 5.0 * std::sqrt(96.0 / n));
}

TEST(DeriveSeed, DistinctAcrossStreamsAndSeeds) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (std::uint64_t stream = 0; stream < 4; ++stream) seen.insert(derive_seed(seed, stream));
  }
  EXPECT_EQ(seen.size(), 200U);
  EXPECT_EQ(derive_seed(5, 2), derive_seed(5, 2));
}

TEST(Scenario, NamesRoundTrip) {
  for (const Scenario s : {Scenario::ConsA, Scenario::ConsB, Scenario::ConsC, Scenario::McmdSame,
                           Scenario::McmdDiff, Scenario::HscicAdd, Scenario::HscicMult}) {
    EXPECT_EQ(parse_scenario(to_string(s)), s);
  }
  EXPECT_EQ(parse_scenario("consa"), Scenario::ConsA);
  EXPECT_EQ(parse_scenario("HSCICMULT"), Scenario::HscicMult);
  EXPECT_THROW(parse_scenario("ConsD"), std::invalid_argument);
  EXPECT_EQ(default_noise_scale(Scenario::ConsB), 3.0);
  EXPECT_EQ(default_noise_scale(Scenario::ConsA), 0.3);
}

TEST(Generate, DeterministicPerSeed) {
  const SimulationSpec spec = SimulationSpec::make(Scenario::HscicAdd, 200, 3, 0.2);
  const TriVariateSample a = generate(spec);
  const TriVariateSample b = generate(spec);
  EXPECT_EQ(a.z.matrix(), b.z.matrix());
  EXPECT_EQ(a.x.matrix(), b.x.matrix());
  ASSERT_TRUE(a.y && b.y);
  EXPECT_EQ(a.y->matrix(), b.y->matrix());
  SimulationSpec other = spec;
  other.seed = 4;
  EXPECT_NE(generate(other).z.matrix(), a.z.matrix());
  EXPECT_FALSE(generate(SimulationSpec::make(Scenario::ConsA, 5, 0)).y.has_value());
}

TEST(Generate, SmallerSampleIsPrefixOfLarger) {
  for (const Scenario s : {Scenario::ConsA, Scenario::McmdDiff, Scenario::HscicMult}) {
    const TriVariateSample big = generate(SimulationSpec::make(s, 100, 11, 0.4));
    const TriVariateSample small = generate(SimulationSpec::make(s, 30, 11, 0.4));
    EXPECT_EQ(big.z.head(30).matrix(), small.z.matrix()) << to_string(s);
    EXPECT_EQ(big.x.head(30).matrix(), small.x.matrix()) << to_string(s);
  }
}

TEST(Generate, SecondSamplesShareConditioningDraws) {
  const TriVariateSample base = generate(SimulationSpec::make(Scenario::ConsA, 50, 1));
  const TriVariateSample same = generate(SimulationSpec::make(Scenario::McmdSame, 50, 1));
  const TriVariateSample diff = generate(SimulationSpec::make(Scenario::McmdDiff, 50, 1));
  EXPECT_NE(base.z.matrix(), same.z.matrix());
  EXPECT_EQ(same.z.matrix(), diff.z.matrix());
}

TEST(Generate, ConsAMoments) {
  const Eigen::Index n = 100000;
  const TriVariateSample s = generate(SimulationSpec::make(Scenario::ConsA, n, 5));
  const std::vector<double> z = s.z.column();
  const std::vector<double> x = s.x.column();
  std::vector<double> resid(z.size()), z2(z.size()), r2(z.size()), rz(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    resid[i] = x[i] - mean_function(z[i]);
    z2[i] = z[i] * z[i];
    r2[i] = resid[i] * resid[i];
    rz[i] = resid[i] * z[i];
  }
  const double se = 1.0 / std::sqrt(static_cast<double>(n));
  EXPECT_NEAR(mean(z), 0.0, 5.0 * se);
  EXPECT_NEAR(mean(z2), 1.0, 5.0 * std::sqrt(2.0) * se);
  EXPECT_NEAR(mean(resid), 0.0, 5.0 * 0.3 * se);
  EXPECT_NEAR(mean(r2), 0.09, 5.0 * 0.09 * std::sqrt(2.0) * se);
  EXPECT_NEAR(mean(rz), 0.0, 5.0 * 0.3 * se);
}

TEST(Generate, NoiselessIdentityScenario) {
  SimulationSpec spec = SimulationSpec::make(Scenario::ConsC, 20, 2);
  spec.noise_scale = 0.0;
  const TriVariateSample s = generate(spec);
  EXPECT_EQ(s.x.matrix(), s.z.matrix());
}

TEST(Generate, IndependentHscicResponseIgnoresX) {
  const TriVariateSample ind = generate(SimulationSpec::make(Scenario::HscicAdd, 40, 6, 0.0));
  const TriVariateSample dep = generate(SimulationSpec::make(Scenario::HscicAdd, 40, 6, 0.2));
  EXPECT_EQ(ind.x.matrix(), dep.x.matrix());
  for (Eigen::Index i = 0; i < 40; ++i) {
    const double z = ind.z.matrix()(i, 0);
    const double noise = ind.y->matrix()(i, 0);
    EXPECT_NEAR(dep.y->matrix()(i, 0), mean_function(z) + noise + 0.2 * dep.x.matrix()(i, 0), 1e-15);
  }
}

TEST(Generate, RejectsInvalidSimulationSpec) {
  EXPECT_THROW(generate(SimulationSpec::make(Scenario::ConsA, 0, 0)), std::invalid_argument);
  SimulationSpec spec = SimulationSpec::make(Scenario::ConsA, 5, 0);
  spec.noise_scale = -1.0;
  EXPECT_THROW(generate(spec), std::invalid_argument);
}

TEST(Oracles, GaussHermiteIntegratesNormalMoments) {
  const QuadratureRule r = gauss_hermite_normal(128);
  double m0 = 0.0, m2 = 0.0, m4 = 0.0, m6 = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double t = r.nodes[i];
    m0 += r.weights[i];
    m2 += r.weights[i] * t * t;
    m4 += r.weights[i] * t * t * t * t;
    m6 += r.weights[i] * std::pow(t, 6);
  }
  EXPECT_NEAR(m0, 1.0, 1e-12);
  EXPECT_NEAR(m2, 1.0, 1e-11);
  EXPECT_NEAR(m4, 3.0, 1e-10);
  EXPECT_NEAR(m6, 15.0, 1e-9);
}

TEST(Oracles, EtaClosedFormForConstantNoise) {
  const Kernel k = Kernel::gaussian(0.1);
  const double eta = eta_oracle(SimulationSpec::make(Scenario::ConsA, 1, 0), k);
  EXPECT_NEAR(eta, 1.0 - 1.0 / std::sqrt(1.0 + 2.0 * 0.1 * 0.09), 1e-12);
  EXPECT_GT(eta_oracle(SimulationSpec::make(Scenario::ConsB, 1, 0), k), eta);
  SimulationSpec noiseless = SimulationSpec::make(Scenario::ConsC, 1, 0);
  noiseless.noise_scale = 0.0;
  EXPECT_EQ(eta_oracle(noiseless, k), 0.0);
}

TEST(Oracles, EtaMatchesMonteCarlo) {
  const Kernel k = Kernel::gaussian(0.5);
  const SimulationSpec spec = SimulationSpec::make(Scenario::ConsB, 1, 0);
  const MonteCarloEstimate mc = eta_monte_carlo(spec, k, 400000, 77);
  EXPECT_NEAR(eta_oracle(spec, k), mc.mean, 4.0 * mc.std_error);
}

TEST(Oracles, TrueEmbeddingMatchesMonteCarlo) {
  const Kernel k = Kernel::gaussian(0.3);
  for (const Scenario s : {Scenario::ConsA, Scenario::ConsC, Scenario::HscicAdd}) {
    const MonteCarloEstimate mc = true_embedding_monte_carlo(s, 0.5, 0.4, 0.1, k, 200000, 5);
    EXPECT_NEAR(true_embedding(s, 0.5, 0.4, 0.1, k), mc.mean, 4.0 * mc.std_error) << to_string(s);
  }
}

TEST(Oracles, TrueEmbeddingNorm) {
  // |mu(z)|^2 = integral of mu(z)(x) against the conditional law; check by quadrature in x.
  const Kernel k = Kernel::gaussian(2.0);
  const double s = 0.3, z = 0.6;
  const QuadratureRule r = gauss_hermite_normal(64);
  double sq = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    sq += r.weights[i] * true_embedding(Scenario::ConsA, s, z, mean_function(z) + s * r.nodes[i], k);
  }
  EXPECT_NEAR(true_embedding_sq_norm(Scenario::ConsA, s, z, k), sq, 1e-12);
}

TEST(Oracles, MultiplicativeNoiseHasNoClosedForm) {
  const Kernel k = Kernel::gaussian(1.0);
  EXPECT_THROW(true_embedding(Scenario::HscicMult, 0.3, 0.0, 0.0, k), UnsupportedScenarioError);
  EXPECT_THROW(eta_oracle(SimulationSpec::make(Scenario::HscicMult, 1, 0), k), UnsupportedScenarioError);
  EXPECT_THROW(true_embedding(Scenario::ConsA, 0.3, 0.0, 0.0, Kernel::laplacian(1.0)), std::invalid_argument);
}

}  // namespace
}  // namespace cme
