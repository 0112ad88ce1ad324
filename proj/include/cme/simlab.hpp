#pragma once

#include "cme/kernel.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace cme {

/// Synthetic scenarios. With m(z) = exp(-z^2 / 2) sin(2z), Z ~ N(0, 1) and
/// e, e' independent standard normals scaled by the noise scale s:
///   ConsA, ConsB   X = m(Z) + s e          (s defaults to 0.3 and 3.0)
///   ConsC          X = Z + s e
///   McmdSame       X' = m(Z') + s e        (Z', e drawn from a second stream)
///   McmdDiff       X' = Z' + s e           (same second stream as McmdSame)
///   HscicAdd       X = m(Z) + s e,  Y = m(Z) + s e' + d X,  or Y = s e' when d = 0
///   HscicMult      X = m(Z) s e,    Y = m(Z) s e' + d X
/// where d is the dependence strength.
enum class Scenario { ConsA, ConsB, ConsC, McmdSame, McmdDiff, HscicAdd, HscicMult };

std::string_view to_string(Scenario s);
/// Accepts the enumerator names case-insensitively ("ConsA", "consa", ...).
Scenario parse_scenario(std::string_view name);

double default_noise_scale(Scenario s);
bool is_hscic(Scenario s);
/// True when X | Z = z is N(c(z), s^2) for a known conditional mean c.
bool has_additive_gaussian_noise(Scenario s);

/// Stream index passed to derive_seed for the McmdSame/McmdDiff draws.
inline constexpr std::uint64_t kSecondSampleStream = 1;

struct SimulationSpec {
  Scenario scenario = Scenario::ConsA;
  Eigen::Index n = 1;
  std::uint64_t seed = 0;
  double dep_strength = 0.0;
  double noise_scale = 0.3;

  /// SimulationSpec with the scenario's default noise scale.
  static SimulationSpec make(Scenario scenario, Eigen::Index n, std::uint64_t seed,
                             double dep_strength = 0.0);
  void validate() const;
};

struct TriVariateSample {
  PointSet z;
  PointSet x;
  std::optional<PointSet> y;
};

class UnsupportedScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double mean_function(double z);

/// Draws are interleaved per sample (z_i, e_i[, e'_i]), so the first k
/// samples of a size-n draw equal the size-k draw with the same seed.
TriVariateSample generate(const SimulationSpec& spec);

/// E[X | Z = z] for the additive scenarios.
double conditional_mean(Scenario s, double z);

/// E[k(X, x) | Z = z] for a Gaussian k_x with bandwidth sigma and
/// X | Z = z ~ N(c(z), s^2):  exp(-sigma (x - c)^2 / (2 (1 + sigma s^2))) / sqrt(1 + sigma s^2).
double true_embedding(Scenario s, double noise_scale, double z, double x, const Kernel& k_x);

/// |E[k(X, .) | Z = z]|^2 = E[k(X, X') | Z = z] = 1 / sqrt(1 + 2 sigma s^2).
double true_embedding_sq_norm(Scenario s, double noise_scale, double z, const Kernel& k_x);

struct MonteCarloEstimate {
  double mean;
  double std_error;
};

/// Plain Monte Carlo of E[k(X, x) | Z = z] by sampling X | Z = z.
MonteCarloEstimate true_embedding_monte_carlo(Scenario s, double noise_scale, double z, double x,
                                              const Kernel& k_x, std::int64_t draws,
                                              std::uint64_t seed);

/// Irreducible loss eta = E_Z[1 - |F(Z)|^2] (normalized kernel), integrated
/// over Z ~ N(0, 1) with Gauss-Hermite quadrature.
double eta_oracle(const SimulationSpec& spec, const Kernel& k_x, int nodes = 128);

/// eta by sampling Z and two conditionally independent X, X' and averaging
/// k(X, X) - k(X, X').
MonteCarloEstimate eta_monte_carlo(const SimulationSpec& spec, const Kernel& k_x,
                                   std::int64_t draws, std::uint64_t seed);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for the standard normal density (weights sum to 1),
/// from the eigen-decomposition of the Hermite Jacobi matrix.
QuadratureRule gauss_hermite_normal(int nodes);

}  // namespace cme
