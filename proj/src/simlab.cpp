#include "cme/simlab.hpp"

#include "cme/random.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

namespace cme {

namespace {

constexpr std::array kScenarioNames{std::pair{Scenario::ConsA, std::string_view("ConsA")},
                                    std::pair{Scenario::ConsB, std::string_view("ConsB")},
                                    std::pair{Scenario::ConsC, std::string_view("ConsC")},
                                    std::pair{Scenario::McmdSame, std::string_view("McmdSame")},
                                    std::pair{Scenario::McmdDiff, std::string_view("McmdDiff")},
                                    std::pair{Scenario::HscicAdd, std::string_view("HscicAdd")},
                                    std::pair{Scenario::HscicMult, std::string_view("HscicMult")}};

bool uses_identity_mean(Scenario s) { return s == Scenario::ConsC || s == Scenario::McmdDiff; }

void require_gaussian(const Kernel& k) {
  if (k.family() != KernelFamily::Gaussian) {
    throw std::invalid_argument("closed-form embedding oracles require a Gaussian kernel");
  }
}

void require_additive(Scenario s) {
  if (!has_additive_gaussian_noise(s)) {
    throw UnsupportedScenarioError("scenario " + std::string(to_string(s)) +
                                   " has no closed-form conditional embedding");
  }
}

// One draw of X given Z = z; consumes exactly one normal variate.
double sample_x_given_z(Scenario s, double noise_scale, double z, NormalStream& rng) {
  const double e = noise_scale * rng.normal();
  if (s == Scenario::HscicMult) return mean_function(z) * e;
  return conditional_mean(s, z) + e;
}

}  // namespace

std::string_view to_string(Scenario s) {
  for (const auto& [value, name] : kScenarioNames) {
    if (value == s) return name;
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  const auto lower = [](std::string_view v) {
    std::string out(v);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
  };
  const std::string wanted = lower(name);
  for (const auto& [value, n] : kScenarioNames) {
    if (lower(n) == wanted) return value;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

double default_noise_scale(Scenario s) { return s == Scenario::ConsB ? 3.0 : 0.3; }

bool is_hscic(Scenario s) { return s == Scenario::HscicAdd || s == Scenario::HscicMult; }

bool has_additive_gaussian_noise(Scenario s) { return s != Scenario::HscicMult; }

SimulationSpec SimulationSpec::make(Scenario scenario, Eigen::Index n, std::uint64_t seed,
                                    double dep_strength) {
  return {scenario, n, seed, dep_strength, default_noise_scale(scenario)};
}

void SimulationSpec::validate() const {
  if (n < 1) throw std::invalid_argument("simulation: n must be at least 1");
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw std::invalid_argument("simulation: noise_scale must be finite and non-negative");
  }
  if (!std::isfinite(dep_strength)) throw std::invalid_argument("simulation: dep_strength must be finite");
}

double mean_function(double z) { return std::exp(-0.5 * z * z) * std::sin(2.0 * z); }

double conditional_mean(Scenario s, double z) {
  require_additive(s);
  return uses_identity_mean(s) ? z : mean_function(z);
}

TriVariateSample generate(const SimulationSpec& spec) {
  spec.validate();
  const bool second = spec.scenario == Scenario::McmdSame || spec.scenario == Scenario::McmdDiff;
  NormalStream rng(second ? derive_seed(spec.seed, kSecondSampleStream) : spec.seed);

  RowMatrix z(spec.n, 1);
  RowMatrix x(spec.n, 1);
  RowMatrix y(is_hscic(spec.scenario) ? spec.n : 0, 1);
  for (Eigen::Index i = 0; i < spec.n; ++i) {
    const double zi = rng.normal();
    const double xi = sample_x_given_z(spec.scenario, spec.noise_scale, zi, rng);
    z(i, 0) = zi;
    x(i, 0) = xi;
    if (spec.scenario == Scenario::HscicAdd) {
      const double e = spec.noise_scale * rng.normal();
      y(i, 0) = spec.dep_strength == 0.0 ? e : mean_function(zi) + e + spec.dep_strength * xi;
    } else if (spec.scenario == Scenario::HscicMult) {
      const double e = spec.noise_scale * rng.normal();
      y(i, 0) = mean_function(zi) * e + spec.dep_strength * xi;
    }
  }
  TriVariateSample out{PointSet(std::move(z)), PointSet(std::move(x)), std::nullopt};
  if (is_hscic(spec.scenario)) out.y = PointSet(std::move(y));
  return out;
}

double true_embedding(Scenario s, double noise_scale, double z, double x, const Kernel& k_x) {
  require_gaussian(k_x);
  const double c = conditional_mean(s, z);
  const double sigma = k_x.bandwidth();
  const double spread = 1.0 + sigma * noise_scale * noise_scale;
  const double d = x - c;
  return std::exp(-sigma * d * d / (2.0 * spread)) / std::sqrt(spread);
}

double true_embedding_sq_norm(Scenario s, double noise_scale, double /*z*/, const Kernel& k_x) {
  require_gaussian(k_x);
  require_additive(s);
  return 1.0 / std::sqrt(1.0 + 2.0 * k_x.bandwidth() * noise_scale * noise_scale);
}

MonteCarloEstimate true_embedding_monte_carlo(Scenario s, double noise_scale, double z, double x,
                                              const Kernel& k_x, std::int64_t draws,
                                              std::uint64_t seed) {
  if (draws < 2) throw std::invalid_argument("monte carlo: need at least two draws");
  NormalStream rng(seed);
  const std::array<double, 1> xq{x};
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t i = 0; i < draws; ++i) {
    const std::array<double, 1> xs{sample_x_given_z(s, noise_scale, z, rng)};
    const double v = k_x(xs, xq);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(draws);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

double eta_oracle(const SimulationSpec& spec, const Kernel& k_x, int nodes) {
  spec.validate();
  require_gaussian(k_x);
  require_additive(spec.scenario);
  const QuadratureRule rule = gauss_hermite_normal(nodes);
  double eta = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    eta += rule.weights[i] *
           (1.0 - true_embedding_sq_norm(spec.scenario, spec.noise_scale, rule.nodes[i], k_x));
  }
  return std::clamp(eta, 0.0, 1.0);
}

MonteCarloEstimate eta_monte_carlo(const SimulationSpec& spec, const Kernel& k_x,
                                   std::int64_t draws, std::uint64_t seed) {
  spec.validate();
  if (draws < 2) throw std::invalid_argument("monte carlo: need at least two draws");
  NormalStream rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t i = 0; i < draws; ++i) {
    const double z = rng.normal();
    const std::array<double, 1> a{sample_x_given_z(spec.scenario, spec.noise_scale, z, rng)};
    const std::array<double, 1> b{sample_x_given_z(spec.scenario, spec.noise_scale, z, rng)};
    const double v = k_x(a, a) - k_x(a, b);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(draws);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

QuadratureRule gauss_hermite_normal(int nodes) {
  if (nodes < 1) throw std::invalid_argument("gauss_hermite_normal: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int k = 1; k < nodes; ++k) {
    jacobi(k, k - 1) = std::sqrt(static_cast<double>(k));
    jacobi(k - 1, k) = jacobi(k, k - 1);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(nodes));
  rule.weights.resize(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    rule.nodes[static_cast<std::size_t>(i)] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights[static_cast<std::size_t>(i)] = v0 * v0;
  }
  return rule;
}

}  // namespace cme
