#pragma once

#include <cstdint>

namespace cme {

/// Constants entering the generalization bounds. These are calculator inputs:
/// norm_f (the RKHS norm of the true regression function) cannot be estimated
/// from data and must be supplied.
struct BoundInputs {
  std::int64_t n = 1;
  double lambda = 1.0;
  double b_x = 1.0;     // bound on sqrt(k_x(x, x))
  double kappa1 = 1.0;  // |l(z, z)|_op <= kappa1^2
  double norm_f = 1.0;
  double delta = 0.05;

  /// Throws std::invalid_argument unless n >= 1, lambda > 0, delta in (0, 1)
  /// and the remaining constants are finite and non-negative.
  void validate() const;
};

struct StabilityBound {
  double beta_stability;
  double kappa2;
  double generalization_gap;
};

/// Uniform-stability constants of the ridge estimator:
///   beta   = 2 kappa1^2 B_X (1 + kappa1 / sqrt(lambda))^2 / (lambda n)
///   kappa2 = B_X (1 + kappa1 / sqrt(lambda))^2
///   gap    = 2 beta + (4 n beta + kappa2) sqrt(ln(1/delta) / (2 n))
StabilityBound stability_bound(const BoundInputs& in);

/// High-probability excess surrogate-loss bound in the well-specified case:
///   lambda |F|^2 + 2 ln(4/delta) / (3 n lambda) * (1 + sqrt(1 + 18 n / ln(4/delta)))
///     * ((B_Z |F| + B_X)^2 lambda + B_X^2 (B_Z + sqrt(lambda))^2)
double rate_bound(const BoundInputs& in, double b_z);

}  // namespace cme
