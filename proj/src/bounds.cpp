#include "cme/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace cme {

namespace {

void require_nonneg(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("bound inputs: ") + name +
                                " must be finite and non-negative");
  }
}

}  // namespace

void BoundInputs::validate() const {
  if (n < 1) throw std::invalid_argument("bound inputs: n must be at least 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("bound inputs: lambda must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("bound inputs: delta must lie in (0, 1)");
  require_nonneg(b_x, "b_x");
  require_nonneg(kappa1, "kappa1");
  require_nonneg(norm_f, "norm_f");
}

StabilityBound stability_bound(const BoundInputs& in) {
  in.validate();
  const double n = static_cast<double>(in.n);
  const double inflation = std::pow(1.0 + in.kappa1 / std::sqrt(in.lambda), 2);
  const double kappa2 = in.b_x * inflation;
  const double beta = 2.0 * in.kappa1 * in.kappa1 * kappa2 / (in.lambda * n);
  const double gap = 2.0 * beta + (4.0 * n * beta + kappa2) * std::sqrt(std::log(1.0 / in.delta) / (2.0 * n));
  return {beta, kappa2, gap};
}

double rate_bound(const BoundInputs& in, double b_z) {
  in.validate();
  require_nonneg(b_z, "b_z");
  const double n = static_cast<double>(in.n);
  const double log_term = std::log(4.0 / in.delta);
  const double prefactor =
      2.0 * log_term / (3.0 * n * in.lambda) * (1.0 + std::sqrt(1.0 + 18.0 * n / log_term));
  const double bracket = std::pow(b_z * in.norm_f + in.b_x, 2) * in.lambda +
                         in.b_x * in.b_x * std::pow(b_z + std::sqrt(in.lambda), 2);
  return in.lambda * in.norm_f * in.norm_f + prefactor * bracket;
}

}  // namespace cme
