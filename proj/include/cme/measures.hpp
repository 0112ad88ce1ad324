#pragma once

#include "cme/embedding.hpp"

#include <map>

namespace cme {

/// Raised when a squared discrepancy comes out more negative than rounding
/// error can explain.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Squared values in [-kNegativeTolerance, 0) are treated as zero.
inline constexpr double kNegativeTolerance = 1e-10;

/// sqrt(max(value, 0)), throwing ConsistencyError below -kNegativeTolerance.
double checked_sqrt(double squared);

// --- MCMD ------------------------------------------------------------------

/// Closed-form |mu_1(z) - mu_2(z)|^2 from the Gram matrices K_X, K_X' and
/// K_XX'. The two models may use different sample sizes and lambdas but must
/// share the output kernel.
double mcmd_squared(const CmeModel& m1, const CmeModel& m2, Point z);

/// Same quantity by explicit double sums over the expansion coefficients.
double mcmd_squared_bruteforce(const CmeModel& m1, const CmeModel& m2, Point z);

struct WitnessField {
  PointSet z_grid;
  PointSet x_grid;
  Eigen::MatrixXd values;  // values(i, j) = mu_1(z_i)(x_j) - mu_2(z_i)(x_j)
};

/// Unnormalized conditional witness function on a grid.
WitnessField witness(const CmeModel& m1, const CmeModel& m2, const PointSet& z_grid,
                     const PointSet& x_grid);

// --- HSCIC -----------------------------------------------------------------

struct HscicData {
  HscicData(PointSet z, PointSet x, PointSet y, Kernel k_x, Kernel k_y, Kernel k_z, double lambda);

  PointSet z;
  PointSet x;
  PointSet y;
  Kernel k_x;
  Kernel k_y;
  Kernel k_z;
  double lambda;
};

/// Fitted HSCIC estimator. One ridge system on Z serves the joint and both
/// marginal embeddings.
class HscicModel {
 public:
  explicit HscicModel(const HscicData& data);

  const CmeModel& x_model() const { return x_model_; }
  const PointSet& y_train() const { return y_; }
  const Kernel& k_y() const { return k_y_; }
  const Eigen::MatrixXd& gram_y() const { return gram_y_; }

 private:
  CmeModel x_model_;
  PointSet y_;
  Kernel k_y_;
  Eigen::MatrixXd gram_y_;
};

/// Closed-form |mu_XY(z) - mu_X(z) (x) mu_Y(z)|^2 in the tensor-product RKHS.
double hscic_squared(const HscicModel& model, Point z);
double hscic_squared(const HscicData& data, Point z);

/// Tensor expansion with <a (x) b, c (x) d> = k_x(a, c) k_y(b, d); O(n^4).
double hscic_squared_bruteforce(const HscicModel& model, Point z);
double hscic_squared_bruteforce(const HscicData& data, Point z);

// --- Curves ----------------------------------------------------------------

enum class DiscrepancyKind { Mcmd, Hscic };

struct DiscrepancyCurve {
  PointSet grid;
  Eigen::VectorXd values;  // square roots of the clamped squared estimates
  DiscrepancyKind kind;
  std::map<std::string, double> metadata;
};

DiscrepancyCurve mcmd_curve(const CmeModel& m1, const CmeModel& m2, const PointSet& grid);
DiscrepancyCurve hscic_curve(const HscicModel& model, const PointSet& grid);

/// Equispaced 1-D grid between the 1st and 99th percentiles of the pooled
/// samples (linear-interpolated order statistics).
PointSet percentile_grid(std::span<const double> pooled, Eigen::Index size);

}  // namespace cme
