#pragma once

#include "cme/kernel.hpp"
#include "cme/solver.hpp"

namespace cme {

/// Empirical conditional mean embedding fitted by vector-valued kernel ridge
/// regression of the features k_x(x_i, .) on z_i with operator-valued kernel
/// k_z(., .) * Id.
///
/// For a query z the embedding is mu(z) = sum_i beta_i(z) k_x(x_i, .), where
/// beta(z) = (K_Z + n lambda I)^{-1} k_Z(z).
class CmeModel {
 public:
  const PointSet& z_train() const { return z_; }
  const PointSet& x_train() const { return x_; }
  const Kernel& k_z() const { return k_z_; }
  const Kernel& k_x() const { return k_x_; }
  const RegularizedFactor& factor() const { return factor_; }
  double lambda() const { return factor_.lambda(); }
  Eigen::Index n() const { return z_.size(); }

  const Eigen::MatrixXd& gram_z() const { return gram_z_; }
  const Eigen::MatrixXd& gram_x() const { return gram_x_; }

 private:
  friend CmeModel fit(PointSet z, PointSet x, Kernel k_z, Kernel k_x, double lambda);
  CmeModel(PointSet z, PointSet x, Kernel k_z, Kernel k_x, Eigen::MatrixXd gram_z,
           Eigen::MatrixXd gram_x, RegularizedFactor factor)
      : z_(std::move(z)), x_(std::move(x)), k_z_(k_z), k_x_(k_x), gram_z_(std::move(gram_z)),
        gram_x_(std::move(gram_x)), factor_(std::move(factor)) {}

  PointSet z_;
  PointSet x_;
  Kernel k_z_;
  Kernel k_x_;
  Eigen::MatrixXd gram_z_;
  Eigen::MatrixXd gram_x_;
  RegularizedFactor factor_;
};

struct EmbeddingWeights {
  Eigen::VectorXd beta;
  std::vector<double> query_z;
};

/// f = sum_j coeffs_j k_x(anchor_j, .), an element of the output RKHS.
struct SpanFunction {
  SpanFunction(PointSet anchors, Eigen::VectorXd coeffs);

  PointSet anchors;
  Eigen::VectorXd coeffs;
};

CmeModel fit(PointSet z, PointSet x, Kernel k_z, Kernel k_x, double lambda);

EmbeddingWeights embedding_weights(const CmeModel& model, Point z);

/// Weights for many queries at once: column j is beta(queries_j).
Eigen::MatrixXd embedding_weight_matrix(const CmeModel& model, const PointSet& queries);

/// mu(z) evaluated at x.
double evaluate_embedding(const CmeModel& model, Point z, Point x);

/// <f, mu(z)>, the empirical conditional expectation of f(X) given Z = z.
double inner_product(const CmeModel& model, Point z, const SpanFunction& f);

/// |mu(z)|^2 = beta^T K_X beta.
double embedding_sq_norm(const CmeModel& model, Point z);

/// Mean over test pairs of |k_x(x_j, .) - mu(z_j)|^2.
double surrogate_loss(const CmeModel& model, const PointSet& z_test, const PointSet& x_test);

/// Representer coefficients A = (K_Z + n lambda I)^{-1}: the fitted function is
/// F = sum_j k_z(., z_j) u_j with u_j = sum_l A_jl k_x(x_l, .).
Eigen::MatrixXd representer_coefficients(const CmeModel& model);

/// Regularized empirical objective
///   (1/n) sum_i |k_x(x_i, .) - F(z_i)|^2 + lambda |F|_G^2
/// for F parameterized by a coefficient matrix A as in representer_coefficients.
double regularized_objective(const CmeModel& model, const Eigen::MatrixXd& coeffs);

}  // namespace cme
