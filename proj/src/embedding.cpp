#include "cme/embedding.hpp"

#include <algorithm>

namespace cme {

namespace {

constexpr Eigen::Index kTestBlock = 1024;

void check_point(const char* op, const PointSet& reference, Point p) {
  if (static_cast<Eigen::Index>(p.size()) != reference.dimension()) {
    throw DimensionError(std::string(op) + ": point has dimension " + std::to_string(p.size()) +
                         ", expected " + std::to_string(reference.dimension()));
  }
}

}  // namespace

SpanFunction::SpanFunction(PointSet anchors_in, Eigen::VectorXd coeffs_in)
    : anchors(std::move(anchors_in)), coeffs(std::move(coeffs_in)) {
  if (anchors.size() != coeffs.size()) {
    throw DimensionError("SpanFunction: " + std::to_string(anchors.size()) + " anchors but " +
                         std::to_string(coeffs.size()) + " coefficients");
  }
}

CmeModel fit(PointSet z, PointSet x, Kernel k_z, Kernel k_x, double lambda) {
  if (z.size() != x.size()) {
    throw DimensionError("fit: " + std::to_string(z.size()) + " conditioning samples but " +
                         std::to_string(x.size()) + " output samples");
  }
  GramMatrix kz = gram(k_z, z);
  GramMatrix kx = gram(k_x, x);
  RegularizedFactor factor = factorize(kz, lambda);
  return CmeModel(std::move(z), std::move(x), k_z, k_x, std::move(kz.entries),
                  std::move(kx.entries), std::move(factor));
}

EmbeddingWeights embedding_weights(const CmeModel& model, Point z) {
  check_point("embedding_weights", model.z_train(), z);
  return {model.factor().solve(kernel_vector(model.k_z(), model.z_train(), z)),
          std::vector<double>(z.begin(), z.end())};
}

Eigen::MatrixXd embedding_weight_matrix(const CmeModel& model, const PointSet& queries) {
  return model.factor().solve_columns(cross_gram(model.k_z(), model.z_train(), queries).entries);
}

double evaluate_embedding(const CmeModel& model, Point z, Point x) {
  check_point("evaluate_embedding", model.x_train(), x);
  const Eigen::VectorXd beta = embedding_weights(model, z).beta;
  return beta.dot(kernel_vector(model.k_x(), model.x_train(), x));
}

double inner_product(const CmeModel& model, Point z, const SpanFunction& f) {
  const Eigen::VectorXd beta = embedding_weights(model, z).beta;
  const GramMatrix k = cross_gram(model.k_x(), f.anchors, model.x_train());
  return f.coeffs.dot(k.entries * beta);
}

double embedding_sq_norm(const CmeModel& model, Point z) {
  const Eigen::VectorXd beta = embedding_weights(model, z).beta;
  return beta.dot(model.gram_x() * beta);
}

double surrogate_loss(const CmeModel& model, const PointSet& z_test, const PointSet& x_test) {
  if (z_test.size() != x_test.size()) {
    throw DimensionError("surrogate_loss: " + std::to_string(z_test.size()) +
                         " test conditioning points but " + std::to_string(x_test.size()) +
                         " test outputs");
  }
  if (z_test.dimension() != model.z_train().dimension() ||
      x_test.dimension() != model.x_train().dimension()) {
    throw DimensionError("surrogate_loss: test set dimension does not match the training data");
  }
  double total = 0.0;
  for (Eigen::Index start = 0; start < z_test.size(); start += kTestBlock) {
    const Eigen::Index len = std::min(kTestBlock, z_test.size() - start);
    const PointSet zb(z_test.matrix().middleRows(start, len));
    const PointSet xb(x_test.matrix().middleRows(start, len));
    const Eigen::MatrixXd beta = embedding_weight_matrix(model, zb);
    const Eigen::MatrixXd kx = cross_gram(model.k_x(), model.x_train(), xb).entries;
    const Eigen::MatrixXd kx_beta = model.gram_x() * beta;
    for (Eigen::Index j = 0; j < len; ++j) {
      const double self = model.k_x()(xb.point(j), xb.point(j));
      total += self - 2.0 * beta.col(j).dot(kx.col(j)) + beta.col(j).dot(kx_beta.col(j));
    }
  }
  return total / static_cast<double>(z_test.size());
}

Eigen::MatrixXd representer_coefficients(const CmeModel& model) {
  return model.factor().solve_columns(Eigen::MatrixXd::Identity(model.n(), model.n()));
}

double regularized_objective(const CmeModel& model, const Eigen::MatrixXd& coeffs) {
  const Eigen::Index n = model.n();
  if (coeffs.rows() != n || coeffs.cols() != n) {
    throw DimensionError("regularized_objective: coefficient matrix must be n x n");
  }
  const Eigen::MatrixXd& kz = model.gram_z();
  const Eigen::MatrixXd& kx = model.gram_x();
  // Row i of R holds the K_X-expansion of k_x(x_i, .) - F(z_i).
  const Eigen::MatrixXd residual = Eigen::MatrixXd::Identity(n, n) - kz * coeffs;
  const double fit_term = (residual * kx * residual.transpose()).trace() / static_cast<double>(n);
  const double penalty = (coeffs * kx * coeffs.transpose() * kz).trace();
  return fit_term + model.lambda() * penalty;
}

}  // namespace cme
