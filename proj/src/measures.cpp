#include "cme/measures.hpp"

#include <algorithm>
#include <cmath>

namespace cme {

namespace {

void check_compatible(const CmeModel& m1, const CmeModel& m2) {
  if (!(m1.k_x() == m2.k_x())) throw std::invalid_argument("mcmd: models must share the output kernel");
  if (m1.z_train().dimension() != m2.z_train().dimension()) {
    throw DimensionError("mcmd: conditioning spaces have different dimensions");
  }
  if (m1.x_train().dimension() != m2.x_train().dimension()) {
    throw DimensionError("mcmd: output spaces have different dimensions");
  }
}

double mcmd_from_weights(const CmeModel& m1, const CmeModel& m2, const Eigen::MatrixXd& cross,
                         const Eigen::VectorXd& b1, const Eigen::VectorXd& b2) {
  return b1.dot(m1.gram_x() * b1) - 2.0 * b1.dot(cross * b2) + b2.dot(m2.gram_x() * b2);
}

double hscic_from_weights(const HscicModel& model, const Eigen::VectorXd& beta) {
  const Eigen::MatrixXd& kx = model.x_model().gram_x();
  const Eigen::MatrixXd& ky = model.gram_y();
  const Eigen::VectorXd kx_beta = kx * beta;
  const Eigen::VectorXd ky_beta = ky * beta;
  const double joint = beta.dot(kx.cwiseProduct(ky) * beta);
  const double cross = beta.dot(kx_beta.cwiseProduct(ky_beta));
  const double marginals = beta.dot(kx_beta) * beta.dot(ky_beta);
  return joint - 2.0 * cross + marginals;
}

}  // namespace

double checked_sqrt(double squared) {
  if (!std::isfinite(squared)) throw ConsistencyError("squared discrepancy is not finite");
  if (squared < -kNegativeTolerance) {
    throw ConsistencyError("squared discrepancy " + std::to_string(squared) +
                           " is negative beyond rounding tolerance");
  }
  return std::sqrt(std::max(squared, 0.0));
}

double mcmd_squared(const CmeModel& m1, const CmeModel& m2, Point z) {
  check_compatible(m1, m2);
  const Eigen::VectorXd b1 = embedding_weights(m1, z).beta;
  const Eigen::VectorXd b2 = embedding_weights(m2, z).beta;
  const Eigen::MatrixXd cross = cross_gram(m1.k_x(), m1.x_train(), m2.x_train()).entries;
  return mcmd_from_weights(m1, m2, cross, b1, b2);
}

double mcmd_squared_bruteforce(const CmeModel& m1, const CmeModel& m2, Point z) {
  check_compatible(m1, m2);
  const Eigen::VectorXd b1 = embedding_weights(m1, z).beta;
  const Eigen::VectorXd b2 = embedding_weights(m2, z).beta;
  const Kernel& k = m1.k_x();
  const PointSet& x1 = m1.x_train();
  const PointSet& x2 = m2.x_train();
  double s11 = 0.0;
  double s12 = 0.0;
  double s22 = 0.0;
  for (Eigen::Index i = 0; i < x1.size(); ++i) {
    for (Eigen::Index j = 0; j < x1.size(); ++j) s11 += b1(i) * b1(j) * k(x1.point(i), x1.point(j));
    for (Eigen::Index j = 0; j < x2.size(); ++j) s12 += b1(i) * b2(j) * k(x1.point(i), x2.point(j));
  }
  for (Eigen::Index i = 0; i < x2.size(); ++i) {
    for (Eigen::Index j = 0; j < x2.size(); ++j) s22 += b2(i) * b2(j) * k(x2.point(i), x2.point(j));
  }
  return s11 - 2.0 * s12 + s22;
}

WitnessField witness(const CmeModel& m1, const CmeModel& m2, const PointSet& z_grid,
                     const PointSet& x_grid) {
  check_compatible(m1, m2);
  const Eigen::MatrixXd b1 = embedding_weight_matrix(m1, z_grid);
  const Eigen::MatrixXd b2 = embedding_weight_matrix(m2, z_grid);
  const Eigen::MatrixXd f1 = cross_gram(m1.k_x(), m1.x_train(), x_grid).entries;
  const Eigen::MatrixXd f2 = cross_gram(m2.k_x(), m2.x_train(), x_grid).entries;
  return {z_grid, x_grid, b1.transpose() * f1 - b2.transpose() * f2};
}

HscicData::HscicData(PointSet z_in, PointSet x_in, PointSet y_in, Kernel k_x_in, Kernel k_y_in,
                     Kernel k_z_in, double lambda_in)
    : z(std::move(z_in)), x(std::move(x_in)), y(std::move(y_in)), k_x(k_x_in), k_y(k_y_in),
      k_z(k_z_in), lambda(lambda_in) {
  if (z.size() != x.size() || z.size() != y.size()) {
    throw DimensionError("HscicData: z, x and y must have equal lengths");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("HscicData: lambda must be positive");
}

HscicModel::HscicModel(const HscicData& data)
    : x_model_(fit(data.z, data.x, data.k_z, data.k_x, data.lambda)), y_(data.y), k_y_(data.k_y),
      gram_y_(gram(data.k_y, data.y).entries) {}

double hscic_squared(const HscicModel& model, Point z) {
  return hscic_from_weights(model, embedding_weights(model.x_model(), z).beta);
}

double hscic_squared(const HscicData& data, Point z) { return hscic_squared(HscicModel(data), z); }

double hscic_squared_bruteforce(const HscicModel& model, Point z) {
  const Eigen::VectorXd b = embedding_weights(model.x_model(), z).beta;
  const PointSet& xs = model.x_model().x_train();
  const PointSet& ys = model.y_train();
  const Kernel& kx = model.x_model().k_x();
  const Kernel& ky = model.k_y();
  const Eigen::Index n = xs.size();

  // joint  = sum_i b_i k_x(x_i, .) (x) k_y(y_i, .)
  // indep  = sum_i sum_j b_i b_j k_x(x_i, .) (x) k_y(y_j, .)
  double jj = 0.0;
  double ji = 0.0;
  double ii = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double kx_ik = kx(xs.point(i), xs.point(k));
      jj += b(i) * b(k) * kx_ik * ky(ys.point(i), ys.point(k));
      for (Eigen::Index l = 0; l < n; ++l) {
        ji += b(i) * b(k) * b(l) * kx_ik * ky(ys.point(i), ys.point(l));
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        const double kx_ik = kx(xs.point(i), xs.point(k));
        for (Eigen::Index l = 0; l < n; ++l) {
          ii += b(i) * b(j) * b(k) * b(l) * kx_ik * ky(ys.point(j), ys.point(l));
        }
      }
    }
  }
  return jj - 2.0 * ji + ii;
}

double hscic_squared_bruteforce(const HscicData& data, Point z) {
  return hscic_squared_bruteforce(HscicModel(data), z);
}

DiscrepancyCurve mcmd_curve(const CmeModel& m1, const CmeModel& m2, const PointSet& grid) {
  check_compatible(m1, m2);
  const Eigen::MatrixXd b1 = embedding_weight_matrix(m1, grid);
  const Eigen::MatrixXd b2 = embedding_weight_matrix(m2, grid);
  const Eigen::MatrixXd cross = cross_gram(m1.k_x(), m1.x_train(), m2.x_train()).entries;
  Eigen::VectorXd values(grid.size());
  for (Eigen::Index g = 0; g < grid.size(); ++g) {
    values(g) = checked_sqrt(mcmd_from_weights(m1, m2, cross, b1.col(g), b2.col(g)));
  }
  return {grid,
          std::move(values),
          DiscrepancyKind::Mcmd,
          {{"lambda_1", m1.lambda()},
           {"lambda_2", m2.lambda()},
           {"n_1", static_cast<double>(m1.n())},
           {"n_2", static_cast<double>(m2.n())},
           {"bandwidth_x", m1.k_x().bandwidth()},
           {"bandwidth_z_1", m1.k_z().bandwidth()},
           {"bandwidth_z_2", m2.k_z().bandwidth()}}};
}

DiscrepancyCurve hscic_curve(const HscicModel& model, const PointSet& grid) {
  const Eigen::MatrixXd beta = embedding_weight_matrix(model.x_model(), grid);
  Eigen::VectorXd values(grid.size());
  for (Eigen::Index g = 0; g < grid.size(); ++g) {
    values(g) = checked_sqrt(hscic_from_weights(model, beta.col(g)));
  }
  const CmeModel& xm = model.x_model();
  return {grid,
          std::move(values),
          DiscrepancyKind::Hscic,
          {{"lambda", xm.lambda()},
           {"n", static_cast<double>(xm.n())},
           {"bandwidth_x", xm.k_x().bandwidth()},
           {"bandwidth_y", model.k_y().bandwidth()},
           {"bandwidth_z", xm.k_z().bandwidth()}}};
}

PointSet percentile_grid(std::span<const double> pooled, Eigen::Index size) {
  if (pooled.empty()) throw std::invalid_argument("percentile_grid: no samples");
  if (size < 1) throw std::invalid_argument("percentile_grid: grid size must be positive");
  std::vector<double> sorted(pooled.begin(), pooled.end());
  std::sort(sorted.begin(), sorted.end());
  const auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  const double lo = quantile(0.01);
  const double hi = quantile(0.99);
  std::vector<double> grid(static_cast<std::size_t>(size));
  for (Eigen::Index g = 0; g < size; ++g) {
    grid[static_cast<std::size_t>(g)] =
        size == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(size - 1);
  }
  return PointSet::from_scalars(grid);
}

}  // namespace cme
