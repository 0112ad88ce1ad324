#pragma once

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cme {

using Point = std::span<const double>;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered, non-empty collection of d-dimensional points. Row i is point i.
class PointSet {
 public:
  explicit PointSet(RowMatrix points);

  static PointSet from_scalars(std::span<const double> values);

  Eigen::Index size() const { return points_.rows(); }
  Eigen::Index dimension() const { return points_.cols(); }

  Point point(Eigen::Index i) const {
    return {points_.data() + i * points_.cols(), static_cast<std::size_t>(points_.cols())};
  }
  const RowMatrix& matrix() const { return points_; }

  /// First coordinate of every point; convenient for the 1-D simulations.
  std::vector<double> column(Eigen::Index c = 0) const;

  PointSet head(Eigen::Index count) const;

 private:
  RowMatrix points_;
};

enum class KernelFamily { Gaussian, Laplacian };

/// Normalized translation-invariant kernel.
///
/// Gaussian:  k(a, b) = exp(-0.5 * bandwidth * |a - b|_2^2)
/// Laplacian: k(a, b) = exp(-bandwidth * |a - b|_1)
///
/// The bandwidth multiplies the distance, so for the Gaussian family it acts
/// as a precision rather than a lengthscale (bandwidth = 0.1 is a wide kernel).
class Kernel {
 public:
  Kernel(KernelFamily family, double bandwidth);

  static Kernel gaussian(double bandwidth) { return {KernelFamily::Gaussian, bandwidth}; }
  static Kernel laplacian(double bandwidth) { return {KernelFamily::Laplacian, bandwidth}; }

  KernelFamily family() const { return family_; }
  double bandwidth() const { return bandwidth_; }

  double operator()(Point a, Point b) const;

  bool operator==(const Kernel&) const = default;

 private:
  KernelFamily family_;
  double bandwidth_;
};

std::string to_string(KernelFamily family);

struct GramMatrix {
  Eigen::MatrixXd entries;
  bool symmetric = false;
};

double eval_kernel(const Kernel& kernel, Point a, Point b);

/// Square Gram matrix K_ij = k(p_i, p_j); flagged symmetric with unit diagonal.
GramMatrix gram(const Kernel& kernel, const PointSet& pts);

/// rows.size() x cols.size() matrix of k(row_i, col_j).
GramMatrix cross_gram(const Kernel& kernel, const PointSet& rows, const PointSet& cols);

/// Column vector [k(p_i, q)]_i.
Eigen::VectorXd kernel_vector(const Kernel& kernel, const PointSet& pts, Point q);

}  // namespace cme
