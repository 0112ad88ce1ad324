#include "cme/kernel.hpp"

#include <cmath>

namespace cme {

PointSet::PointSet(RowMatrix points) : points_(std::move(points)) {
  if (points_.rows() == 0) throw std::invalid_argument("PointSet: empty point list");
  if (points_.cols() == 0) throw std::invalid_argument("PointSet: dimension must be positive");
}

PointSet PointSet::from_scalars(std::span<const double> values) {
  RowMatrix m(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = values[i];
  return PointSet(std::move(m));
}

std::vector<double> PointSet::column(Eigen::Index c) const {
  std::vector<double> out(static_cast<std::size_t>(size()));
  for (Eigen::Index i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = points_(i, c);
  return out;
}

PointSet PointSet::head(Eigen::Index count) const {
  if (count < 1 || count > size()) throw std::out_of_range("PointSet::head: bad count");
  return PointSet(points_.topRows(count));
}

Kernel::Kernel(KernelFamily family, double bandwidth) : family_(family), bandwidth_(bandwidth) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw std::invalid_argument("Kernel: bandwidth must be positive and finite");
  }
}

double Kernel::operator()(Point a, Point b) const {
  if (a.size() != b.size()) {
    throw DimensionError("kernel evaluation: dimension mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
  double dist = 0.0;
  if (family_ == KernelFamily::Gaussian) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      dist += d * d;
    }
    return std::exp(-0.5 * bandwidth_ * dist);
  }
  for (std::size_t i = 0; i < a.size(); ++i) dist += std::abs(a[i] - b[i]);
  return std::exp(-bandwidth_ * dist);
}

std::string to_string(KernelFamily family) {
  return family == KernelFamily::Gaussian ? "gaussian" : "laplacian";
}

double eval_kernel(const Kernel& kernel, Point a, Point b) { return kernel(a, b); }

GramMatrix gram(const Kernel& kernel, const PointSet& pts) {
  const Eigen::Index n = pts.size();
  GramMatrix g{Eigen::MatrixXd(n, n), true};
  for (Eigen::Index i = 0; i < n; ++i) {
    g.entries(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = kernel(pts.point(i), pts.point(j));
      g.entries(i, j) = v;
      g.entries(j, i) = v;
    }
  }
  return g;
}

GramMatrix cross_gram(const Kernel& kernel, const PointSet& rows, const PointSet& cols) {
  if (rows.dimension() != cols.dimension()) {
    throw DimensionError("cross_gram: row points have dimension " +
                         std::to_string(rows.dimension()) + ", column points " +
                         std::to_string(cols.dimension()));
  }
  GramMatrix g{Eigen::MatrixXd(rows.size(), cols.size()), false};
  for (Eigen::Index j = 0; j < cols.size(); ++j) {
    for (Eigen::Index i = 0; i < rows.size(); ++i) {
      g.entries(i, j) = kernel(rows.point(i), cols.point(j));
    }
  }
  return g;
}

Eigen::VectorXd kernel_vector(const Kernel& kernel, const PointSet& pts, Point q) {
  if (static_cast<Eigen::Index>(q.size()) != pts.dimension()) {
    throw DimensionError("kernel_vector: query has dimension " + std::to_string(q.size()) +
                         ", expected " + std::to_string(pts.dimension()));
  }
  Eigen::VectorXd v(pts.size());
  for (Eigen::Index i = 0; i < pts.size(); ++i) v(i) = kernel(pts.point(i), q);
  return v;
}

}  // namespace cme
