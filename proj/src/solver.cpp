#include "cme/solver.hpp"

#include <cmath>
#include <iterator>
#include <sstream>

namespace cme {

namespace {

constexpr double kJitterLadder[] = {0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6};

void check_rhs(const RegularizedFactor& f, Eigen::Index rows) {
  if (rows != f.n()) {
    throw DimensionError("solve: right-hand side has " + std::to_string(rows) + " rows, expected " +
                         std::to_string(f.n()));
  }
}

}  // namespace

RegularizedFactor factorize(const GramMatrix& gram, double lambda) {
  if (!gram.symmetric) throw std::invalid_argument("factorize: Gram matrix must be symmetric");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("factorize: lambda must be positive and finite");
  }
  const Eigen::Index n = gram.entries.rows();
  if (n == 0 || gram.entries.cols() != n) throw DimensionError("factorize: Gram matrix must be square");

  const double base = static_cast<double>(n) * lambda;
  for (const double jitter : kJitterLadder) {
    Eigen::MatrixXd shifted = gram.entries;
    shifted.diagonal().array() += base + jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) return RegularizedFactor(std::move(llt), n, lambda, jitter);
  }
  const double last = kJitterLadder[std::size(kJitterLadder) - 1];
  std::ostringstream msg;
  msg << "factorize: matrix is not numerically PSD (Cholesky failed with jitter up to " << last
      << ")";
  throw NotPsdError(msg.str(), last);
}

Eigen::VectorXd RegularizedFactor::solve(const Eigen::VectorXd& rhs) const {
  check_rhs(*this, rhs.size());
  return llt_.solve(rhs);
}

Eigen::MatrixXd RegularizedFactor::solve_columns(const Eigen::MatrixXd& rhs) const {
  check_rhs(*this, rhs.rows());
  return llt_.solve(rhs);
}

Eigen::VectorXd solve(const RegularizedFactor& factor, const Eigen::VectorXd& rhs) {
  return factor.solve(rhs);
}

}  // namespace cme
