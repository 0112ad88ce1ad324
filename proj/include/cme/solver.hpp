#pragma once

#include "cme/kernel.hpp"

#include <Eigen/Cholesky>

namespace cme {

class NotPsdError : public std::runtime_error {
 public:
  NotPsdError(const std::string& what, double attempted_jitter)
      : std::runtime_error(what), attempted_jitter_(attempted_jitter) {}
  double attempted_jitter() const { return attempted_jitter_; }

 private:
  double attempted_jitter_;
};

/// Cholesky factor of K + (n*lambda + jitter) I for an n x n Gram matrix K.
class RegularizedFactor {
 public:
  Eigen::Index n() const { return n_; }
  double lambda() const { return lambda_; }
  double jitter_used() const { return jitter_used_; }
  /// n * lambda + jitter_used, the total diagonal shift.
  double shift() const { return static_cast<double>(n_) * lambda_ + jitter_used_; }

  Eigen::MatrixXd chol() const { return llt_.matrixL(); }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::MatrixXd solve_columns(const Eigen::MatrixXd& rhs) const;

 private:
  friend RegularizedFactor factorize(const GramMatrix& gram, double lambda);
  RegularizedFactor(Eigen::LLT<Eigen::MatrixXd> llt, Eigen::Index n, double lambda, double jitter)
      : llt_(std::move(llt)), n_(n), lambda_(lambda), jitter_used_(jitter) {}

  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::Index n_;
  double lambda_;
  double jitter_used_;
};

/// Factorizes K + n*lambda*I. If the plain factorization fails, an absolute
/// jitter of 1e-12, 1e-11, ..., 1e-6 is added before giving up with NotPsdError.
RegularizedFactor factorize(const GramMatrix& gram, double lambda);

/// v with (K + n*lambda*I) v = rhs.
Eigen::VectorXd solve(const RegularizedFactor& factor, const Eigen::VectorXd& rhs);

}  // namespace cme
