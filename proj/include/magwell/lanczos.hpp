#pragma once

#include <functional>

#include <Eigen/Core>

namespace magwell {

/// y = A x for a symmetric operator A.
using SymmetricOperator = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)>;

struct LanczosResult {
  double eigenvalue = 0.0;
  Eigen::VectorXd vector;
  int iterations = 0;       // operator applications
  double residual = 0.0;    // ||A v - theta v|| for the returned unit vector
  bool converged = false;
};

struct LanczosOptions {
  double tol = 1e-12;     // relative change of the Ritz value and residual bound
  int max_iter = 2000;    // total operator applications
  int max_basis = 60;     // restart with the current Ritz vector beyond this
};

/// Largest eigenpair of a symmetric operator by Lanczos with full
/// reorthogonalization and explicit restarts. Deterministic for a given start.
LanczosResult lanczos_largest(const SymmetricOperator& op, const Eigen::VectorXd& start,
                              const LanczosOptions& options = {});

}  // namespace magwell
