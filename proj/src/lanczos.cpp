#include "magwell/lanczos.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "magwell/errors.hpp"

namespace magwell {

LanczosResult lanczos_largest(const SymmetricOperator& op, const Eigen::VectorXd& start,
                              const LanczosOptions& options) {
  const Eigen::Index n = start.size();
  if (n == 0) throw DomainError("lanczos_largest: empty operator");
  if (start.norm() == 0.0) throw DomainError("lanczos_largest: zero start vector");

  LanczosResult result;
  Eigen::VectorXd ritz = start.normalized();
  double previous_theta = 0.0;
  bool have_previous = false;
  int applications = 0;

  while (applications < options.max_iter) {
    const int basis_cap = static_cast<int>(std::min<Eigen::Index>(options.max_basis, n));
    Eigen::MatrixXd basis(n, basis_cap);
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.col(0) = ritz;
    Eigen::VectorXd w(n);

    for (int k = 0; k < basis_cap && applications < options.max_iter; ++k) {
      op(basis.col(k), w);
      ++applications;
      const double a = basis.col(k).dot(w);
      alpha.push_back(a);
      // Full reorthogonalization, twice.
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd coeffs = basis.leftCols(k + 1).transpose() * w;
        w.noalias() -= basis.leftCols(k + 1) * coeffs;
      }
      const double b = w.norm();

      const int m = k + 1;
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
      const double theta = eig.eigenvalues()(m - 1);
      const double bound = b * std::abs(eig.eigenvectors()(m - 1, m - 1));
      const double scale = std::max(std::abs(theta), 1e-300);

      const bool settled = have_previous && std::abs(theta - previous_theta) <= options.tol * scale;
      previous_theta = theta;
      have_previous = true;
      const bool invariant = b <= 1e-14 * scale;
      if ((settled && bound <= std::sqrt(options.tol) * scale) || invariant || m == basis_cap ||
          applications >= options.max_iter) {
        ritz = (basis.leftCols(m) * eig.eigenvectors().col(m - 1)).normalized();
        if ((settled && bound <= std::sqrt(options.tol) * scale) || invariant || m == n) {
          result.converged = true;
          result.eigenvalue = theta;
          break;
        }
        result.eigenvalue = theta;
        break;  // restart from the Ritz vector
      }
      beta.push_back(b);
      basis.col(k + 1) = w / b;
    }
    if (result.converged) break;
  }

  result.vector = ritz;
  result.iterations = applications;
  Eigen::VectorXd av(n);
  op(ritz, av);
  result.eigenvalue = ritz.dot(av);
  result.residual = (av - result.eigenvalue * ritz).norm();
  return result;
}

}  // namespace magwell
