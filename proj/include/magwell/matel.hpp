#pragma once

#include <vector>

namespace magwell {

/// Dimensionless square-well matrix element W between Landau states
/// (n, L) and (N, L), after the sine in the momentum kernel is linearized.
struct WellMatrixElement {
  int n = 0;
  int N = 0;
  int L = 0;
  double xi = 0.0;
  double value = 0.0;
};

/// First order in xi:
///   L = 0:    1/3 - (2/15) xi (1 + n + N)
///   |L| = 1:  (2/15) xi sqrt((n+1)(N+1))
///   |L| >= 2: 0
/// Throws DomainError when xi is outside [0, 0.2) or an index is negative.
double well_element_firstorder(int n, int N, int L, double xi);

/// Quadrature of the linearized kernel
///   W = (1/R^3) int_0^R rho I_{nL}(rho^2/2) I_{NL}(rho^2/2) sqrt(R^2 - rho^2) drho
/// with rho = R sin(theta), so the integrand is smooth on [0, pi/2].
/// Gauss-Legendre orders are doubled until successive estimates agree to
/// 1e-13; NumericError otherwise. Requires n, N <= 64.
double well_element_quadrature(int n, int N, int L, double xi);

struct MatelRow {
  int n = 0;
  int N = 0;
  int L = 0;
  double xi = 0.0;
  double firstorder = 0.0;
  double quadrature = 0.0;
  double delta() const { return quadrature - firstorder; }
};

/// Both routes for every (n, N) with n, N <= n_max, in row-major order.
std::vector<MatelRow> matel_table(int n_max, int L, double xi);

}  // namespace magwell
