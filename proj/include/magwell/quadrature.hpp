#pragma once

#include <functional>
#include <span>
#include <vector>

namespace magwell {

using Integrand = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
};

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

/// Apply a fixed rule on [a, b].
double integrate_fixed(const Integrand& f, double a, double b, const GaussLegendreRule& rule);

/// Globally adaptive Gauss-Kronrod (7/15) on a finite interval. Throws
/// NumericError carrying the achieved error when max_intervals is exhausted.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    double abs_tol, double rel_tol = 0.0,
                                    int max_intervals = 4000);

/// int_a^inf f via the map x = a + t / (1 - t).
QuadratureResult integrate_semi_infinite(const Integrand& f, double a, double abs_tol,
                                         double rel_tol = 0.0);

/// int_0^inf f(p) cos(omega p) dp for f decaying at least like 1/p.
/// Integrates between consecutive zeros of the cosine and accelerates the
/// alternating partial sums with Wynn's epsilon algorithm.
QuadratureResult integrate_cosine_transform(const Integrand& f, double omega, double abs_tol);

/// Wynn epsilon extrapolation of a sequence of partial sums; returns the
/// latest even-column estimate and an error proxy.
QuadratureResult wynn_epsilon(std::span<const double> partial_sums);

}  // namespace magwell
