#include "magwell/matel.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "magwell/errors.hpp"
#include "magwell/params.hpp"
#include "magwell/quadrature.hpp"
#include "magwell/specfun.hpp"

namespace magwell {

namespace {

void check_args(int n, int N, double xi) {
  if (n < 0 || N < 0) throw DomainError("matrix element indices must be >= 0");
  if (!(xi >= 0.0) || !(xi < DimensionlessParams::kXiMax)) {
    throw DomainError("matrix element requires 0 <= xi < 0.2, got " + std::to_string(xi));
  }
}

constexpr double kQuadratureTol = 1e-13;
constexpr int kMaxIndex = 64;
constexpr int kMinOrder = 16;
constexpr int kMaxOrder = 512;

// Rules of order 16, 32, ..., 512.
const GaussLegendreRule& rule_of_order(int order) {
  static const std::vector<GaussLegendreRule> rules = [] {
    std::vector<GaussLegendreRule> r;
    for (int o = kMinOrder; o <= kMaxOrder; o *= 2) r.push_back(gauss_legendre(o));
    return r;
  }();
  int index = 0;
  for (int o = kMinOrder; o < order; o *= 2) ++index;
  return rules.at(index);
}

}  // namespace

double well_element_firstorder(int n, int N, int L, double xi) {
  check_args(n, N, xi);
  switch (std::abs(L)) {
    case 0:
      return 1.0 / 3.0 - (2.0 / 15.0) * xi * (1.0 + n + N);
    case 1:
      return (2.0 / 15.0) * xi * std::sqrt((n + 1.0) * (N + 1.0));
    default:
      return 0.0;
  }
}

double well_element_quadrature(int n, int N, int L, double xi) {
  check_args(n, N, xi);
  if (n > kMaxIndex || N > kMaxIndex) {
    throw DomainError("well_element_quadrature supports n, N <= 64");
  }
  // Symmetric in (n, N); fix the order so both give bit-identical results.
  const int lo = std::min(n, N);
  const int hi = std::max(n, N);
  const double r2_half = xi;  // R^2 / 2 in natural units
  const Integrand kernel = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double x = r2_half * s * s;
    return s * c * c * laguerre_fn(lo, L, x) * laguerre_fn(hi, L, x);
  };

  const double upper = 0.5 * std::numbers::pi;
  double previous = integrate_fixed(kernel, 0.0, upper, rule_of_order(kMinOrder));
  double change = 0.0;
  for (int order = 2 * kMinOrder; order <= kMaxOrder; order *= 2) {
    const double current = integrate_fixed(kernel, 0.0, upper, rule_of_order(order));
    change = std::abs(current - previous);
    if (change <= kQuadratureTol) return current;
    previous = current;
  }
  throw NumericError("well_element_quadrature did not converge", change);
}

std::vector<MatelRow> matel_table(int n_max, int L, double xi) {
  std::vector<MatelRow> rows;
  for (int n = 0; n <= n_max; ++n) {
    for (int N = 0; N <= n_max; ++N) {
      rows.push_back({n, N, L, xi, well_element_firstorder(n, N, L, xi),
                      well_element_quadrature(n, N, L, xi)});
    }
  }
  return rows;
}

}  // namespace magwell
