#include "magwell/specfun.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

#include "magwell/errors.hpp"

namespace magwell {

double laguerre_fn(int n, int l, double x) {
  if (n < 0) throw DomainError("laguerre_fn: n must be >= 0, got " + std::to_string(n));
  if (!(x >= 0.0)) throw DomainError("laguerre_fn: x must be >= 0");
  const double alpha = std::abs(l);

  // Normalized polynomials p_k = sqrt(k!/(k+alpha)!) L_k^alpha(x) without the
  // 1/sqrt(alpha!) factor, which goes into the log-prefactor below:
  //   p_{k+1} = [(2k+1+alpha-x) p_k - sqrt(k(k+alpha)) p_{k-1}] / sqrt((k+1)(k+1+alpha))
  double prev = 0.0;
  double cur = 1.0;
  double log_scale = 0.0;
  for (int k = 0; k < n; ++k) {
    const double kk = k;
    const double next = ((2.0 * kk + 1.0 + alpha - x) * cur -
                         std::sqrt(kk * (kk + alpha)) * prev) /
                        std::sqrt((kk + 1.0) * (kk + 1.0 + alpha));
    prev = cur;
    cur = next;
    const double mag = std::abs(cur);
    if (mag > 1e150) {
      prev /= mag;
      cur /= mag;
      log_scale += std::log(mag);
    }
  }
  if (cur == 0.0) return 0.0;

  double log_pref = -0.5 * x - 0.5 * std::lgamma(alpha + 1.0) + log_scale;
  if (alpha > 0.0) {
    if (x == 0.0) return 0.0;
    log_pref += 0.5 * alpha * std::log(x);
  }
  return cur * std::exp(log_pref);
}

namespace {

// B_{2j} / (2j)! for j = 1..12.
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23,
};

constexpr int kMinBernoulliTerms = 4;
constexpr double kTailTolerance = 1e-16;

struct EulerMaclaurin {
  double value;
  double last_term;
  bool converged;
};

EulerMaclaurin euler_maclaurin(double s, double q, int n_terms) {
  double partial = 0.0;
  for (int k = n_terms - 1; k >= 0; --k) partial += std::pow(k + q, -s);

  const double x = n_terms + q;
  const double x_pow = std::pow(x, -s);
  double value = partial + x * x_pow / (s - 1.0) + 0.5 * x_pow;

  // Rising factorial s (s+1) ... (s+2j-2) times x^{-s-2j+1}.
  double factor = s * x_pow / x;
  double last = 0.0;
  const double scale = std::abs(value) + 1.0;
  for (int j = 1; j <= static_cast<int>(kBernoulliOverFactorial.size()); ++j) {
    const double term = kBernoulliOverFactorial[j - 1] * factor;
    value += term;
    last = std::abs(term);
    if (j >= kMinBernoulliTerms && last <= kTailTolerance * scale) {
      return {value, last, true};
    }
    // An exact zero happens for integer s <= 0, where the expansion terminates.
    if (factor == 0.0) return {value, 0.0, true};
    factor *= (s + 2.0 * j - 1.0) * (s + 2.0 * j) / (x * x);
  }
  return {value, last, false};
}

}  // namespace

double hurwitz_zeta(double s, double q) {
  if (!(q > 0.0)) throw DomainError("hurwitz_zeta: q must be > 0");
  if (s == 1.0) throw DomainError("hurwitz_zeta: pole at s = 1");

  int n_terms = std::max(10, static_cast<int>(std::ceil(std::abs(s)) +
                                              std::ceil(std::min(q, 100.0))));
  EulerMaclaurin em{};
  for (int attempt = 0; attempt < 6; ++attempt) {
    em = euler_maclaurin(s, q, n_terms);
    if (em.converged) return em.value;
    n_terms *= 2;
  }
  throw NumericError("hurwitz_zeta: Euler-Maclaurin tail did not converge", em.last_term);
}

}  // namespace magwell
