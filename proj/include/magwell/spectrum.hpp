#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "magwell/params.hpp"

namespace magwell {

/// How the divergent Landau-level sum of the spectral equation is evaluated.
enum class SumMode {
  Truncated,        // hard cutoff at n_max
  ZetaRegularized,  // Hurwitz-zeta continuation of the full sum
};

std::string_view to_string(SumMode mode);

struct SpectralConfig {
  SumMode mode = SumMode::ZetaRegularized;
  int n_max = 0;  // Truncated only

  /// Energy bracket (eps_lo, eps_hi); default_bracket() when empty.
  std::optional<std::pair<double, double>> bracket;
  double root_tol = 1e-12;
  int max_iter = 200;

  static SpectralConfig truncated(int n_max) {
    SpectralConfig c;
    c.mode = SumMode::Truncated;
    c.n_max = n_max;
    return c;
  }
  static SpectralConfig zeta() { return {}; }

  /// Throws ConfigError for a negative cutoff, a cutoff at which the level
  /// weights turn non-positive, or a bracket that is empty or reaches the
  /// threshold.
  void validate(const DimensionlessParams& d) const;
};

/// [-1e3 max(g^2, 1), threshold - 1e-9].
std::pair<double, double> default_bracket(const DimensionlessParams& d);

/// Weight 1 - (4/5) xi (1/2 + n) of level n in the spectral sum.
double level_weight(int n, double xi);

/// S(eps) = sum_n w_n / sqrt(n + (1+s)/2 - eps), truncated or regularized:
///   S_reg = zeta(1/2, q) - (4/5) xi [zeta(-1/2, q) + (1/2 - q) zeta(1/2, q)],
/// q = (1+s)/2 - eps. Throws DomainError at or above the threshold.
double spectral_sum(double eps, const DimensionlessParams& d, const SpectralConfig& cfg);

struct SpectralRoot {
  double epsilon = 0.0;   // units of hbar*omega, below (1+s)/2
  double residual = 0.0;  // |g S(eps) - 1|
  SumMode mode = SumMode::ZetaRegularized;
  int iterations = 0;
  bool monotone = true;   // S sampled strictly increasing across the bracket
};

/// Deepest root of g S(eps) = 1 inside the bracket, by Brent's method
/// (bisection safeguarding secant/inverse-quadratic steps). An empty result
/// means no bound state in the bracket; numeric failure throws NumericError.
std::optional<SpectralRoot> solve_spectrum(const DimensionlessParams& d,
                                           const SpectralConfig& cfg);

/// Closed-form lowest level -(2 lambda^2 / 9)(1 - (2/5) xi). Spin down only.
double e_min_paper(const DimensionlessParams& d);

/// Unnormalized expansion coefficient of the L = 0 bound state,
///   [1 - (2/5) xi (1/2 + n)] / (n + (1+s)/2 + p_z^2/2 - eps).
double coefficient_profile(double eps, const DimensionlessParams& d, int n, double p_z);

}  // namespace magwell
