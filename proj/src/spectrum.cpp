#include "magwell/spectrum.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>
#include <vector>

#include "magwell/errors.hpp"
#include "magwell/specfun.hpp"

namespace magwell {

std::string_view to_string(SumMode mode) {
  return mode == SumMode::Truncated ? "truncated" : "zeta";
}

void SpectralConfig::validate(const DimensionlessParams& d) const {
  if (mode == SumMode::Truncated) {
    if (n_max < 0) throw ConfigError("n_max must be >= 0");
    if (!(level_weight(n_max, d.xi) > 0.0)) {
      throw ConfigError("n_max = " + std::to_string(n_max) +
                        " makes level weights non-positive; need n_max < 5/(4 xi) - 1/2");
    }
  }
  if (!(root_tol > 0.0)) throw ConfigError("root_tol must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (bracket) {
    const auto [lo, hi] = *bracket;
    if (!(lo < hi)) throw ConfigError("bracket must satisfy eps_lo < eps_hi");
    if (!(hi < threshold(d.s))) {
      throw ConfigError("bracket upper end must lie strictly below the threshold (1+s)/2");
    }
  }
}

std::pair<double, double> default_bracket(const DimensionlessParams& d) {
  const double g = d.coupling();
  return {-1e3 * std::max(g * g, 1.0), threshold(d.s) - 1e-9};
}

double level_weight(int n, double xi) { return 1.0 - 0.8 * xi * (0.5 + n); }

namespace {

// Sum as a function of the distance q = (1+s)/2 - eps to the threshold.
double spectral_sum_q(double q, double xi, const SpectralConfig& cfg) {
  if (cfg.mode == SumMode::Truncated) {
    double sum = 0.0;
    for (int n = cfg.n_max; n >= 0; --n) sum += level_weight(n, xi) / std::sqrt(n + q);
    return sum;
  }
  const double z_half = hurwitz_zeta(0.5, q);
  if (xi == 0.0) return z_half;
  return z_half - 0.8 * xi * (hurwitz_zeta(-0.5, q) + (0.5 - q) * z_half);
}

constexpr int kMonotonicitySamples = 64;

struct BrentResult {
  double root;
  int iterations;
};

// Brent's method on [a, b] with f(a), f(b) of opposite sign.
template <class F>
BrentResult brent(F&& f, double a, double b, double fa, double fb, double rel_tol, int max_iter) {
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 1; iter <= max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * DBL_EPSILON * std::abs(b) + 0.01 * rel_tol * std::abs(b);
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return {b, iter};
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
  }
  throw NumericError("solve_spectrum: Brent iteration limit reached", std::abs(c - b));
}

}  // namespace

double spectral_sum(double eps, const DimensionlessParams& d, const SpectralConfig& cfg) {
  d.validate();
  cfg.validate(d);
  const double q = threshold(d.s) - eps;
  if (!(q > 0.0)) throw DomainError("spectral_sum: eps must lie below the threshold (1+s)/2");
  return spectral_sum_q(q, d.xi, cfg);
}

std::optional<SpectralRoot> solve_spectrum(const DimensionlessParams& d,
                                           const SpectralConfig& cfg) {
  d.validate();
  cfg.validate(d);
  const double g = d.coupling();
  if (!(g > 0.0)) return std::nullopt;

  const double th = threshold(d.s);
  const auto [eps_lo, eps_hi] = cfg.bracket.value_or(default_bracket(d));
  // Work in q = th - eps so small binding energies keep full relative precision.
  const double q_small = th - eps_hi;
  const double q_large = th - eps_lo;
  const auto f = [&](double q) { return g * spectral_sum_q(q, d.xi, cfg) - 1.0; };

  // Log-spaced samples from shallow (q_small) to deep (q_large). f decreases
  // in q when S increases in eps.
  std::vector<double> qs(kMonotonicitySamples);
  std::vector<double> fs(kMonotonicitySamples);
  const double log_ratio = std::log(q_large / q_small);
  for (int k = 0; k < kMonotonicitySamples; ++k) {
    qs[k] = (k == kMonotonicitySamples - 1)
                ? q_large
                : q_small * std::exp(log_ratio * k / (kMonotonicitySamples - 1));
    fs[k] = f(qs[k]);
  }
  bool monotone = true;
  for (int k = 1; k < kMonotonicitySamples; ++k) monotone = monotone && fs[k] < fs[k - 1];

  // Deepest sign change: scan from the deep end.
  for (int k = kMonotonicitySamples - 1; k >= 1; --k) {
    if (fs[k] == 0.0) {
      return SpectralRoot{th - qs[k], 0.0, cfg.mode, 0, monotone};
    }
    if ((fs[k] < 0.0) && (fs[k - 1] > 0.0)) {
      const auto r = brent(f, qs[k - 1], qs[k], fs[k - 1], fs[k], cfg.root_tol, cfg.max_iter);
      SpectralRoot root{th - r.root, std::abs(f(r.root)), cfg.mode, r.iterations, monotone};
      if (root.residual > 10.0 * cfg.root_tol) {
        throw NumericError("solve_spectrum: residual above 10 root_tol", root.residual);
      }
      return root;
    }
  }
  return std::nullopt;
}

double e_min_paper(const DimensionlessParams& d) {
  d.validate();
  if (d.s != Spin::Down) throw DomainError("e_min_paper is defined for spin down (s = -1) only");
  return 0.0 - (2.0 * d.lambda_t * d.lambda_t / 9.0) * (1.0 - 0.4 * d.xi);
}

double coefficient_profile(double eps, const DimensionlessParams& d, int n, double p_z) {
  d.validate();
  if (n < 0) throw DomainError("coefficient_profile: n must be >= 0");
  const double th = threshold(d.s);
  if (!(eps < th)) throw DomainError("coefficient_profile: eps must lie below the threshold");
  return (1.0 - 0.4 * d.xi * (0.5 + n)) / ((n + th - eps) + 0.5 * p_z * p_z);
}

}  // namespace magwell
