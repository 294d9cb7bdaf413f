#include "magwell/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "magwell/errors.hpp"

namespace magwell {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double integrate_fixed(const Integrand& f, double a, double b, const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod15(const Integrand& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double pair = f(mid - dx) + f(mid + dx);
    kronrod += kWgk[i] * pair;
    if (i % 2 == 1) gauss += kWg[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_intervals) {
  std::priority_queue<Segment> heap;
  Segment first = kronrod15(f, a, b);
  heap.push(first);
  double total = first.value;
  double error = first.error;
  int evaluations = 15;
  int intervals = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (intervals >= max_intervals) {
      throw NumericError("integrate_adaptive: interval budget exhausted", error);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    evaluations += 30;
    ++intervals;
    heap.push(left);
    heap.push(right);
    // Recompute from the heap contents occasionally to avoid drift in the
    // running sums; cheap compared to function evaluations.
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    if (intervals % 64 == 0) {
      auto copy = heap;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, error, evaluations};
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double a, double abs_tol,
                                         double rel_tol) {
  const Integrand mapped = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double one_minus = 1.0 - t;
    return f(a + t / one_minus) / (one_minus * one_minus);
  };
  return integrate_adaptive(mapped, 0.0, 1.0, abs_tol, rel_tol);
}

QuadratureResult wynn_epsilon(std::span<const double> partial_sums) {
  const std::size_t n = partial_sums.size();
  if (n == 0) return {};
  if (n < 3) return {partial_sums.back(), std::abs(partial_sums.back()), 0};
  // table[i][c] is epsilon_{c-1}^{(i)}; column 0 is the epsilon_{-1} = 0 seed.
  std::vector<std::vector<double>> table(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) table[i][1] = partial_sums[i];
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t i = 0; i + k <= n; ++i) {
      const double diff = table[i + 1][k - 1] - table[i][k - 1];
      const double prev = (k >= 2) ? table[i + 1][k - 2] : 0.0;
      table[i][k] = (diff == 0.0) ? prev + 1e300 : prev + 1.0 / diff;
    }
  }
  // Odd columns (1-based) carry the estimates; take the deepest two.
  std::size_t best_col = 1;
  for (std::size_t k = 1; k <= n; k += 2) {
    if (n - k + 1 >= 1 && std::isfinite(table[n - k][k]) && std::abs(table[n - k][k]) < 1e299) {
      best_col = k;
    }
  }
  const double value = table[n - best_col][best_col];
  double err = std::abs(partial_sums.back() - value);
  if (best_col >= 3) {
    err = std::abs(value - table[n - best_col + 2][best_col - 2]);
    if (n - best_col >= 1) err = std::max(err, std::abs(value - table[n - best_col - 1][best_col]));
  }
  return {value, err, 0};
}

QuadratureResult integrate_cosine_transform(const Integrand& f, double omega, double abs_tol) {
  if (omega == 0.0) return integrate_semi_infinite(f, 0.0, abs_tol);
  const double w = std::abs(omega);
  const Integrand g = [&](double p) { return f(p) * std::cos(w * p); };
  const double half_period = std::numbers::pi / w;
  const double piece_tol = abs_tol * 1e-3;

  std::vector<double> partial;
  double lo = 0.0;
  double hi = 0.5 * half_period;
  double sum = 0.0;
  int evaluations = 0;
  QuadratureResult best{};
  double previous_estimate = 0.0;
  constexpr int kMaxPieces = 120;
  for (int piece = 0; piece < kMaxPieces; ++piece) {
    const QuadratureResult r = integrate_adaptive(g, lo, hi, piece_tol);
    evaluations += r.evaluations;
    sum += r.value;
    partial.push_back(sum);
    lo = hi;
    hi += half_period;
    if (partial.size() >= 8 && partial.size() % 2 == 0) {
      // Estimates from the trailing window keep the table small.
      const std::size_t window = std::min<std::size_t>(partial.size(), 24);
      const auto est = wynn_epsilon(std::span(partial).last(window));
      const double change = std::abs(est.value - previous_estimate);
      previous_estimate = est.value;
      best = {est.value, std::max(change, est.error), evaluations};
      if (change < abs_tol && est.error < abs_tol) return best;
    }
  }
  throw NumericError("integrate_cosine_transform: extrapolation did not converge", best.error);
}

}  // namespace magwell
