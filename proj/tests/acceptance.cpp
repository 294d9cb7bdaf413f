// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "magwell/boundstate.hpp"
#include "magwell/cli.hpp"
#include "magwell/matel.hpp"
#include "magwell/oracle.hpp"
#include "magwell/quadrature.hpp"
#include "magwell/specfun.hpp"
#include "magwell/spectrum.hpp"

using namespace magwell;

namespace {

constexpr double kPi = std::numbers::pi;

// Collects failed checks and a short summary for the report line.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::string& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::string notes_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<void(Check&)> body;
};

// ---------------------------------------------------------------------------

void matrix_elements(Check& c) {
  const double xis[] = {1e-3, 1e-2, 5e-2};
  double worst_abs = 0.0;
  double lo = 1e300, hi = 0.0;
  for (int L : {0, 1, -1}) {
    for (int n = 0; n <= 3; ++n) {
      for (int N = 0; N <= 3; ++N) {
        double delta[3];
        for (int k = 0; k < 3; ++k) {
          delta[k] = well_element_quadrature(n, N, L, xis[k]) -
                     well_element_firstorder(n, N, L, xis[k]);
        }
        worst_abs = std::max(worst_abs, std::abs(delta[0]));
        // Quadratic error: ratio tends to (xi_{k+1}/xi_k)^2, i.e. 100 for a decade
        // and 25 for the last step. The band is a factor of 2 either way.
        const double decade = delta[1] / delta[0];
        const double last = delta[2] / delta[1] * (100.0 / 25.0);
        for (double r : {decade, last}) {
          lo = std::min(lo, r);
          hi = std::max(hi, r);
          c.require(r >= 50.0 && r <= 200.0,
                    "ratio " + fmt(r) + " at (n,N,L)=(" + std::to_string(n) + "," +
                        std::to_string(N) + "," + std::to_string(L) + ")");
        }
      }
    }
  }
  c.require(worst_abs <= 2e-6, "max |delta| at xi=1e-3 is " + fmt(worst_abs));
  c.note("decade-normalized ratios in [" + fmt(lo) + ", " + fmt(hi) + "]");
  c.note("max |delta|(1e-3) = " + fmt(worst_abs));
}

void lowest_level_anchor(Check& c) {
  const DimensionlessParams d0{0.0, 0.3, Spin::Down};
  const double e0 = e_min_paper(d0);
  c.require(e0 == -0.02, "e_min_paper(0.3, 0) = " + fmt(e0));
  double worst = 0.0;
  for (double xi : {0.0, 0.01, 0.05, 0.1}) {
    const DimensionlessParams d{xi, 0.3, Spin::Down};
    const auto root = solve_spectrum(d, SpectralConfig::truncated(0));
    c.require(root.has_value(), "no truncated root");
    if (!root) return;
    const double g2 = d.coupling() * d.coupling();
    const double expected = -g2 * std::pow(1.0 - 0.4 * xi, 2);
    const double err = std::abs(root->epsilon - expected);
    worst = std::max(worst, err);
    c.require(err <= 1e-12, "root error " + fmt(err) + " at xi=" + fmt(xi));
    if (xi > 0.0) {
      const double ratio = e_min_paper(d) / root->epsilon;
      const double ratio_err = std::abs(ratio - 1.0 / (1.0 - 0.4 * xi));
      c.require(ratio_err <= 1e-12, "ratio error " + fmt(ratio_err) + " at xi=" + fmt(xi));
    }
  }
  c.note("max root error " + fmt(worst));
}

void regularization(Check& c) {
  const DimensionlessParams d{0.05, 0.3, Spin::Down};
  double previous = 0.0;
  std::string ladder;
  for (int n : {0, 1, 2, 4, 8, 16}) {
    const auto r = solve_spectrum(d, SpectralConfig::truncated(n));
    c.require(r.has_value(), "no truncated root at n_max=" + std::to_string(n));
    if (!r) return;
    if (n > 0) c.require(r->epsilon < previous, "not decreasing at n_max=" + std::to_string(n));
    previous = r->epsilon;
    ladder += (ladder.empty() ? "" : ", ") + fmt(r->epsilon);
  }
  c.note("truncated roots " + ladder);

  double previous_dev = 1e300;
  std::string ratios;
  for (double g : {1e-2, 1e-3, 1e-4}) {
    const DimensionlessParams w{0.0, 3.0 * g / std::sqrt(2.0), Spin::Down};
    const auto r = solve_spectrum(w, SpectralConfig::zeta());
    c.require(r.has_value(), "no zeta root at g=" + fmt(g));
    if (!r) return;
    const double ratio = r->epsilon / (-g * g);
    const double dev = std::abs(ratio - 1.0);
    c.require(dev < previous_dev, "ratio not approaching 1 at g=" + fmt(g));
    previous_dev = dev;
    ratios += (ratios.empty() ? "" : ", ") + std::to_string(ratio);
  }
  c.require(previous_dev <= 0.05, "zeta ratio off by " + fmt(previous_dev) + " at g=1e-4");
  c.note("zeta eps/(-g^2) " + ratios);
}

void special_functions(Check& c) {
  std::mt19937_64 rng(20261014);
  std::uniform_real_distribution<double> s_dist(-1.0, 2.0);
  std::uniform_real_distribution<double> q_dist(0.05, 99.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    double s = s_dist(rng);
    if (std::abs(s - 1.0) < 1e-3) s += 0.01;
    const double q = q_dist(rng);
    const double lhs = hurwitz_zeta(s, q + 1.0) - hurwitz_zeta(s, q);
    const double rel = std::abs(lhs + std::pow(q, -s)) / std::max(1.0, std::pow(q, -s));
    worst = std::max(worst, rel);
  }
  c.require(worst <= 1e-12, "recurrence error " + fmt(worst));

  // Direct sum with the midpoint-integral tail for s = 3/2.
  double direct = 0.0;
  constexpr int kTerms = 200000;
  for (int k = kTerms - 1; k >= 0; --k) direct += std::pow(k + 1.0, -1.5);
  direct += 2.0 / std::sqrt(kTerms + 0.5);
  const double e32 = std::abs(hurwitz_zeta(1.5, 1.0) - direct);
  c.require(e32 <= 1e-10, "zeta(3/2,1) off by " + fmt(e32));

  // Alternating eta series with repeated averaging for s = 1/2.
  std::vector<double> partial;
  double sum = 0.0;
  for (int k = 1; k <= 64; ++k) {
    sum += ((k % 2 == 1) ? 1.0 : -1.0) / std::sqrt(static_cast<double>(k));
    partial.push_back(sum);
  }
  for (int level = 0; level < 40; ++level) {
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) {
      partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    }
    partial.pop_back();
  }
  const double z12 = partial.back() / (1.0 - std::sqrt(2.0));
  const double e12 = std::abs(hurwitz_zeta(0.5, 1.0) - z12);
  c.require(e12 <= 1e-10, "zeta(1/2,1) off by " + fmt(e12));

  double worst_orth = 0.0;
  for (int l : {0, 1, -1, 2, -2}) {
    for (int n = 0; n <= 8; ++n) {
      for (int m = n; m <= 8; ++m) {
        const Integrand f = [=](double x) { return laguerre_fn(n, l, x) * laguerre_fn(m, l, x); };
        const double v = integrate_adaptive(f, 0.0, 150.0, 1e-12).value;
        worst_orth = std::max(worst_orth, std::abs(v - (n == m ? 1.0 : 0.0)));
      }
    }
  }
  c.require(worst_orth <= 1e-8, "orthonormality error " + fmt(worst_orth));
  c.note("recurrence " + fmt(worst) + ", zeta(3/2) " + fmt(e32) + ", zeta(1/2) " + fmt(e12) +
         ", orthonormality " + fmt(worst_orth));
}

void bound_state_fields(Check& c) {
  const DimensionlessParams d{0.05, 0.3, Spin::Down};
  const auto root = solve_spectrum(d, SpectralConfig::zeta());
  c.require(root.has_value(), "no zeta root");
  if (!root) return;
  const BoundState b = make_bound_state(root->epsilon, d);

  double worst_psi = 0.0;
  for (double rho : {0.0, 0.5, 1.5, 3.0}) {
    for (double z : {0.0, 0.7, 2.0, 5.0}) {
      const double rel = std::abs(psi_integral_check(rho, z, b) / psi_closed(rho, z, b) - 1.0);
      worst_psi = std::max(worst_psi, rel);
    }
  }
  c.require(worst_psi <= 1e-8, "psi integral check off by " + fmt(worst_psi));

  // Current definition by finite differences, Landau gauge, against the closed form.
  const auto psi = gauge_wavefunction(b, Gauge::Landau);
  const auto a = gauge_potential(Gauge::Landau);
  const Vec3 point{0.7, 0.3, 0.4};
  const double rho = std::hypot(point[0], point[1]);
  const double jp = j_phi_closed(rho, point[2], b);
  const Vec3 exact{-jp * point[1] / rho, jp * point[0] / rho, 0.0};
  std::vector<double> errors;
  for (double h : {0.2, 0.1, 0.05}) {
    const Vec3 j = probability_current_fd(psi, a, point, h);
    double e = 0.0;
    for (int k = 0; k < 3; ++k) e = std::max(e, std::abs(j[k] - exact[k]));
    errors.push_back(e);
  }
  const double r1 = errors[0] / errors[1];
  const double r2 = errors[1] / errors[2];
  c.require(r1 > 3.5 && r1 < 4.5 && r2 > 3.5 && r2 < 4.5,
            "FD current ratios " + fmt(r1) + ", " + fmt(r2));

  const CylindricalGrid grid{8.0, std::max(8.0, 6.0 / b.kappa), 64, 128};
  const auto field = current_field(b, grid);
  const double div = max_discrete_divergence(field);
  c.require(div <= 1e-10, "divergence " + fmt(div));
  const double circ = circulation(b, 1.0, 0.0);
  c.require(circ > 0.0, "circulation " + fmt(circ));

  int mid = grid.n_z / 2;
  int best = 0;
  for (int i = 0; i <= grid.n_rho; ++i) {
    if (field.j_phi[field.index(i, mid)] > field.j_phi[field.index(best, mid)]) best = i;
  }
  c.require(std::abs(grid.rho(best) - 1.0) <= grid.h_rho(), "j_phi peak at " + fmt(grid.rho(best)));
  c.note("psi check " + fmt(worst_psi) + ", FD ratios " + fmt(r1) + "/" + fmt(r2) + ", div " +
         fmt(div) + ", circulation " + fmt(circ) + ", peak rho " + fmt(grid.rho(best)));
}

void oracle_cross_validation(Check& c) {
  double previous_e = 0.0;
  double previous_gap = 0.0;
  std::string rows;
  // Walk lambda downward: gap must shrink, eigenvalue must rise.
  for (double lambda : {0.5, 0.3, 0.2}) {
    const DimensionlessParams d{0.05, lambda, Spin::Down};
    const auto root = solve_spectrum(d, SpectralConfig::zeta());
    c.require(root.has_value(), "no zeta root at lambda=" + fmt(lambda));
    if (!root) return;
    const double kappa = std::sqrt(-2.0 * root->epsilon);
    const auto grid = oracle_grid(d, kappa, 8.0);
    const auto report = lowest_eigenvalue(assemble(d, grid));
    const double e = report.eigenvalue;
    const double gap = std::abs(e - root->epsilon) / std::abs(e);
    c.require(e < 0.0, "oracle not bound at lambda=" + fmt(lambda));
    if (lambda != 0.5) {
      c.require(e > previous_e, "eigenvalue not decreasing with lambda at " + fmt(lambda));
      c.require(gap < previous_gap, "gap not shrinking at lambda=" + fmt(lambda));
    }
    previous_e = e;
    previous_gap = gap;
    rows += (rows.empty() ? "" : ", ") + ("lambda " + fmt(lambda) + ": " + fmt(e) + " vs " +
                                          fmt(root->epsilon) + " gap " + fmt(gap));
  }
  c.note(rows);

  const std::vector<CylindricalGrid> grids = {
      {8.0, 20.0, 32, 80}, {8.0, 20.0, 64, 160}, {8.0, 20.0, 128, 320}};
  const auto conv = converge({0.05, 0.0, Spin::Down}, grids);
  c.require(conv.asymptotic && conv.observed_order >= 1.5 && conv.observed_order <= 2.5,
            "observed order " + fmt(conv.observed_order));
  const double finest = conv.eigenvalues.back();
  c.require(std::abs(finest) <= 5e-3, "free lowest eigenvalue " + fmt(finest));
  c.note("order " + fmt(conv.observed_order) + ", free finest " + fmt(finest) +
         ", extrapolated " + fmt(conv.extrapolated));
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

void determinism(Check& c) {
  const std::vector<std::vector<std::string>> cases = {
      {"spectrum", "solve", "--xi", "0.05", "--lambda", "0.3"},
      {"spectrum", "scan", "--axis", "lambda", "--from", "0.1", "--to", "0.5", "--steps", "5"},
      {"state", "--grid", "64x128", "--eps", "-0.02"},
      {"matel", "--table", "3", "--xi", "0.05"}};
  for (const auto& args : cases) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    c.require(a.code == 0 && !a.out.empty(), "run failed: " + args[0]);
    c.require(a.out == b.out, "output differs: " + args[0]);
  }
  const struct {
    int expected;
    std::vector<std::string> args;
  } contract[] = {
      {cli::kSuccess, {"spectrum", "solve", "--xi", "0", "--lambda", "0.3", "--mode", "truncated",
                       "--nmax", "0"}},
      {cli::kFailure, {"spectrum", "solve", "--lambda", "0.3", "--out", "/nonexistent-dir/o.json"}},
      {cli::kConfigError, {"spectrum", "solve", "--xi", "0.3", "--lambda", "0.3"}},
      {cli::kNoBoundState, {"spectrum", "solve", "--lambda", "0"}},
  };
  for (const auto& entry : contract) {
    const int code = run_cli(entry.args).code;
    c.require(code == entry.expected,
              "exit " + std::to_string(code) + ", expected " + std::to_string(entry.expected));
  }
  c.note("4 outputs byte-identical, exit codes 0/1/2/3 observed");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "matrix-element fidelity", 5.0, matrix_elements},
      {2, "lowest-level anchor", 1.0, lowest_level_anchor},
      {3, "regularization behavior", 5.0, regularization},
      {4, "special functions", 10.0, special_functions},
      {5, "bound-state fields", 10.0, bound_state_fields},
      {6, "oracle cross-validation", 300.0, oracle_cross_validation},
      {7, "determinism and exit codes", 5.0, determinism},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.body(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.require(seconds < crit.budget_seconds,
                  "runtime " + fmt(seconds) + " s over budget " + fmt(crit.budget_seconds) + " s");
    std::printf("[%s] criterion %d: %s (%.2f s) %s\n", check.ok() ? "PASS" : "FAIL", crit.id,
                crit.title.c_str(), seconds, check.notes().c_str());
    for (const auto& f : check.failures()) std::printf("       - %s\n", f.c_str());
    if (!check.ok()) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
