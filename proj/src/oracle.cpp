#include "magwell/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SparseCholesky>

#include "magwell/errors.hpp"
#include "magwell/lanczos.hpp"

namespace magwell {

namespace {

constexpr int kMinPointsPerRadius = 4;

using SparseMatrix = Eigen::SparseMatrix<double>;
using Factorization = Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>;

SparseMatrix shifted(const SparseMatrix& m, double sigma) {
  SparseMatrix identity(m.rows(), m.cols());
  identity.setIdentity();
  return m - sigma * identity;
}

// Number of eigenvalues below sigma by Sylvester's law of inertia, or -1 when
// the factorization breaks down.
int count_below(Factorization& solver, const SparseMatrix& m, double sigma) {
  solver.compute(shifted(m, sigma));
  if (solver.info() != Eigen::Success) return -1;
  const Eigen::VectorXd& diag = solver.vectorD();
  int negatives = 0;
  for (Eigen::Index k = 0; k < diag.size(); ++k) {
    if (!(diag(k) > 0.0)) ++negatives;
  }
  return negatives;
}

// Factor H - sigma with sigma below the whole spectrum, starting at
// upper - gap and widening the gap geometrically.
double shift_below_spectrum(Factorization& solver, const SparseMatrix& m, double upper,
                            double gap) {
  for (int attempt = 0; attempt < 80; ++attempt) {
    const double sigma = upper - gap;
    if (count_below(solver, m, sigma) == 0) return sigma;
    gap *= 2.0;
  }
  throw NumericError("lowest_eigenvalue: could not place a shift below the spectrum", gap);
}

Eigen::VectorXd start_vector(const DiscreteHamiltonian& h) {
  Eigen::VectorXd v(h.size());
  const auto& g = h.grid;
  for (int j = 1; j < g.n_z; ++j) {
    for (int i = 0; i < g.n_rho; ++i) {
      const double rho = g.rho(i);
      const double z = g.z(j);
      const Eigen::Index k = h.unknown(i, j);
      v(k) = h.sqrt_weight(k) * std::exp(-0.25 * rho * rho) / (1.0 + z * z);
    }
  }
  return v;
}

}  // namespace

DiscreteHamiltonian assemble(const DimensionlessParams& d, const CylindricalGrid& grid,
                             const AssembleOptions& options) {
  d.validate();
  grid.validate();
  DiscreteHamiltonian h;
  h.grid = grid;
  h.d = d;
  h.options = options;

  const bool with_well = options.well && d.lambda_t > 0.0;
  double radius = 0.0;
  double depth = 0.0;
  if (with_well) {
    const PhysicalParams well = to_physical(d, 1.0, Constants::natural());
    radius = well.well_radius;
    depth = well.well_depth;
    if (radius / grid.h_rho() < kMinPointsPerRadius || radius / grid.h_z() < kMinPointsPerRadius) {
      throw ConfigError("grid too coarse for the well: need >= 4 spacings across R = " +
                        std::to_string(radius));
    }
  }

  const int nr = h.rho_unknowns();
  const int nz = h.z_unknowns();
  const Eigen::Index n = static_cast<Eigen::Index>(nr) * nz;
  const double hr = grid.h_rho();
  const double hz = grid.h_z();

  std::vector<double> weight(nr);
  for (int i = 0; i < nr; ++i) weight[i] = (i == 0) ? hr / 8.0 : grid.rho(i);

  h.potential.resize(n);
  h.sqrt_weight.resize(n);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(n) * 5);
  const double zeeman = options.zeeman ? 0.5 * spin_value(d.s) : 0.0;

  for (int j = 1; j <= nz; ++j) {
    const double z = grid.z(j);
    for (int i = 0; i < nr; ++i) {
      const double rho = grid.rho(i);
      const Eigen::Index k = h.unknown(i, j);
      const double face_out = (i + 0.5) * hr;
      const double face_in = (i == 0) ? 0.0 : (i - 0.5) * hr;

      double v = 0.125 * rho * rho + zeeman;
      if (with_well && rho * rho + z * z < radius * radius) v -= depth;
      h.potential(k) = v;
      h.sqrt_weight(k) = std::sqrt(weight[i]);

      const double radial_diag = 0.5 * (face_out + face_in) / (weight[i] * hr * hr);
      const double axial_diag = 1.0 / (hz * hz);
      entries.emplace_back(k, k, radial_diag + axial_diag + v);
      if (i + 1 < nr) {
        const double off = -0.5 * face_out / (hr * hr * std::sqrt(weight[i] * weight[i + 1]));
        entries.emplace_back(k, h.unknown(i + 1, j), off);
        entries.emplace_back(h.unknown(i + 1, j), k, off);
      }
      if (j + 1 <= nz) {
        const double off = -0.5 / (hz * hz);
        entries.emplace_back(k, h.unknown(i, j + 1), off);
        entries.emplace_back(h.unknown(i, j + 1), k, off);
      }
    }
  }
  h.matrix.resize(n, n);
  h.matrix.setFromTriplets(entries.begin(), entries.end());
  h.matrix.makeCompressed();
  return h;
}

EigenReport lowest_eigenvalue(const DiscreteHamiltonian& h, double tol) {
  const SparseMatrix& m = h.matrix;
  const Eigen::Index n = m.rows();
  EigenReport report;

  // Ritz values of H bound the smallest eigenvalue from above.
  const SymmetricOperator negated = [&m](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.noalias() = -(m * x);
  };
  LanczosOptions coarse_options;
  coarse_options.tol = 1e-6;
  coarse_options.max_iter = 60;
  coarse_options.max_basis = 60;
  const LanczosResult coarse = lanczos_largest(negated, start_vector(h), coarse_options);
  report.iterations += coarse.iterations;
  const double upper = -coarse.eigenvalue;

  Factorization solver;
  double sigma =
      shift_below_spectrum(solver, m, upper, std::max(0.05 * std::abs(upper), 1e-2));

  LanczosOptions fine;
  fine.tol = tol;
  fine.max_iter = 2000;
  fine.max_basis = 80;
  Eigen::VectorXd guess = coarse.vector;

  // Two shift-invert passes: the second moves the shift next to the current
  // estimate so the final Ritz vector carries a small residual in H itself.
  double eigenvalue = upper;
  for (int pass = 0; pass < 2; ++pass) {
    const SymmetricOperator inverted = [&solver](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
      y = solver.solve(x);
    };
    const LanczosResult r = lanczos_largest(inverted, guess, fine);
    report.iterations += r.iterations;
    if (!r.converged || !(r.eigenvalue > 0.0)) {
      throw NumericError("lowest_eigenvalue: shift-invert Lanczos did not converge", r.residual);
    }
    eigenvalue = sigma + 1.0 / r.eigenvalue;
    guess = r.vector;
    report.shift = sigma;
    if (pass == 0) {
      const double offset = std::max(1e-3 * std::abs(eigenvalue - sigma), 1e-9);
      sigma = shift_below_spectrum(solver, m, eigenvalue, offset);
    }
  }

  Eigen::VectorXd v = guess.normalized();
  if (v.sum() < 0.0) v = -v;
  const Eigen::VectorXd hv = m * v;
  report.eigenvalue = v.dot(hv);
  report.residual = (hv - report.eigenvalue * v).norm();
  report.vector = std::move(v);
  (void)n;
  return report;
}

CylindricalField ground_state_field(const DiscreteHamiltonian& h, const EigenReport& report) {
  const CylindricalGrid& g = h.grid;
  CylindricalField field;
  field.grid = g;
  const std::size_t count = static_cast<std::size_t>(g.node_count());
  field.rho.resize(count);
  field.z.resize(count);
  field.psi.assign(count, 0.0);
  field.j_phi.assign(count, 0.0);
  field.j_rho.assign(count, 0.0);
  field.j_z.assign(count, 0.0);
  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * g.h_rho() * g.h_z());
  for (int i = 0; i <= g.n_rho; ++i) {
    for (int j = 0; j <= g.n_z; ++j) {
      const std::size_t idx = field.index(i, j);
      field.rho[idx] = g.rho(i);
      field.z[idx] = g.z(j);
      if (i < g.n_rho && j > 0 && j < g.n_z) {
        const Eigen::Index k = h.unknown(i, j);
        const double psi = scale * report.vector(k) / h.sqrt_weight(k);
        field.psi[idx] = psi;
        field.j_phi[idx] = 0.5 * g.rho(i) * psi * psi;
      }
    }
  }
  return field;
}

ConvergenceReport converge(const DimensionlessParams& d, const std::vector<CylindricalGrid>& grids,
                           const AssembleOptions& options, double tol) {
  if (grids.size() < 3) throw ConfigError("convergence study needs at least 3 grids");
  for (std::size_t k = 1; k < grids.size(); ++k) {
    const auto& a = grids[k - 1];
    const auto& b = grids[k];
    if (b.n_rho != 2 * a.n_rho || b.n_z != 2 * a.n_z || b.rho_max != a.rho_max ||
        b.z_max != a.z_max) {
      throw ConfigError("convergence grids must share the box and refine by 2");
    }
  }
  ConvergenceReport report;
  report.grids = grids;
  for (const auto& g : grids) {
    report.eigenvalues.push_back(lowest_eigenvalue(assemble(d, g, options), tol).eigenvalue);
  }
  const std::size_t last = report.eigenvalues.size() - 1;
  const double e1 = report.eigenvalues[last - 2];
  const double e2 = report.eigenvalues[last - 1];
  const double e3 = report.eigenvalues[last];
  const double d12 = e1 - e2;
  const double d23 = e2 - e3;
  if (d12 == 0.0 || d23 == 0.0 || (d12 > 0.0) != (d23 > 0.0)) {
    report.asymptotic = false;
    report.observed_order = std::nan("");
    report.extrapolated = e3;
    report.note = "not in asymptotic regime";
    return report;
  }
  report.observed_order = std::log2(d12 / d23);
  report.extrapolated = e3 - d23 / (std::pow(2.0, report.observed_order) - 1.0);
  return report;
}

CylindricalGrid oracle_grid(const DimensionlessParams& d, double kappa_expected,
                            double points_per_radius, double z_floor) {
  CylindricalGrid g;
  g.rho_max = CylindricalGrid::kMinRhoMax;
  g.z_max = z_floor;
  if (kappa_expected > 0.0) {
    g.z_max = std::max(z_floor, CylindricalGrid::kDecayLengths / kappa_expected);
  }
  double h = 0.5;
  if (d.xi > 0.0 && d.lambda_t > 0.0) h = std::min(h, d.well_radius() / points_per_radius);
  g.n_rho = std::max(CylindricalGrid::kMinPoints, static_cast<int>(std::ceil(g.rho_max / h)));
  g.n_z = std::max(CylindricalGrid::kMinPoints, static_cast<int>(std::ceil(2.0 * g.z_max / h)));
  if (g.n_z % 2 != 0) ++g.n_z;
  return g;
}

}  // namespace magwell
