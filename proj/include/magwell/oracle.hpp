#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "magwell/boundstate.hpp"
#include "magwell/grid.hpp"
#include "magwell/params.hpp"

namespace magwell {

struct AssembleOptions {
  bool well = true;
  bool zeeman = true;
};

/// Finite-difference L = 0 Hamiltonian on the interior nodes of a
/// CylindricalGrid (rho_i, i < n_rho; z_j, 0 < j < n_z), unknowns ordered
/// with rho fastest. The radial operator (1/rho) d/drho (rho d/drho) uses
/// finite volumes with cell weight w_i = rho_i (w_0 = h/8 on the axis, which
/// encodes the regularity condition) and is symmetrized by sqrt(w).
struct DiscreteHamiltonian {
  CylindricalGrid grid{};
  DimensionlessParams d{};
  AssembleOptions options{};
  Eigen::SparseMatrix<double> matrix;  // symmetric, kinetic + diag(potential)
  Eigen::VectorXd potential;           // rho^2/8 + U + s/2 at each unknown
  Eigen::VectorXd sqrt_weight;         // sqrt(w_i) at each unknown

  int rho_unknowns() const { return grid.n_rho; }
  int z_unknowns() const { return grid.n_z - 1; }
  Eigen::Index size() const { return matrix.rows(); }
  Eigen::Index unknown(int i, int j) const {
    return static_cast<Eigen::Index>(j - 1) * grid.n_rho + i;
  }
};

/// Throws ConfigError if the grid is invalid or resolves the well radius
/// with fewer than 4 spacings in either direction.
DiscreteHamiltonian assemble(const DimensionlessParams& d, const CylindricalGrid& grid,
                             const AssembleOptions& options = {});

struct EigenReport {
  double eigenvalue = 0.0;
  int iterations = 0;     // Lanczos operator applications, all phases
  double residual = 0.0;  // ||H v - theta v|| with ||v|| = 1
  double shift = 0.0;     // shift used for the inverted operator
  Eigen::VectorXd vector; // symmetrized unknowns, unit norm
};

/// Smallest eigenvalue: a coarse Lanczos estimate on H, a shift pushed below
/// the spectrum using the LDL^T inertia of H - sigma, then Lanczos with full
/// reorthogonalization on (H - sigma)^{-1}. Throws NumericError when the
/// iteration does not converge.
EigenReport lowest_eigenvalue(const DiscreteHamiltonian& h, double tol = 1e-12);

/// Ground-state samples on all grid nodes (zero on the Dirichlet boundary),
/// normalized to int |psi|^2 dV = 1 with positive sign; j_phi = (rho/2) psi^2.
CylindricalField ground_state_field(const DiscreteHamiltonian& h, const EigenReport& report);

struct ConvergenceReport {
  std::vector<CylindricalGrid> grids;
  std::vector<double> eigenvalues;
  double observed_order = 0.0;  // from the three finest grids
  double extrapolated = 0.0;    // Richardson, with the observed order
  bool asymptotic = true;       // false if the differences change sign
  std::string note;
};

/// Eigenvalues on a sequence of grids refined by 2 in both directions.
/// Throws ConfigError for fewer than 3 grids or a wrong refinement ratio.
ConvergenceReport converge(const DimensionlessParams& d, const std::vector<CylindricalGrid>& grids,
                           const AssembleOptions& options = {}, double tol = 1e-12);

/// Box for the oracle: rho_max = 8, z_max = max(z_floor, 6 / kappa_expected),
/// spacing no coarser than well_radius / points_per_radius.
CylindricalGrid oracle_grid(const DimensionlessParams& d, double kappa_expected,
                            double points_per_radius, double z_floor = 8.0);

}  // namespace magwell
