#pragma once

#include <optional>

namespace magwell {

/// Uniform (rho, z) lattice in units of the magnetic length.
/// Nodes: rho_i = i h_rho for i = 0..n_rho, z_j = -z_max + j h_z for j = 0..n_z,
/// with h_rho = rho_max / n_rho and h_z = 2 z_max / n_z. The outer nodes
/// rho = rho_max and z = +-z_max are the Dirichlet boundary of the
/// finite-difference operator; field exports include them.
struct CylindricalGrid {
  double rho_max = 8.0;
  double z_max = 8.0;
  int n_rho = 64;
  int n_z = 128;

  static constexpr double kMinRhoMax = 8.0;
  static constexpr int kMinPoints = 16;
  static constexpr double kDecayLengths = 6.0;

  double h_rho() const { return rho_max / n_rho; }
  double h_z() const { return 2.0 * z_max / n_z; }
  double rho(int i) const { return i * h_rho(); }
  double z(int j) const { return -z_max + j * h_z(); }

  /// Node count with boundaries, rho-major.
  int node_count() const { return (n_rho + 1) * (n_z + 1); }

  /// Throws ConfigError unless rho_max >= 8, n_rho, n_z >= 16 and, when an
  /// expected decay constant is given, z_max >= 6 / kappa.
  void validate(std::optional<double> kappa_expected = std::nullopt) const;

  /// Same box with both point counts doubled.
  CylindricalGrid refined() const { return {rho_max, z_max, 2 * n_rho, 2 * n_z}; }
};

}  // namespace magwell
