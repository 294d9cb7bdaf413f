#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "magwell/grid.hpp"
#include "magwell/params.hpp"

namespace magwell {

/// Lowest (n_rho = 0, L = 0, s = -1) bound state in zeroth order of xi.
struct BoundState {
  double epsilon = 0.0;  // < 0, units of hbar*omega
  double c_e = 0.0;      // normalization constant of the coefficient set
  double kappa = 0.0;    // sqrt(2 |epsilon|), longitudinal decay constant
  DimensionlessParams d{};
};

/// C_E = [sqrt(2 pi) zeta(3/2, |eps|)]^{-1/2}. Throws DomainError for eps >= 0.
double normalization_constant(double eps);

BoundState make_bound_state(double eps, const DimensionlessParams& d);

/// psi = C_E / (2 pi kappa) exp(-kappa |z|) exp(-rho^2 / 4).
double psi_closed(double rho, double z, const BoundState& b);

/// int_{-inf}^{inf} dp e^{i p z} / (p^2/2 + |eps|), by numerical quadrature.
double pz_propagator_integral(double z, double eps);

/// The n_rho = 0 term of the momentum representation evaluated by quadrature,
/// C_E / (4 pi^2) * I_00(rho^2/2) * pz_propagator_integral(z, eps).
double psi_integral_check(double rho, double z, const BoundState& b);

/// Azimuthal probability current of the real bound state, (rho / 2) psi^2.
/// Positive for the electron (e < 0) with the field along +z.
double j_phi_closed(double rho, double z, const BoundState& b);

/// Samples on the nodes of a CylindricalGrid, stored rho-major:
/// index(i, j) = i * (n_z + 1) + j.
struct CylindricalField {
  CylindricalGrid grid{};
  std::vector<double> rho;
  std::vector<double> z;
  std::vector<double> psi;
  std::vector<double> j_phi;
  std::vector<double> j_rho;  // identically zero
  std::vector<double> j_z;    // identically zero

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * (grid.n_z + 1) + static_cast<std::size_t>(j);
  }
};

CylindricalField current_field(const BoundState& b, const CylindricalGrid& grid);

/// Max |div j| on interior nodes, from the axisymmetric cylindrical stencil
/// (1/rho) d(rho j_rho)/drho + d j_z/dz.
double max_discrete_divergence(const CylindricalField& field);

/// Line integral of j around the circle of radius rho at height z, summed
/// over chords with the Cartesian current at chord midpoints.
double circulation(const BoundState& b, double rho, double z, int segments = 256);

/// Norm int |psi|^2 dV: closed form C_E^2 / (4 pi |eps| kappa), and a nested
/// adaptive quadrature over (rho, z).
double norm_closed(const BoundState& b);
double norm_quadrature(const BoundState& b);

using Vec3 = std::array<double, 3>;
using ComplexField = std::function<std::complex<double>(const Vec3&)>;
using VectorField = std::function<Vec3(const Vec3&)>;

/// Probability current j = (hbar/m) Im(psi* grad psi) - (e/(m c)) A |psi|^2 at
/// a point, with centered differences of step h. Natural units with the
/// electron charge: hbar = m = 1, e/c = -1 (so |e| H / c = 1).
Vec3 probability_current_fd(const ComplexField& psi, const VectorField& vector_potential,
                            const Vec3& point, double h);

enum class Gauge { Symmetric, Landau };

/// Bound state and vector potential in the requested gauge. The Landau gauge
/// A = (-y, 0, 0) carries the phase exp(i x y / 2) relative to the symmetric one.
ComplexField gauge_wavefunction(const BoundState& b, Gauge gauge);
VectorField gauge_potential(Gauge gauge);

}  // namespace magwell
