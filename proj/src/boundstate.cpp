#include "magwell/boundstate.hpp"

#include <cmath>
#include <numbers>

#include "magwell/errors.hpp"
#include "magwell/quadrature.hpp"
#include "magwell/specfun.hpp"

namespace magwell {

namespace {

constexpr double kPi = std::numbers::pi;

void require_bound(double eps) {
  if (!(eps < 0.0)) throw DomainError("bound state requires eps < 0");
}

}  // namespace

double normalization_constant(double eps) {
  require_bound(eps);
  return 1.0 / std::sqrt(std::sqrt(2.0 * kPi) * hurwitz_zeta(1.5, -eps));
}

BoundState make_bound_state(double eps, const DimensionlessParams& d) {
  require_bound(eps);
  return {eps, normalization_constant(eps), std::sqrt(-2.0 * eps), d};
}

double psi_closed(double rho, double z, const BoundState& b) {
  return b.c_e / (2.0 * kPi * b.kappa) * std::exp(-b.kappa * std::abs(z)) *
         std::exp(-0.25 * rho * rho);
}

double pz_propagator_integral(double z, double eps) {
  require_bound(eps);
  const double binding = -eps;
  const Integrand f = [binding](double p) { return 1.0 / (0.5 * p * p + binding); };
  // Even integrand: twice the half-line cosine transform.
  const auto r = integrate_cosine_transform(f, std::abs(z), 1e-14);
  return 2.0 * r.value;
}

double psi_integral_check(double rho, double z, const BoundState& b) {
  return b.c_e / (4.0 * kPi * kPi) * laguerre_fn(0, 0, 0.5 * rho * rho) *
         pz_propagator_integral(z, b.epsilon);
}

double j_phi_closed(double rho, double z, const BoundState& b) {
  const double psi = psi_closed(rho, z, b);
  return 0.5 * rho * psi * psi;
}

CylindricalField current_field(const BoundState& b, const CylindricalGrid& grid) {
  grid.validate();
  CylindricalField field;
  field.grid = grid;
  const std::size_t count = static_cast<std::size_t>(grid.node_count());
  field.rho.reserve(count);
  field.z.reserve(count);
  field.psi.reserve(count);
  field.j_phi.reserve(count);
  for (int i = 0; i <= grid.n_rho; ++i) {
    for (int j = 0; j <= grid.n_z; ++j) {
      const double rho = grid.rho(i);
      const double z = grid.z(j);
      field.rho.push_back(rho);
      field.z.push_back(z);
      field.psi.push_back(psi_closed(rho, z, b));
      field.j_phi.push_back(j_phi_closed(rho, z, b));
    }
  }
  field.j_rho.assign(count, 0.0);
  field.j_z.assign(count, 0.0);
  return field;
}

double max_discrete_divergence(const CylindricalField& field) {
  const auto& g = field.grid;
  const double hr = g.h_rho();
  const double hz = g.h_z();
  double worst = 0.0;
  for (int i = 1; i < g.n_rho; ++i) {
    const double rho = g.rho(i);
    for (int j = 1; j < g.n_z; ++j) {
      const double radial = (g.rho(i + 1) * field.j_rho[field.index(i + 1, j)] -
                             g.rho(i - 1) * field.j_rho[field.index(i - 1, j)]) /
                            (2.0 * hr * rho);
      const double axial =
          (field.j_z[field.index(i, j + 1)] - field.j_z[field.index(i, j - 1)]) / (2.0 * hz);
      // The azimuthal term (1/rho) d j_phi / d phi vanishes for an axisymmetric field.
      worst = std::max(worst, std::abs(radial + axial));
    }
  }
  return worst;
}

double circulation(const BoundState& b, double rho, double z, int segments) {
  double total = 0.0;
  for (int k = 0; k < segments; ++k) {
    const double phi0 = 2.0 * kPi * k / segments;
    const double phi1 = 2.0 * kPi * (k + 1) / segments;
    const double mid = 0.5 * (phi0 + phi1);
    // Midpoint of the chord sits inside the circle.
    const double r_mid = rho * std::cos(0.5 * (phi1 - phi0));
    const double j = j_phi_closed(r_mid, z, b);
    const double jx = -std::sin(mid) * j;
    const double jy = std::cos(mid) * j;
    const double dx = rho * (std::cos(phi1) - std::cos(phi0));
    const double dy = rho * (std::sin(phi1) - std::sin(phi0));
    total += jx * dx + jy * dy;
  }
  return total;
}

double norm_closed(const BoundState& b) {
  return b.c_e * b.c_e / (4.0 * kPi * -b.epsilon * b.kappa);
}

double norm_quadrature(const BoundState& b) {
  const double scale = norm_closed(b);
  const Integrand over_z = [&](double z) {
    const Integrand over_rho = [&](double rho) {
      const double psi = psi_closed(rho, z, b);
      return 2.0 * kPi * rho * psi * psi;
    };
    return integrate_semi_infinite(over_rho, 0.0, 1e-15 * scale).value;
  };
  // psi is even in z.
  return 2.0 * integrate_semi_infinite(over_z, 0.0, 1e-13 * scale).value;
}

Vec3 probability_current_fd(const ComplexField& psi, const VectorField& vector_potential,
                            const Vec3& point, double h) {
  const std::complex<double> center = psi(point);
  const Vec3 a = vector_potential(point);
  const double density = std::norm(center);
  Vec3 j{};
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 fwd = point;
    Vec3 bwd = point;
    fwd[axis] += h;
    bwd[axis] -= h;
    const std::complex<double> grad = (psi(fwd) - psi(bwd)) / (2.0 * h);
    // -(e/(m c)) A |psi|^2 = +A |psi|^2 for e/c = -1.
    j[axis] = std::imag(std::conj(center) * grad) + a[axis] * density;
  }
  return j;
}

ComplexField gauge_wavefunction(const BoundState& b, Gauge gauge) {
  if (gauge == Gauge::Symmetric) {
    return [b](const Vec3& p) {
      return std::complex<double>(psi_closed(std::hypot(p[0], p[1]), p[2], b), 0.0);
    };
  }
  return [b](const Vec3& p) {
    const double amplitude = psi_closed(std::hypot(p[0], p[1]), p[2], b);
    return std::polar(amplitude, 0.5 * p[0] * p[1]);
  };
}

VectorField gauge_potential(Gauge gauge) {
  if (gauge == Gauge::Symmetric) {
    return [](const Vec3& p) { return Vec3{-0.5 * p[1], 0.5 * p[0], 0.0}; };
  }
  return [](const Vec3& p) { return Vec3{-p[1], 0.0, 0.0}; };
}

}  // namespace magwell
