#include "magwell/params.hpp"

#include <cmath>
#include <string>

#include "magwell/errors.hpp"

namespace magwell {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(v));
  }
}

}  // namespace

double PhysicalParams::cyclotron_frequency() const {
  return constants.charge * field / (constants.mass * constants.c);
}

double PhysicalParams::magnetic_length() const {
  return std::sqrt(constants.hbar / (constants.mass * cyclotron_frequency()));
}

double PhysicalParams::bohr_magneton() const {
  return constants.charge * constants.hbar / (2.0 * constants.mass * constants.c);
}

void PhysicalParams::validate() const {
  require_positive(well_depth, "well_depth");
  require_positive(well_radius, "well_radius");
  require_positive(field, "field");
  require_positive(constants.mass, "mass");
  require_positive(constants.charge, "charge");
  require_positive(constants.hbar, "hbar");
  require_positive(constants.c, "c");
}

double DimensionlessParams::coupling() const { return std::sqrt(2.0) * lambda_t / 3.0; }

double DimensionlessParams::well_radius() const { return std::sqrt(2.0 * xi); }

double DimensionlessParams::well_depth() const {
  if (!(xi > 0.0)) throw DomainError("well depth undefined for xi = 0");
  return lambda_t / std::pow(2.0 * xi, 1.5);
}

void DimensionlessParams::validate() const {
  if (!(xi >= 0.0) || !(xi < kXiMax)) {
    throw DomainError("xi must lie in [0, 0.2), got " + std::to_string(xi));
  }
  if (!(lambda_t >= 0.0) || !std::isfinite(lambda_t)) {
    throw DomainError("lambda must be non-negative and finite, got " +
                      std::to_string(lambda_t));
  }
}

std::optional<std::string> DimensionlessParams::warning() const {
  if (xi >= kXiWarn) {
    return "xi = " + std::to_string(xi) +
           " is above 0.1; first-order expansion in xi may be inaccurate";
  }
  return std::nullopt;
}

DimensionlessParams from_physical(const PhysicalParams& p, Spin s) {
  p.validate();
  const double a = p.magnetic_length();
  const double energy_unit = p.constants.hbar * p.cyclotron_frequency();
  DimensionlessParams d;
  d.xi = p.well_radius * p.well_radius / (2.0 * a * a);
  d.lambda_t = p.well_depth * std::pow(p.well_radius / a, 3) / energy_unit;
  d.s = s;
  return d;
}

PhysicalParams to_physical(const DimensionlessParams& d, double field,
                           const Constants& constants) {
  d.validate();
  require_positive(d.xi, "xi");
  require_positive(d.lambda_t, "lambda");
  PhysicalParams p;
  p.field = field;
  p.constants = constants;
  require_positive(field, "field");
  const double a = p.magnetic_length();
  const double energy_unit = constants.hbar * p.cyclotron_frequency();
  p.well_radius = std::sqrt(2.0 * d.xi) * a;
  p.well_depth = d.lambda_t * energy_unit / std::pow(2.0 * d.xi, 1.5);
  return p;
}

}  // namespace magwell
