#include "magwell/grid.hpp"

#include <string>

#include "magwell/errors.hpp"

namespace magwell {

void CylindricalGrid::validate(std::optional<double> kappa_expected) const {
  if (!(rho_max >= kMinRhoMax)) {
    throw ConfigError("rho_max must be >= 8, got " + std::to_string(rho_max));
  }
  if (!(z_max > 0.0)) throw ConfigError("z_max must be positive");
  if (n_rho < kMinPoints || n_z < kMinPoints) {
    throw ConfigError("grid needs n_rho, n_z >= 16, got " + std::to_string(n_rho) + "x" +
                      std::to_string(n_z));
  }
  if (kappa_expected && *kappa_expected > 0.0 && z_max * *kappa_expected < kDecayLengths) {
    throw ConfigError("z_max = " + std::to_string(z_max) + " is shorter than 6/kappa = " +
                      std::to_string(kDecayLengths / *kappa_expected));
  }
}

}  // namespace magwell
