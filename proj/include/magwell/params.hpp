#pragma once

#include <optional>
#include <string>

namespace magwell {

/// Spin projection along the field. Only the sign enters the formulas.
enum class Spin : int { Down = -1, Up = +1 };

inline double spin_value(Spin s) { return static_cast<double>(static_cast<int>(s)); }

/// Continuum threshold (1+s)/2 in units of hbar*omega: lowest Landau level
/// plus the Zeeman shift.
inline double threshold(Spin s) { return 0.5 * (1.0 + spin_value(s)); }

/// Fundamental constants used by the unit conversion. Defaults are CGS
/// values for the electron.
struct Constants {
  double hbar = 1.054571817e-27;  // erg s
  double c = 2.99792458e10;       // cm / s
  double mass = 9.1093837015e-28; // g
  double charge = 4.80320471e-10; // esu, magnitude

  /// hbar = m = omega = 1 when paired with field = m c / |e|.
  static Constants natural() { return {1.0, 1.0, 1.0, 1.0}; }
};

/// Square well of depth U0 and radius R in a uniform field H along z.
struct PhysicalParams {
  double well_depth = 0.0;   // U0 > 0
  double well_radius = 0.0;  // R > 0
  double field = 0.0;        // H > 0
  Constants constants{};

  double cyclotron_frequency() const;  // |e| H / (m c)
  double magnetic_length() const;      // sqrt(hbar / (m omega))
  double bohr_magneton() const;        // |e| hbar / (2 m c)

  /// Throws DomainError naming the first non-positive field.
  void validate() const;
};

/// Everything downstream works in hbar = m = omega = 1 (so a = 1 and energies
/// are in units of hbar*omega).
struct DimensionlessParams {
  double xi = 0.0;        // R^2 / (2 a^2)
  double lambda_t = 0.0;  // U0 R^3 / (hbar omega a^3)
  Spin s = Spin::Down;

  static constexpr double kXiMax = 0.2;
  static constexpr double kXiWarn = 0.1;

  /// Coupling of the spectral equation, sqrt(2) * lambda / 3.
  double coupling() const;

  /// Well radius and depth in natural units.
  double well_radius() const;
  double well_depth() const;

  /// Throws DomainError when xi is outside [0, 0.2) or lambda is negative.
  void validate() const;

  /// Message when 0.1 <= xi < 0.2, where first-order truncation is doubtful.
  std::optional<std::string> warning() const;
};

DimensionlessParams from_physical(const PhysicalParams& p, Spin s = Spin::Down);

/// Inverse of from_physical at the given field strength.
PhysicalParams to_physical(const DimensionlessParams& d, double field,
                           const Constants& constants = Constants{});

}  // namespace magwell
