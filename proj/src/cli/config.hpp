#pragma once

#include <optional>
#include <string>

#include "magwell/grid.hpp"
#include "magwell/params.hpp"
#include "magwell/spectrum.hpp"

namespace magwell::cli {

enum class Format { Csv, Json, Svg };

/// Values as given on the command line; unset means "not given".
struct FlagValues {
  std::optional<double> xi;
  std::optional<double> lambda;
  std::optional<int> s;
  std::optional<std::string> mode;
  std::optional<int> nmax;
  std::optional<std::string> grid;  // "NRxNZ"
  std::optional<double> rho_max;
  std::optional<double> z_max;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> config;

  // spectrum scan
  std::optional<std::string> axis;
  std::optional<double> from;
  std::optional<double> to;
  std::optional<int> steps;

  // state
  std::optional<double> eps;
  std::optional<std::string> svg;

  // matel
  std::optional<int> n;
  std::optional<int> N;
  std::optional<int> L;
  std::optional<int> table;

  // oracle / compare
  std::optional<double> points_per_radius;
  std::optional<std::string> field_csv;
};

/// Parameters after merging the JSON config (if any) under the flags.
struct RunConfig {
  std::string subcommand;
  DimensionlessParams d{};
  bool have_params = false;
  SpectralConfig spectral{};
  std::optional<int> n_rho;
  std::optional<int> n_z;
  std::optional<double> rho_max;
  std::optional<double> z_max;
  std::optional<std::string> out;
  std::optional<Format> format;
  FlagValues extra{};  // subcommand-specific values, already merged
};

/// Merge flags over the JSON file named by --config and validate the
/// parameter block. Throws ConfigError naming the offending field.
RunConfig resolve(const std::string& subcommand, const FlagValues& flags,
                  bool lambda_required = true);

/// Parses "NRxNZ". Throws ConfigError.
std::pair<int, int> parse_grid(const std::string& text);

/// Dimensionless parameters from a {"U0","R","H","units"} block.
DimensionlessParams from_physical_block(double u0, double r, std::optional<double> h,
                                        const std::string& units, Spin s);

}  // namespace magwell::cli
