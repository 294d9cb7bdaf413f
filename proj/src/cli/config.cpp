#include "config.hpp"

#include <fstream>

#include <json.hpp>

#include "magwell/errors.hpp"

namespace magwell::cli {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read file '" + path + "'");
  try {
    json j = json::parse(in);
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
}

template <class T>
std::optional<T> json_value(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: field '") + key + "' has the wrong type");
  }
}

template <class T>
void merge(std::optional<T>& target, const json& j, const char* key) {
  if (!target) target = json_value<T>(j, key);
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  if (text == "svg") return Format::Svg;
  throw ConfigError("format: expected csv, json or svg, got '" + text + "'");
}

Spin parse_spin(int s) {
  if (s == -1) return Spin::Down;
  if (s == 1) return Spin::Up;
  throw ConfigError("s: spin must be -1 or +1, got " + std::to_string(s));
}

}  // namespace

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ConfigError("grid: expected NRxNZ, got '" + text + "'");
  try {
    std::size_t used_r = 0;
    std::size_t used_z = 0;
    const std::string r = text.substr(0, x);
    const std::string z = text.substr(x + 1);
    const int nr = std::stoi(r, &used_r);
    const int nz = std::stoi(z, &used_z);
    if (used_r != r.size() || used_z != z.size()) throw std::invalid_argument("trailing");
    if (nr <= 0 || nz <= 0) throw std::invalid_argument("non-positive");
    return {nr, nz};
  } catch (const std::logic_error&) {
    throw ConfigError("grid: expected NRxNZ, got '" + text + "'");
  }
}

DimensionlessParams from_physical_block(double u0, double r, std::optional<double> h,
                                        const std::string& units, Spin s) {
  if (units == "natural") {
    // Magnetic length and hbar*omega are the units; H does not enter.
    if (!(u0 > 0.0)) throw ConfigError("physical.U0 must be positive");
    if (!(r > 0.0)) throw ConfigError("physical.R must be positive");
    return {0.5 * r * r, u0 * r * r * r, s};
  }
  if (units == "cgs") {
    if (!h) throw ConfigError("physical.H is required with units = cgs");
    PhysicalParams p;
    p.well_depth = u0;
    p.well_radius = r;
    p.field = *h;
    try {
      return from_physical(p, s);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("physical: ") + e.what());
    }
  }
  throw ConfigError("physical.units: expected natural or cgs, got '" + units + "'");
}

RunConfig resolve(const std::string& subcommand, const FlagValues& flags, bool lambda_required) {
  FlagValues v = flags;
  json file = json::object();
  if (v.config) file = load_json(*v.config);

  merge(v.xi, file, "xi");
  merge(v.lambda, file, "lambda");
  merge(v.s, file, "s");
  merge(v.mode, file, "mode");
  merge(v.nmax, file, "nmax");
  merge(v.grid, file, "grid");
  merge(v.rho_max, file, "rho_max");
  merge(v.z_max, file, "z_max");
  merge(v.out, file, "out");
  merge(v.format, file, "format");
  merge(v.axis, file, "axis");
  merge(v.from, file, "from");
  merge(v.to, file, "to");
  merge(v.steps, file, "steps");
  merge(v.eps, file, "eps");
  merge(v.svg, file, "svg");
  merge(v.n, file, "n");
  merge(v.N, file, "N");
  merge(v.L, file, "L");
  merge(v.table, file, "table");
  merge(v.points_per_radius, file, "points_per_radius");
  merge(v.field_csv, file, "field_csv");

  RunConfig cfg;
  cfg.subcommand = subcommand;
  const Spin spin = parse_spin(v.s.value_or(-1));

  const bool have_physical = file.contains("physical");
  const bool have_direct = v.xi.has_value() || v.lambda.has_value();
  if (have_physical && have_direct) {
    throw ConfigError("parameters: give either xi/lambda or a physical block, not both");
  }
  if (have_physical) {
    const json& p = file.at("physical");
    if (!p.is_object()) throw ConfigError("physical: must be an object");
    const auto u0 = json_value<double>(p, "U0");
    const auto r = json_value<double>(p, "R");
    if (!u0) throw ConfigError("physical.U0 is required");
    if (!r) throw ConfigError("physical.R is required");
    cfg.d = from_physical_block(*u0, *r, json_value<double>(p, "H"),
                                json_value<std::string>(p, "units").value_or("natural"), spin);
    cfg.have_params = true;
  } else if (have_direct) {
    if (!v.lambda && lambda_required) throw ConfigError("lambda: required together with xi");
    cfg.d = {v.xi.value_or(0.0), v.lambda.value_or(0.0), spin};
    cfg.have_params = true;
  }
  if (cfg.have_params) {
    try {
      cfg.d.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("xi/lambda: ") + e.what());
    }
  }

  const std::string mode = v.mode.value_or("zeta");
  if (mode == "truncated") {
    cfg.spectral = SpectralConfig::truncated(v.nmax.value_or(0));
  } else if (mode == "zeta") {
    cfg.spectral = SpectralConfig::zeta();
  } else {
    throw ConfigError("mode: expected truncated or zeta, got '" + mode + "'");
  }
  if (cfg.have_params) cfg.spectral.validate(cfg.d);

  if (v.grid) {
    const auto [nr, nz] = parse_grid(*v.grid);
    cfg.n_rho = nr;
    cfg.n_z = nz;
  }
  cfg.rho_max = v.rho_max;
  cfg.z_max = v.z_max;
  cfg.out = v.out;
  if (v.format) cfg.format = parse_format(*v.format);
  cfg.extra = v;
  return cfg;
}

}  // namespace magwell::cli
