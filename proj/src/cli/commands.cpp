#include <cmath>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "magwell/boundstate.hpp"
#include "magwell/cli.hpp"
#include "magwell/errors.hpp"
#include "magwell/matel.hpp"
#include "magwell/oracle.hpp"
#include "magwell/spectrum.hpp"
#include "output.hpp"

namespace magwell::cli {

namespace {

constexpr double kDefaultPointsPerRadius = 4.0;
constexpr double kCompareTrendTarget = 0.3;

void add_common(CLI::App* app, FlagValues& v) {
  app->add_option("--xi", v.xi, "Well-size parameter R^2/(2a^2), 0 <= xi < 0.2");
  app->add_option("--lambda", v.lambda, "Coupling U0 R^3 in natural units");
  app->add_option("--s", v.s, "Spin projection, -1 or +1 (default -1)");
  app->add_option("--mode", v.mode, "Level sum: truncated or zeta (default zeta)");
  app->add_option("--nmax", v.nmax, "Cutoff for --mode truncated (default 0)");
  app->add_option("--grid", v.grid, "Grid point counts NRxNZ");
  app->add_option("--rho-max", v.rho_max, "Radial box size in magnetic lengths");
  app->add_option("--z-max", v.z_max, "Half-length of the box along z");
  app->add_option("--out", v.out, "Output file (default: standard output)");
  app->add_option("--format", v.format, "csv, json or svg");
  app->add_option("--config", v.config, "JSON file mirroring the flags; flags win");
}

void require_params(const RunConfig& cfg) {
  if (!cfg.have_params) {
    throw ConfigError("parameters: give --xi/--lambda or a physical block in --config");
  }
}

void warn(const RunConfig& cfg, std::ostream& err) {
  if (auto w = cfg.d.warning()) err << "warning: " << *w << '\n';
}

JsonObject grid_json(const CylindricalGrid& g) {
  JsonObject j;
  j.add("n_rho", g.n_rho)
      .add("n_z", g.n_z)
      .add("rho_max", g.rho_max)
      .add("z_max", g.z_max)
      .add("h_rho", g.h_rho())
      .add("h_z", g.h_z());
  return j;
}

double closed_level_or_nan(const DimensionlessParams& d) {
  return d.s == Spin::Down ? e_min_paper(d) : std::nan("");
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_params(cfg);
  warn(cfg, err);
  const auto root = solve_spectrum(cfg.d, cfg.spectral);
  const double e_min = closed_level_or_nan(cfg.d);
  const Format format = cfg.format.value_or(Format::Json);
  if (format == Format::Svg) throw ConfigError("format: spectrum solve writes csv or json");

  std::string text;
  if (format == Format::Csv) {
    text = "epsilon_root,residual,mode,e_min_paper,discrepancy_ratio\n";
    if (root) {
      text += number(root->epsilon) + ',' + number(root->residual) + ',' +
              std::string(to_string(cfg.spectral.mode)) + ',' + number(e_min) + ',' +
              number(e_min / root->epsilon) + '\n';
    } else {
      text += "nan,nan," + std::string(to_string(cfg.spectral.mode)) + ',' + number(e_min) +
              ",nan\n";
    }
  } else {
    JsonObject j;
    j.add("xi", cfg.d.xi).add("lambda", cfg.d.lambda_t).add("s", static_cast<int>(spin_value(cfg.d.s)));
    j.add("mode", std::string(to_string(cfg.spectral.mode)));
    if (cfg.spectral.mode == SumMode::Truncated) j.add("nmax", cfg.spectral.n_max);
    j.add("bound_state", root.has_value());
    if (root) {
      j.add("epsilon_root", root->epsilon)
          .add("residual", root->residual)
          .add("iterations", root->iterations)
          .add("monotone", root->monotone);
    } else {
      j.add_null("epsilon_root").add_null("residual");
    }
    j.add("e_min_paper", e_min);
    j.add("discrepancy_ratio", root ? e_min / root->epsilon : std::nan(""));
    text = j.str() + '\n';
  }
  emit(text, cfg.out, out);
  if (!root) {
    err << "no bound state in the bracket\n";
    return kNoBoundState;
  }
  return kSuccess;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto& v = cfg.extra;
  const std::string axis = v.axis.value_or("lambda");
  if (axis != "lambda" && axis != "xi") throw ConfigError("axis: expected lambda or xi");
  if (!v.from || !v.to) throw ConfigError("from/to: scan range is required");
  if (!v.steps) throw ConfigError("steps: scan step count is required");
  if (*v.steps <= 0) throw ConfigError("steps: must be positive");
  if (!(*v.from < *v.to)) throw ConfigError("from/to: empty scan range");
  require_params(cfg);
  warn(cfg, err);

  std::string text = "param,epsilon_root,e_min_paper,residual\n";
  for (int k = 0; k < *v.steps; ++k) {
    const double value =
        (*v.steps == 1) ? *v.from : *v.from + (*v.to - *v.from) * k / (*v.steps - 1);
    DimensionlessParams d = cfg.d;
    (axis == "lambda" ? d.lambda_t : d.xi) = value;
    try {
      d.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("scan point: ") + e.what());
    }
    const auto root = solve_spectrum(d, cfg.spectral);
    text += number(value) + ',' + (root ? number(root->epsilon) : "nan") + ',' +
            number(closed_level_or_nan(d)) + ',' + (root ? number(root->residual) : "nan") + '\n';
  }
  emit(text, cfg.out, out);
  return kSuccess;
}

int cmd_state(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  // An explicit energy fixes the state without the well parameters.
  if (!cfg.extra.eps) require_params(cfg);
  warn(cfg, err);
  if (cfg.d.s != Spin::Down) throw ConfigError("s: the bound-state wavefunction is for s = -1");
  double eps = 0.0;
  if (cfg.extra.eps) {
    eps = *cfg.extra.eps;
    if (!(eps < 0.0)) throw ConfigError("eps: must be negative");
  } else {
    const auto root = solve_spectrum(cfg.d, cfg.spectral);
    if (!root) {
      err << "no bound state in the bracket\n";
      return kNoBoundState;
    }
    eps = root->epsilon;
  }
  const BoundState b = make_bound_state(eps, cfg.d);
  CylindricalGrid grid;
  grid.n_rho = cfg.n_rho.value_or(64);
  grid.n_z = cfg.n_z.value_or(128);
  grid.rho_max = cfg.rho_max.value_or(CylindricalGrid::kMinRhoMax);
  grid.z_max = cfg.z_max.value_or(std::max(8.0, CylindricalGrid::kDecayLengths / b.kappa));
  const CylindricalField field = current_field(b, grid);

  const Format format = cfg.format.value_or(Format::Csv);
  if (format == Format::Json) throw ConfigError("format: state writes csv or svg");
  std::ostringstream body;
  if (format == Format::Svg) {
    write_field_svg(body, field);
  } else {
    write_field_csv(body, field);
  }
  emit(body.str(), cfg.out, out);
  if (cfg.extra.svg) {
    std::ostringstream svg;
    write_field_svg(svg, field);
    emit(svg.str(), cfg.extra.svg, out);
  }
  return kSuccess;
}

int cmd_matel(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto& v = cfg.extra;
  if (!v.xi) throw ConfigError("xi: required for matel");
  if (cfg.format && *cfg.format != Format::Csv) throw ConfigError("format: matel writes csv");
  const int L = v.L.value_or(0);
  std::vector<MatelRow> rows;
  if (v.table) {
    if (*v.table < 0) throw ConfigError("table: must be >= 0");
    rows = matel_table(*v.table, L, *v.xi);
  } else {
    const int n = v.n.value_or(0);
    const int N = v.N.value_or(0);
    rows.push_back({n, N, L, *v.xi, well_element_firstorder(n, N, L, *v.xi),
                    well_element_quadrature(n, N, L, *v.xi)});
  }
  std::string text = "n,N,L,xi,firstorder,quadrature,delta,delta_over_xi2\n";
  for (const auto& r : rows) {
    const double scaled = r.xi > 0.0 ? r.delta() / (r.xi * r.xi) : std::nan("");
    text += std::to_string(r.n) + ',' + std::to_string(r.N) + ',' + std::to_string(r.L) + ',' +
            number(r.xi) + ',' + number(r.firstorder) + ',' + number(r.quadrature) + ',' +
            number(r.delta()) + ',' + number(scaled) + '\n';
  }
  emit(text, cfg.out, out);
  return kSuccess;
}

struct OracleRun {
  std::optional<SpectralRoot> predicted;
  CylindricalGrid grid;
  DiscreteHamiltonian hamiltonian;
  EigenReport report;
};

OracleRun run_oracle(const RunConfig& cfg) {
  require_params(cfg);
  if (cfg.d.s != Spin::Down) throw ConfigError("s: the oracle covers the s = -1 channel");
  OracleRun run;
  run.predicted = solve_spectrum(cfg.d, SpectralConfig::zeta());
  const std::optional<double> kappa =
      run.predicted ? std::optional<double>(std::sqrt(-2.0 * run.predicted->epsilon))
                    : std::nullopt;
  const double ppr = cfg.extra.points_per_radius.value_or(kDefaultPointsPerRadius);
  if (!(ppr >= 4.0)) throw ConfigError("points_per_radius: must be >= 4");
  CylindricalGrid grid = oracle_grid(cfg.d, kappa.value_or(0.0), ppr);
  if (cfg.rho_max) grid.rho_max = *cfg.rho_max;
  if (cfg.z_max) grid.z_max = *cfg.z_max;
  if (cfg.n_rho) grid.n_rho = *cfg.n_rho;
  if (cfg.n_z) grid.n_z = *cfg.n_z;
  grid.validate(kappa);
  run.grid = grid;
  run.hamiltonian = assemble(cfg.d, grid);
  run.report = lowest_eigenvalue(run.hamiltonian);
  return run;
}

void write_field_file(const OracleRun& run, const std::optional<std::string>& path,
                      std::ostream& out) {
  if (!path) return;
  std::ostringstream csv;
  write_field_csv(csv, ground_state_field(run.hamiltonian, run.report));
  emit(csv.str(), path, out);
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  warn(cfg, err);
  if (cfg.format && *cfg.format != Format::Json) throw ConfigError("format: oracle writes json");
  const OracleRun run = run_oracle(cfg);
  JsonObject j;
  j.add("xi", cfg.d.xi).add("lambda", cfg.d.lambda_t);
  j.add("eigenvalue", run.report.eigenvalue)
      .add("grid", grid_json(run.grid))
      .add("iterations", run.report.iterations)
      .add("residual", run.report.residual)
      .add("shift", run.report.shift);
  emit(j.str() + '\n', cfg.out, out);
  write_field_file(run, cfg.extra.field_csv, out);
  return kSuccess;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  warn(cfg, err);
  if (cfg.format && *cfg.format != Format::Json) throw ConfigError("format: compare writes json");
  const OracleRun run = run_oracle(cfg);
  const double oracle = run.report.eigenvalue;
  JsonObject j;
  j.add("xi", cfg.d.xi).add("lambda", cfg.d.lambda_t);
  if (run.predicted) {
    const double pert = run.predicted->epsilon;
    const double gap = std::abs(oracle - pert) / std::abs(oracle);
    j.add("epsilon_perturbative", pert)
        .add("epsilon_oracle", oracle)
        .add("relative_gap", gap)
        .add("e_min_paper", e_min_paper(cfg.d))
        .add("oracle_bound", oracle < 0.0)
        .add("trend_target", kCompareTrendTarget)
        .add("within_target", gap <= kCompareTrendTarget);
  } else {
    j.add_null("epsilon_perturbative").add("epsilon_oracle", oracle).add_null("relative_gap");
  }
  j.add("grid", grid_json(run.grid))
      .add("iterations", run.report.iterations)
      .add("residual", run.report.residual);
  emit(j.str() + '\n', cfg.out, out);
  write_field_file(run, cfg.extra.field_csv, out);
  return run.predicted ? kSuccess : kNoBoundState;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound electron in a square well and a uniform magnetic field", "magwell"};
  app.require_subcommand(1);
  FlagValues flags;

  auto* spectrum = app.add_subcommand("spectrum", "Spectral equation");
  spectrum->require_subcommand(1);
  auto* solve = spectrum->add_subcommand("solve", "Lowest root of the spectral equation");
  auto* scan = spectrum->add_subcommand("scan", "Roots along a lambda or xi sweep (CSV)");
  auto* state = app.add_subcommand("state", "Bound-state wavefunction and current (CSV/SVG)");
  auto* matel = app.add_subcommand("matel", "Well matrix elements: first order vs quadrature");
  auto* oracle = app.add_subcommand("oracle", "Finite-difference lowest eigenvalue (JSON)");
  auto* compare = app.add_subcommand("compare", "Perturbative root against the oracle (JSON)");
  for (auto* sub : {solve, scan, state, matel, oracle, compare}) add_common(sub, flags);

  scan->add_option("--axis", flags.axis, "lambda or xi (default lambda)");
  scan->add_option("--from", flags.from, "First value");
  scan->add_option("--to", flags.to, "Last value");
  scan->add_option("--steps", flags.steps, "Number of points");
  state->add_option("--eps", flags.eps, "Energy to use instead of solving (< 0)");
  state->add_option("--svg", flags.svg, "Also write an SVG heatmap of j_phi");
  matel->add_option("--n", flags.n, "Radial index n");
  matel->add_option("--N", flags.N, "Radial index N");
  matel->add_option("--L", flags.L, "Angular channel L");
  matel->add_option("--table", flags.table, "All n, N up to this index");
  for (auto* sub : {oracle, compare}) {
    sub->add_option("--points-per-radius", flags.points_per_radius,
                    "Grid spacings across the well radius (default 4)");
    sub->add_option("--field-csv", flags.field_csv, "Write the ground-state field as CSV");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*scan && !flags.lambda && flags.axis.value_or("lambda") == "lambda" && flags.from) {
      flags.lambda = *flags.from;  // placeholder; each scan point sets its own lambda
    }
    const bool lambda_required = !*matel;
    std::string name;
    if (*solve) name = "spectrum solve";
    else if (*scan) name = "spectrum scan";
    else if (*state) name = "state";
    else if (*matel) name = "matel";
    else if (*oracle) name = "oracle";
    else name = "compare";
    const RunConfig cfg = resolve(name, flags, lambda_required);

    if (*solve) return cmd_solve(cfg, out, err);
    if (*scan) return cmd_scan(cfg, out, err);
    if (*state) return cmd_state(cfg, out, err);
    if (*matel) return cmd_matel(cfg, out, err);
    if (*oracle) return cmd_oracle(cfg, out, err);
    return cmd_compare(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kFailure;
  } catch (const OutputError& e) {
    err << "output error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace magwell::cli
