#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "magwell/cli.hpp"
#include "magwell/errors.hpp"

using namespace magwell;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> v;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) v.push_back(std::stod(cell));
  return v;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("magwell_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("spectrum solve single-term root") {
  const auto r = run({"spectrum", "solve", "--xi", "0", "--lambda", "0.3", "--s", "-1",
                      "--mode", "truncated", "--nmax", "0"});
  REQUIRE(r.code == cli::kSuccess);
  const auto j = json::parse(r.out);
  CHECK(std::abs(j["epsilon_root"].get<double>() + 0.02) <= 1e-12 * 0.02);
  CHECK(j["bound_state"].get<bool>());
  CHECK(j["s"].get<int>() == -1);
  CHECK(j["mode"].get<std::string>() == "truncated");
}

TEST_CASE("spectrum solve exit codes") {
  CHECK(run({"spectrum", "solve", "--lambda", "0"}).code == cli::kNoBoundState);
  CHECK(run({"spectrum", "solve", "--xi", "0.3", "--lambda", "0.3"}).code == cli::kConfigError);
  CHECK(run({"spectrum", "solve", "--lambda", "0.3", "--mode", "bogus"}).code ==
        cli::kConfigError);
  CHECK(run({"spectrum", "solve", "--lambda", "0.3", "--s", "0"}).code == cli::kConfigError);
  CHECK(run({"spectrum", "solve", "--lambda", "0.3", "--no-such-flag"}).code ==
        cli::kConfigError);
  CHECK(run({"spectrum", "solve"}).code == cli::kConfigError);
  CHECK(run({"spectrum", "solve", "--lambda", "0.3", "--out", "/nonexistent-dir/x.json"}).code ==
        cli::kFailure);
  CHECK(run({"--help"}).code == cli::kSuccess);
}

TEST_CASE("spectrum solve csv format") {
  const auto r = run({"spectrum", "solve", "--xi", "0.05", "--lambda", "0.3", "--format", "csv"});
  REQUIRE(r.code == cli::kSuccess);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "epsilon_root,residual,mode,e_min_paper,discrepancy_ratio");
}

TEST_CASE("lambda scan follows the closed form") {
  const auto r = run({"spectrum", "scan", "--axis", "lambda", "--from", "0.1", "--to", "0.5",
                      "--steps", "5", "--xi", "0", "--mode", "truncated", "--nmax", "0"});
  REQUIRE(r.code == cli::kSuccess);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "param,epsilon_root,e_min_paper,residual");
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto v = fields(rows[k]);
    const double expected = -2.0 * v[0] * v[0] / 9.0;
    CHECK(std::abs(v[1] - expected) <= 1e-12 * std::abs(expected));
  }
}

TEST_CASE("xi scan: binding weakens with xi") {
  const auto r = run({"spectrum", "scan", "--axis", "xi", "--from", "0", "--to", "0.15",
                      "--steps", "7", "--lambda", "0.3"});
  REQUIRE(r.code == cli::kSuccess);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 8);
  for (std::size_t k = 2; k < rows.size(); ++k) {
    CHECK(fields(rows[k])[1] > fields(rows[k - 1])[1]);
  }
}

TEST_CASE("scan rejects empty ranges") {
  CHECK(run({"spectrum", "scan", "--from", "0.5", "--to", "0.1", "--steps", "5"}).code ==
        cli::kConfigError);
  CHECK(run({"spectrum", "scan", "--from", "0.1", "--to", "0.5", "--steps", "0"}).code ==
        cli::kConfigError);
}

TEST_CASE("state export") {
  const auto r = run({"state", "--grid", "64x128", "--eps", "-0.02"});
  REQUIRE(r.code == cli::kSuccess);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 1 + 65 * 129);
  CHECK(rows[0] == "rho,z,psi,j_phi");
  int axis_rows = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto v = fields(rows[k]);
    if (v[0] == 0.0) {
      ++axis_rows;
      CHECK(v[3] == 0.0);
    }
  }
  CHECK(axis_rows == 129);
  // rho-major ordering: z runs fastest.
  CHECK(fields(rows[1])[0] == fields(rows[2])[0]);
  CHECK(fields(rows[1])[1] < fields(rows[2])[1]);

  const auto svg = run({"state", "--eps", "-0.02", "--format", "svg"});
  REQUIRE(svg.code == cli::kSuccess);
  CHECK(svg.out.rfind("<svg", 0) == 0);
  CHECK(run({"state", "--eps", "0.1"}).code == cli::kConfigError);
  CHECK(run({"state", "--eps", "-0.02", "--rho-max", "4"}).code == cli::kConfigError);
  CHECK(run({"state", "--lambda", "0"}).code == cli::kNoBoundState);
}

TEST_CASE("matel output") {
  const auto r = run({"matel", "--n", "0", "--N", "0", "--L", "0", "--xi", "0.01"});
  REQUIRE(r.code == cli::kSuccess);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "n,N,L,xi,firstorder,quadrature,delta,delta_over_xi2");
  const auto v = fields(rows[1]);
  CHECK(std::abs(v[6]) <= 2e-4);
  CHECK(v[7] == doctest::Approx(v[6] / 1e-4).epsilon(1e-12));

  const auto table = run({"matel", "--table", "3", "--L", "1", "--xi", "0.05"});
  REQUIRE(table.code == cli::kSuccess);
  CHECK(lines(table.out).size() == 17);
  CHECK(run({"matel", "--n", "-1", "--xi", "0.01"}).code == cli::kConfigError);
}

TEST_CASE("identical configs give byte-identical output") {
  const std::vector<std::vector<std::string>> cases = {
      {"spectrum", "solve", "--xi", "0.05", "--lambda", "0.3"},
      {"spectrum", "scan", "--axis", "xi", "--from", "0", "--to", "0.1", "--steps", "4",
       "--lambda", "0.3"},
      {"state", "--grid", "32x64", "--xi", "0.05", "--lambda", "0.3"},
      {"matel", "--table", "2", "--xi", "0.02"}};
  for (const auto& args : cases) {
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == cli::kSuccess);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("--out writes the same bytes as standard output") {
  const auto path = temp_path("solve.json");
  std::filesystem::remove(path);
  const auto to_file = run({"spectrum", "solve", "--lambda", "0.3", "--out", path.string()});
  REQUIRE(to_file.code == cli::kSuccess);
  CHECK(to_file.out.empty());
  CHECK(slurp(path) == run({"spectrum", "solve", "--lambda", "0.3"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("config file merges under the flags") {
  const auto path = temp_path("config.json");
  {
    std::ofstream f(path);
    f << R"({"xi": 0.05, "lambda": 0.3, "mode": "truncated", "nmax": 2})";
  }
  const auto from_file = json::parse(run({"spectrum", "solve", "--config", path.string()}).out);
  CHECK(from_file["nmax"].get<int>() == 2);
  const auto overridden =
      json::parse(run({"spectrum", "solve", "--config", path.string(), "--nmax", "0"}).out);
  CHECK(std::abs(overridden["epsilon_root"].get<double>() + 0.02 * 0.98 * 0.98) <= 1e-14);

  {
    std::ofstream f(path);
    f << R"({"physical": {"U0": 1.0, "R": 0.1414213562373095, "units": "natural"}})";
  }
  const auto physical = json::parse(run({"spectrum", "solve", "--config", path.string()}).out);
  CHECK(physical["xi"].get<double>() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(physical["lambda"].get<double>() == doctest::Approx(std::pow(0.02, 1.5)).epsilon(1e-12));

  {
    std::ofstream f(path);
    f << R"({"xi": 0.05, "lambda": 0.3, "physical": {"U0": 1.0, "R": 0.1}})";
  }
  CHECK(run({"spectrum", "solve", "--config", path.string()}).code == cli::kConfigError);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK(run({"spectrum", "solve", "--config", path.string()}).code == cli::kConfigError);
  CHECK(run({"spectrum", "solve", "--config", "/nonexistent-dir/c.json"}).code ==
        cli::kConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("grid and physical-block parsing") {
  CHECK(cli::parse_grid("64x128") == std::pair{64, 128});
  CHECK_THROWS_AS(cli::parse_grid("64"), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("64xabc"), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("-4x8"), ConfigError);
  const auto d = cli::from_physical_block(1.0, std::sqrt(0.02), std::nullopt, "natural", Spin::Down);
  CHECK(d.xi == doctest::Approx(0.01).epsilon(1e-14));
  CHECK_THROWS_AS(cli::from_physical_block(1.0, 0.1, std::nullopt, "furlongs", Spin::Down),
                  ConfigError);
  CHECK_THROWS_AS(cli::from_physical_block(1.0, 1e-7, std::nullopt, "cgs", Spin::Down),
                  ConfigError);
}

TEST_CASE("compare reports the gap and the trend target") {
  const auto r = run({"compare", "--xi", "0.05", "--lambda", "0.3", "--points-per-radius", "4"});
  REQUIRE(r.code == cli::kSuccess);
  const auto j = json::parse(r.out);
  const double pert = j["epsilon_perturbative"].get<double>();
  const double orc = j["epsilon_oracle"].get<double>();
  CHECK(orc < 0.0);
  CHECK(j["relative_gap"].get<double>() == doctest::Approx(std::abs(orc - pert) / std::abs(orc)));
  CHECK(j.contains("grid"));
  CHECK(j["within_target"].get<bool>() == (j["relative_gap"].get<double>() <= 0.3));
}

TEST_CASE("oracle writes its field on request") {
  const auto path = temp_path("field.csv");
  std::filesystem::remove(path);
  const auto r = run({"oracle", "--xi", "0.05", "--lambda", "0.5", "--grid", "128x800",
                      "--z-max", "25", "--field-csv", path.string()});
  REQUIRE(r.code == cli::kSuccess);
  const auto j = json::parse(r.out);
  CHECK(j["eigenvalue"].get<double>() < 0.0);
  CHECK(j["residual"].get<double>() <= 1e-8);
  CHECK(lines(slurp(path)).size() == 1 + 129 * 801);
  std::filesystem::remove(path);
}
