#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpns/fields.hpp"
#include "lpns/solver.hpp"

namespace lpns::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
};

enum class InitialCondition { taylor_green, random, snapshot };

/// Run description read from a key = value file (one key per line, '#'
/// starts a comment). Required keys: n, nu, dt, t_end. Optional: ic
/// (taylor_green | random | snapshot), amplitude, seed, spectrum
/// ("q:E,q:E,..."), snapshot (path), s, out, diag_every, snapshot_every,
/// nonlinear (true | false), dealias ("num/den").
struct RunConfig {
  int n = 0;
  double nu = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  InitialCondition ic = InitialCondition::taylor_green;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  std::map<int, double> spectrum{{0, 1.0}, {1, 0.5}, {2, 0.25}};
  std::filesystem::path snapshot;
  double s = 1.5;
  std::filesystem::path out = "lpns_out";
  int diag_every = 1;
  int snapshot_every = 0;
  bool nonlinear = true;
  int dealias_num = 2;
  int dealias_den = 3;

  SolverParams solver_params() const;
  /// Normalized echo of every field, as recorded in the run manifest.
  nlohmann::json to_json() const;
};

/// ConfigError on syntax errors, unknown or duplicate keys, missing required
/// keys and values outside their ranges.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

/// Builds the initial field described by the configuration.
SpectralVelocity initial_field(const RunConfig& config);

struct SimulateOverrides {
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<double> s;
};

/// Writes diagnostics.csv, manifest.json and snapshots/ under the output
/// directory. Returns an ExitCode; messages go to `err`.
int cmd_simulate(const std::filesystem::path& config_path, const SimulateOverrides& overrides,
                 std::ostream& out, std::ostream& err);

/// Prints a JSON report for one snapshot.
int cmd_analyze(const std::filesystem::path& snapshot, double s, std::ostream& out,
                std::ostream& err);

struct VerifyOptions {
  std::string suite;
  std::uint64_t seed = 1;
  int n = 32;
  // Adds a compressible component to the nlt-suite fields (negative test).
  bool inject_divergence = false;
};
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
const std::vector<std::string>& verify_suites();

struct BoundsOptions {
  std::filesystem::path csv;
  double s = 1.5;
  double c = 1.0;
  std::vector<std::string> kinds{"main_h32", "general_s_rate"};
};
/// Prints the bounds JSON report for the (t, y) columns of a diagnostics CSV.
int cmd_bounds(const BoundsOptions& options, std::ostream& out, std::ostream& err);

}  // namespace lpns::cli
