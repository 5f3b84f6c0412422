#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "lpns/bounds.hpp"
#include "lpns/cli.hpp"
#include "lpns/errors.hpp"
#include "lpns/filter_bank.hpp"
#include "lpns/flux.hpp"
#include "lpns/io.hpp"
#include "lpns/spectral_ops.hpp"
#include "lpns/version.hpp"

namespace lpns::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// JSON has no infinities; they are written as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json grid_json(const GridSpec& g) {
  return {{"n", g.n()}, {"dealias", {g.dealias_num(), g.dealias_den()}}, {"k_max", g.k_max()},
          {"q_max", FilterBank(g).q_max()}};
}

json sidecar_for(const RunConfig& c, const SpectralVelocity& u) {
  json j;
  j["format"] = "LPNS";
  j["version"] = kSnapshotVersion;
  j["n"] = u.grid.n();
  j["time"] = u.time;
  j["nu"] = c.nu;
  j["seed"] = c.seed;
  j["dealias"] = {u.grid.dealias_num(), u.grid.dealias_den()};
  j["psi_profile"] = std::string(kPsiProfileId);
  json gen = c.to_json();
  j["generator"] = {{"ic", gen["ic"]}, {"amplitude", gen["amplitude"]}, {"seed", gen["seed"]},
                    {"spectrum", gen["spectrum"]}, {"snapshot", gen["snapshot"]}};
  return j;
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace

int cmd_simulate(const fs::path& config_path, const SimulateOverrides& ov, std::ostream& out,
                 std::ostream& err) {
  RunConfig config;
  SpectralVelocity u0{GridSpec(16)};
  try {
    config = load_run_config(config_path);
    if (ov.out) config.out = *ov.out;
    if (ov.seed) config.seed = *ov.seed;
    if (ov.n) config.n = *ov.n;
    if (ov.s) config.s = *ov.s;
    config.solver_params().validate();
    u0 = initial_field(config);
    require_alias_free(u0);
    if (config.nonlinear) {
      const double allowed = admissible_dt(u0);
      if (config.dt > allowed) {
        std::ostringstream msg;
        msg << std::setprecision(6) << "dt = " << config.dt
            << " violates the CFL bound for this initial field; admissible dt <= " << allowed;
        throw ConfigError(msg.str());
      }
    }
    fs::create_directories(config.out);
    if (config.snapshot_every > 0) fs::create_directories(config.out / "snapshots");
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const SolverParams params = config.solver_params();
  json manifest;
  manifest["lpns_version"] = kVersion;
  manifest["psi_profile"] = std::string(kPsiProfileId);
  manifest["config"] = config.to_json();
  manifest["grid"] = grid_json(u0.grid);
  manifest["steps"] = params.step_count();
  manifest["outputs"] = {{"diagnostics", "diagnostics.csv"}, {"snapshots", json::array()}};

  std::ofstream csv(config.out / "diagnostics.csv");
  if (!csv) {
    err << "config error: cannot write " << (config.out / "diagnostics.csv").string() << '\n';
    return kExitConfig;
  }
  bool header_written = false;
  auto on_row = [&](const TrajectoryRow& row) {
    if (!header_written) {
      csv << csv_header(row.shell_energies.size()) << '\n';
      header_written = true;
    }
    csv << csv_line(row) << '\n';
  };

  int code = kExitOk;
  try {
    SimulationResult result = simulate(u0, params, on_row);
    for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "snap_%06zu.lpns", i);
      const fs::path rel = fs::path("snapshots") / name;
      const json side = sidecar_for(config, result.snapshots[i]);
      write_snapshot(config.out / rel, result.snapshots[i], &side);
      manifest["outputs"]["snapshots"].push_back(rel.generic_string());
    }
    manifest["status"] = "ok";
    manifest["rows"] = result.rows.size();
    out << "wrote " << result.rows.size() << " rows to " << (config.out / "diagnostics.csv").string() << '\n';
  } catch (const DivergenceError& e) {
    err << "numerical failure: " << e.what() << " (last good time " << e.last_good_time() << ")\n";
    manifest["status"] = "diverged";
    code = kExitNumerical;
  } catch (const StepSizeError& e) {
    err << "numerical failure: " << e.what() << '\n';
    manifest["status"] = "cfl_violation";
    code = kExitNumerical;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    manifest["status"] = "config_error";
    code = kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    manifest["status"] = "failed";
    code = kExitNumerical;
  }
  csv.flush();
  try {
    write_json_file(config.out / "manifest.json", manifest);
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return code;
}

int cmd_analyze(const fs::path& snapshot, double s, std::ostream& out, std::ostream& err) {
  try {
    if (!(s > 0.5 && s < 2.5)) throw ConfigError("--s must satisfy 1/2 < s < 5/2");
    const SpectralVelocity stored = dealias(read_snapshot(snapshot));
    // Physical-space storage leaves rounding noise in near-empty modes.
    const SpectralVelocity u = leray_project(stored);
    double nu = 1.0;
    if (const auto side = read_sidecar(snapshot); side && side->contains("nu") && (*side)["nu"].is_number()) {
      nu = (*side)["nu"].get<double>();
    }
    if (!(nu > 0.0)) throw ConfigError("sidecar viscosity must be positive");
    const FilterBank bank(u.grid);
    const FluxReport rep = shell_flux_report(u, bank, s, nu, true);

    json j;
    j["snapshot"] = snapshot.string();
    j["time"] = u.time;
    j["grid"] = grid_json(u.grid);
    j["nu"] = nu;
    j["s"] = s;
    j["psi_profile"] = std::string(kPsiProfileId);
    j["energy"] = l2_norm_squared(u);
    j["enstrophy"] = gradient_norm_squared(u);
    j["sobolev_norm"] = sobolev_norm(u, bank, s);
    j["stored_divergence_residual"] = divergence_residual(stored);
    json shells = json::array();
    for (const auto& r : rep.rows) {
      shells.push_back({{"q", r.q},
                        {"energy", r.energy},
                        {"transfer", r.transfer},
                        {"dissipation_exact", r.dissipation_exact},
                        {"dissipation_surrogate", r.dissipation_surrogate},
                        {"remainder_l2", r.remainder_l2},
                        {"lemma1", {{"lhs", r.lemma1.lhs},
                                    {"rhs1", r.lemma1.rhs1},
                                    {"rhs2", r.lemma1.rhs2},
                                    {"rhs3", r.lemma1.rhs3}}}});
    }
    j["shells"] = shells;
    j["abc"] = {{"A", rep.abc.A}, {"B", rep.abc.B}, {"C", rep.abc.C}};
    j["riccati"] = {{"exponent", rep.riccati.exponent},
                    {"lhs", rep.riccati.lhs},
                    {"rhs", rep.riccati.rhs},
                    {"y", rep.riccati.y}};
    j["flux_sum"] = rep.flux_sum;
    j["flux_abs_sum"] = rep.flux_abs_sum;
    j["conservative_flux_sum"] = rep.conservative_flux_sum;
    out << j.dump(2) << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int cmd_bounds(const BoundsOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    if (!(opt.c > 0.0)) throw ConfigError("--c must be positive");
    std::vector<BoundKind> kinds;
    for (const auto& name : opt.kinds) kinds.push_back(parse_bound_kind(name));

    const CsvTable table = read_csv(opt.csv);
    const auto tcol = table.find("t");
    const auto ycol = table.find("y");
    if (!tcol || !ycol) throw ConfigError(opt.csv.string() + " needs t and y columns");
    if (table.rows.empty()) throw ConfigError(opt.csv.string() + " has no samples");
    NormSeries series;
    for (const auto& row : table.rows) series.samples.push_back({row[*tcol], row[*ycol]});
    series.validate();
    const double t_end = series.samples.back().t;

    const double floor = blowup_floor(series, opt.c);
    json j;
    j["source"] = opt.csv.string();
    j["s"] = opt.s;
    j["c"] = opt.c;
    j["samples"] = series.samples.size();
    j["t_end"] = t_end;
    j["floor"] = number(floor);
    // Each sample bounds the blow-up time from below by t + c / y. Under
    // Riccati growth these estimates level off; while they still increase at
    // the end of the record the data carries no blow-up signal.
    bool no_signal = !std::isfinite(floor);
    if (!no_signal && series.samples.size() >= 2) {
      const auto& a = series.samples[series.samples.size() - 2];
      const auto& b = series.samples.back();
      const double ea = a.t + opt.c / a.y;
      const double eb = b.t + opt.c / b.y;
      no_signal = eb - ea > 1e-9 * std::max(std::abs(eb), 1.0);
    }
    j["no_blowup_signal"] = no_signal;
    j["message"] = no_signal ? "no blow-up signal: the blow-up floor still grows at the end of the data"
                             : "blow-up floor has levelled off at the end of the data";

    if (std::isfinite(floor) && series.samples.size() >= 5) {
      try {
        const RateFit fit = fit_rate(series, floor);
        j["fit"] = {{"t_star", floor}, {"alpha", fit.alpha}, {"c_fit", fit.c_fit}};
      } catch (const FitError& e) {
        j["fit"] = {{"t_star", floor}, {"error", e.what()}};
      }
    } else {
      j["fit"] = nullptr;
    }

    std::optional<double> u0_l2;
    if (const auto ecol = table.find("E")) u0_l2 = std::sqrt(std::max(0.0, table.rows.front()[*ecol]));

    json bounds = json::array();
    for (BoundKind kind : kinds) {
      BoundSpec spec;
      spec.kind = kind;
      spec.s = opt.s;
      spec.c = opt.c;
      spec.t_star = std::isfinite(floor) ? floor : 1.0;
      spec.u0_l2 = u0_l2;
      spec.validate();
      json env = json::array();
      if (std::isfinite(floor)) {
        for (const auto& p : series.samples) {
          try {
            env.push_back({{"t", p.t}, {"value", eval_lower_bound(spec, p.t)}});
          } catch (const DomainError&) {
            env.push_back({{"t", p.t}, {"value", nullptr}});
          }
        }
      }
      json params = {{"s", spec.s}, {"c", spec.c}, {"t_star", number(floor)}};
      if (kind == BoundKind::rss_high_s) params["u0_l2"] = *spec.u0_l2;
      bounds.push_back({{"kind", std::string(to_string(kind))}, {"params", params}, {"envelope", env}});
    }
    j["bounds"] = bounds;
    out << j.dump(2) << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace lpns::cli
