#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpns/cli.hpp"
#include "lpns/version.hpp"

int main(int argc, char** argv) {
  using namespace lpns::cli;
  CLI::App app{"Littlewood-Paley diagnostics for the periodic Navier-Stokes equations"};
  app.set_version_flag("--version", lpns::kVersion);
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run a simulation from a key = value config");
  std::string config;
  std::string out_dir;
  std::uint64_t seed = 0;
  int n = 0;
  double s = 1.5;
  sim->add_option("--config", config, "config file")->required();
  auto* out_opt = sim->add_option("--out", out_dir, "output directory (overrides config)");
  auto* seed_opt = sim->add_option("--seed", seed, "random seed (overrides config)");
  auto* n_opt = sim->add_option("--n", n, "grid size (overrides config)");
  auto* s_opt = sim->add_option("--s", s, "Sobolev index for y, Riccati sides and A, B, C");

  auto* analyze = app.add_subcommand("analyze", "print a JSON report for one snapshot");
  std::string snapshot;
  double analyze_s = 1.5;
  analyze->add_option("snapshot", snapshot, "LPNS snapshot file")->required();
  analyze->add_option("--s", analyze_s, "Sobolev index");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  VerifyOptions vopt;
  verify->add_option("--suite", vopt.suite, "suite name")->required()->check(CLI::IsMember(verify_suites()));
  verify->add_option("--seed", vopt.seed, "base seed");
  verify->add_option("--n", vopt.n, "grid size");
  verify->add_flag("--inject-divergence", vopt.inject_divergence,
                   "add a compressible mode to the nlt fields (negative test)");

  auto* bounds = app.add_subcommand("bounds", "blow-up floor, rate fit and lower-bound envelopes from a CSV");
  BoundsOptions bopt;
  std::vector<std::string> kinds;
  bounds->add_option("csv", bopt.csv, "CSV with t and y columns")->required();
  bounds->add_option("--s", bopt.s, "Sobolev index (exponent p for kind lp)");
  bounds->add_option("--c", bopt.c, "empirical constant");
  bounds->add_option("--kinds", kinds, "bound kinds")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (*sim) {
    SimulateOverrides ov;
    if (*out_opt) ov.out = out_dir;
    if (*seed_opt) ov.seed = seed;
    if (*n_opt) ov.n = n;
    if (*s_opt) ov.s = s;
    return cmd_simulate(config, ov, std::cout, std::cerr);
  }
  if (*analyze) return cmd_analyze(snapshot, analyze_s, std::cout, std::cerr);
  if (*verify) return cmd_verify(vopt, std::cout, std::cerr);
  if (!kinds.empty()) bopt.kinds = kinds;
  return cmd_bounds(bopt, std::cout, std::cerr);
}
