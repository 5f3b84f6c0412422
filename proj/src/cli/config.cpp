#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "lpns/cli.hpp"
#include "lpns/errors.hpp"
#include "lpns/generators.hpp"
#include "lpns/io.hpp"
#include "lpns/spectral_ops.hpp"

namespace lpns::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("config key '" + key + "': cannot parse '" + text + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ConfigError("config key '" + key + "' must be finite");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + text + "'");
}

std::map<int, double> parse_spectrum(const std::string& text) {
  std::map<int, double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("spectrum entries must look like q:E, got '" + item + "'");
    const int q = parse_number<int>("spectrum", trim(item.substr(0, colon)));
    const double e = parse_number<double>("spectrum", trim(item.substr(colon + 1)));
    if (!out.emplace(q, e).second) throw ConfigError("spectrum lists shell " + std::to_string(q) + " twice");
  }
  if (out.empty()) throw ConfigError("spectrum is empty");
  return out;
}

const char* ic_name(InitialCondition ic) {
  switch (ic) {
    case InitialCondition::taylor_green: return "taylor_green";
    case InitialCondition::random: return "random";
    case InitialCondition::snapshot: return "snapshot";
  }
  return "unknown";
}

}  // namespace

SolverParams RunConfig::solver_params() const {
  SolverParams p;
  p.nu = nu;
  p.dt = dt;
  p.t_end = t_end;
  p.diag_every = diag_every;
  p.snapshot_every = snapshot_every;
  p.nonlinear_enabled = nonlinear;
  p.riccati_s = s;
  return p;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["nu"] = nu;
  j["dt"] = dt;
  j["t_end"] = t_end;
  j["ic"] = ic_name(ic);
  j["amplitude"] = amplitude;
  j["seed"] = seed;
  nlohmann::json spec = nlohmann::json::object();
  for (const auto& [q, e] : spectrum) spec[std::to_string(q)] = e;
  j["spectrum"] = spec;
  j["snapshot"] = snapshot.string();
  j["s"] = s;
  j["out"] = out.string();
  j["diag_every"] = diag_every;
  j["snapshot_every"] = snapshot_every;
  j["nonlinear"] = nonlinear;
  j["dealias"] = {dealias_num, dealias_den};
  return j;
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig c;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError("config key '" + key + "' has no value");
    if (!seen.insert(key).second) throw ConfigError("config key '" + key + "' given twice");

    if (key == "n") c.n = parse_number<int>(key, value);
    else if (key == "nu") c.nu = parse_number<double>(key, value);
    else if (key == "dt") c.dt = parse_number<double>(key, value);
    else if (key == "t_end") c.t_end = parse_number<double>(key, value);
    else if (key == "ic") {
      if (value == "taylor_green") c.ic = InitialCondition::taylor_green;
      else if (value == "random") c.ic = InitialCondition::random;
      else if (value == "snapshot") c.ic = InitialCondition::snapshot;
      else throw ConfigError("unknown initial condition '" + value + "'");
    } else if (key == "amplitude") c.amplitude = parse_number<double>(key, value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "spectrum") c.spectrum = parse_spectrum(value);
    else if (key == "snapshot") c.snapshot = value;
    else if (key == "s") c.s = parse_number<double>(key, value);
    else if (key == "out") c.out = value;
    else if (key == "diag_every") c.diag_every = parse_number<int>(key, value);
    else if (key == "snapshot_every") c.snapshot_every = parse_number<int>(key, value);
    else if (key == "nonlinear") c.nonlinear = parse_bool(key, value);
    else if (key == "dealias") {
      const auto slash = value.find('/');
      if (slash == std::string::npos) throw ConfigError("dealias must look like num/den");
      c.dealias_num = parse_number<int>(key, trim(value.substr(0, slash)));
      c.dealias_den = parse_number<int>(key, trim(value.substr(slash + 1)));
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  for (const char* required : {"nu", "dt", "t_end"}) {
    if (!seen.count(required)) throw ConfigError(std::string("missing required config key '") + required + "'");
  }
  if (!seen.count("n") && c.ic != InitialCondition::snapshot) {
    throw ConfigError("missing required config key 'n'");
  }
  if (c.ic == InitialCondition::snapshot && c.snapshot.empty()) {
    throw ConfigError("ic = snapshot needs a snapshot path");
  }
  if (c.dealias_den <= 0 || c.dealias_num <= 0 || c.dealias_num > c.dealias_den) {
    throw ConfigError("dealias fraction must lie in (0, 1]");
  }
  if (seen.count("n")) (void)GridSpec(c.n, c.dealias_num, c.dealias_den);
  c.solver_params().validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  RunConfig c = parse_run_config(in);
  // Relative snapshot paths are taken relative to the config file.
  if (c.ic == InitialCondition::snapshot && c.snapshot.is_relative()) {
    c.snapshot = path.parent_path() / c.snapshot;
  }
  return c;
}

SpectralVelocity initial_field(const RunConfig& c) {
  if (c.ic == InitialCondition::snapshot) {
    SpectralVelocity u = leray_project(dealias(read_snapshot(c.snapshot)));
    if (c.n != 0 && u.grid.n() != c.n) {
      throw ConfigError("snapshot grid n = " + std::to_string(u.grid.n()) + " differs from config n = " +
                        std::to_string(c.n));
    }
    u.time = 0.0;
    return u;
  }
  const GridSpec grid(c.n, c.dealias_num, c.dealias_den);
  if (c.ic == InitialCondition::taylor_green) return make_taylor_green(grid, c.amplitude);
  return make_random_field(grid, c.seed, c.spectrum);
}

}  // namespace lpns::cli
