#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpns/fields.hpp"
#include "lpns/solver.hpp"

namespace lpns {

inline constexpr std::uint8_t kSnapshotVersion = 1;

/// Same basename with the extension replaced by ".json".
std::filesystem::path sidecar_path(const std::filesystem::path& snapshot);

/// Writes the physical field in the LPNS layout: "LPNS", version byte,
/// LE u32 n, LE f64 time, then 3 n^3 LE f64 values (component-major, z
/// fastest). The sidecar object, when given, is written next to it.
void write_snapshot(const std::filesystem::path& path, const SpectralVelocity& u,
                    const nlohmann::json* sidecar = nullptr);

/// Reads an LPNS file. The dealias fraction is taken from the sidecar when
/// present (2/3 otherwise). ConfigError on bad magic, version, size or grid.
SpectralVelocity read_snapshot(const std::filesystem::path& path);

/// Parsed sidecar, or nullopt if there is none. ConfigError if it is not JSON.
std::optional<nlohmann::json> read_sidecar(const std::filesystem::path& snapshot);

/// "t,E,enstrophy,H1,H32,y,riccati_lhs,riccati_rhs,A,B,C,flux_sum,Eq0,...".
std::string csv_header(std::size_t shells);
/// One row, numbers printed with 17 significant digits.
std::string csv_line(const TrajectoryRow& row);
void write_diagnostics_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Column index, or nullopt.
  std::optional<std::size_t> find(const std::string& name) const;
};
/// Numeric CSV with a header row. ConfigError on unreadable or ragged input.
CsvTable read_csv(const std::filesystem::path& path);

/// Round-trip text form of a double (17 significant digits).
std::string format_double(double v);

}  // namespace lpns
