#include "lpns/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpns/errors.hpp"
#include "lpns/spectral_ops.hpp"
#include "lpns/transform.hpp"

namespace lpns {
namespace {

constexpr char kMagic[4] = {'L', 'P', 'N', 'S'};
constexpr std::size_t kHeaderBytes = 4 + 1 + 4 + 8;
constexpr std::uint32_t kMaxSnapshotN = 1024;

void put_le(std::string& buf, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& snapshot) {
  std::filesystem::path p = snapshot;
  p.replace_extension(".json");
  return p;
}

void write_snapshot(const std::filesystem::path& path, const SpectralVelocity& u,
                    const nlohmann::json* sidecar) {
  const PhysicalVelocity f = inverse_transform(u);
  const auto n = static_cast<std::uint32_t>(u.grid.n());
  std::string buf;
  buf.reserve(kHeaderBytes + 24 * u.grid.size());
  buf.append(kMagic, 4);
  buf.push_back(static_cast<char>(kSnapshotVersion));
  put_le(buf, n, 4);
  put_le(buf, std::bit_cast<std::uint64_t>(u.time), 8);
  for (int c = 0; c < 3; ++c) {
    for (double v : f.values[c]) put_le(buf, std::bit_cast<std::uint64_t>(v), 8);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw ConfigError("failed writing " + path.string());
  if (sidecar) {
    std::ofstream js(sidecar_path(path));
    if (!js) throw ConfigError("cannot write sidecar for " + path.string());
    js << sidecar->dump(2) << '\n';
  }
}

std::optional<nlohmann::json> read_sidecar(const std::filesystem::path& snapshot) {
  const auto p = sidecar_path(snapshot);
  std::ifstream in(p);
  if (!in) return std::nullopt;
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("sidecar " + p.string() + " is not valid JSON: " + e.what());
  }
}

SpectralVelocity read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open snapshot " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < kHeaderBytes) throw ConfigError("snapshot " + path.string() + " is truncated");
  if (!std::equal(kMagic, kMagic + 4, bytes.begin(),
                  [](char a, unsigned char b) { return static_cast<unsigned char>(a) == b; })) {
    throw ConfigError("snapshot " + path.string() + " has bad magic bytes");
  }
  if (bytes[4] != kSnapshotVersion) {
    throw ConfigError("snapshot " + path.string() + " has unsupported version " + std::to_string(bytes[4]));
  }
  const auto n = static_cast<std::uint32_t>(get_le(&bytes[5], 4));
  if (n == 0 || n > kMaxSnapshotN) throw ConfigError("snapshot grid size " + std::to_string(n) + " out of range");
  const double time = std::bit_cast<double>(get_le(&bytes[9], 8));
  const std::size_t points = static_cast<std::size_t>(n) * n * n;
  if (bytes.size() != kHeaderBytes + 24 * points) {
    throw ConfigError("snapshot " + path.string() + " is truncated or has trailing bytes");
  }

  int num = 2;
  int den = 3;
  if (const auto side = read_sidecar(path); side && side->contains("dealias")) {
    const auto& d = (*side)["dealias"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer()) {
      throw ConfigError("sidecar dealias entry must be [num, den]");
    }
    num = d[0].get<int>();
    den = d[1].get<int>();
  }
  const GridSpec grid(static_cast<int>(n), num, den);
  PhysicalVelocity f(grid);
  const unsigned char* p = &bytes[kHeaderBytes];
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < points; ++i, p += 8) f.values[c][i] = std::bit_cast<double>(get_le(p, 8));
  }
  for (const auto& comp : f.values) {
    for (double v : comp) {
      if (!std::isfinite(v)) throw ConfigError("snapshot " + path.string() + " contains non-finite values");
    }
  }
  SpectralVelocity u = forward_transform(f);
  u.time = time;
  return u;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header(std::size_t shells) {
  std::string h = "t,E,enstrophy,H1,H32,y,riccati_lhs,riccati_rhs,A,B,C,flux_sum";
  for (std::size_t q = 0; q < shells; ++q) h += ",Eq" + std::to_string(q);
  return h;
}

std::string csv_line(const TrajectoryRow& r) {
  const double fixed[] = {r.t, r.energy, r.enstrophy, r.h1, r.h32, r.y, r.riccati_lhs,
                          r.riccati_rhs, r.a, r.b, r.c, r.flux_sum};
  std::string line;
  for (double v : fixed) {
    if (!line.empty()) line += ',';
    line += format_double(v);
  }
  for (double e : r.shell_energies) line += ',' + format_double(e);
  return line;
}

void write_diagnostics_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
  const std::size_t shells = rows.empty() ? 0 : rows.front().shell_energies.size();
  out << csv_header(shells) << '\n';
  for (const auto& r : rows) out << csv_line(r) << '\n';
}

std::optional<std::size_t> CsvTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  return std::nullopt;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path.string() + " is empty");
  for (auto& c : split(line, ',')) table.columns.push_back(trim(c));
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != table.columns.size()) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(table.columns.size()) + " fields");
    }
    std::vector<double> row;
    for (const auto& cell : cells) {
      const std::string t = trim(cell);
      char* end = nullptr;
      const double v = std::strtod(t.c_str(), &end);
      if (t.empty() || end != t.c_str() + t.size()) {
        throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": not a number: '" + t + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace lpns
