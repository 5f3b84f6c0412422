#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lpns/errors.hpp"
#include "lpns/generators.hpp"
#include "lpns/io.hpp"
#include "lpns/spectral_ops.hpp"
#include "lpns/transform.hpp"

using namespace lpns;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const char* root = std::getenv("LPNS_TEST_TMP");
  fs::path dir = fs::path(root ? root : fs::temp_directory_path().string()) / "io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

}  // namespace

TEST_CASE("snapshot round trip") {
  const GridSpec g(16);
  SpectralVelocity u = make_ensemble_field(g, 4, 2);
  u.time = 0.375;
  const fs::path p = scratch("round.lpns");
  const nlohmann::json side = {{"nu", 0.1}, {"dealias", {2, 3}}};
  write_snapshot(p, u, &side);
  CHECK(fs::file_size(p) == 17 + 3 * g.size() * 8);
  const std::string bytes = slurp(p);
  CHECK(bytes.substr(0, 4) == "LPNS");
  CHECK(static_cast<unsigned char>(bytes[4]) == kSnapshotVersion);
  CHECK(static_cast<unsigned char>(bytes[5]) == 16);  // little-endian n

  const SpectralVelocity v = read_snapshot(p);
  CHECK(v.grid == g);
  CHECK(v.time == 0.375);
  CHECK(l2_norm(v - u) < 1e-14 * l2_norm(u));

  const PhysicalVelocity a = inverse_transform(u);
  const PhysicalVelocity b = inverse_transform(v);
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(a.values[c][i] - b.values[c][i]));
  }
  CHECK(worst < 1e-15);

  const auto back = read_sidecar(p);
  REQUIRE(back.has_value());
  CHECK((*back)["nu"] == 0.1);
  CHECK(sidecar_path(p).filename() == "round.json");
}

TEST_CASE("snapshot without sidecar defaults to 2/3 dealiasing") {
  const GridSpec g(32, 1, 2);
  const fs::path p = scratch("bare.lpns");
  fs::remove(sidecar_path(p));
  write_snapshot(p, make_taylor_green(g, 1.0));
  CHECK_FALSE(read_sidecar(p).has_value());
  const SpectralVelocity v = read_snapshot(p);
  CHECK(v.grid.dealias_num() == 2);
  CHECK(v.grid.dealias_den() == 3);
}

TEST_CASE("malformed snapshots are configuration errors") {
  const GridSpec g(16);
  const fs::path good = scratch("good.lpns");
  write_snapshot(good, make_taylor_green(g, 1.0));
  const std::string bytes = slurp(good);

  const fs::path p = scratch("bad.lpns");
  fs::remove(sidecar_path(p));
  std::string b = bytes;
  b[0] = 'X';
  spit(p, b);
  CHECK_THROWS_AS(read_snapshot(p), ConfigError);

  b = bytes;
  b[4] = 2;
  spit(p, b);
  CHECK_THROWS_AS(read_snapshot(p), ConfigError);

  spit(p, bytes.substr(0, bytes.size() - 8));
  CHECK_THROWS_AS(read_snapshot(p), ConfigError);

  spit(p, bytes + "x");
  CHECK_THROWS_AS(read_snapshot(p), ConfigError);

  spit(p, bytes.substr(0, 10));
  CHECK_THROWS_AS(read_snapshot(p), ConfigError);

  b = bytes;
  const double nan = std::nan("");
  std::memcpy(b.data() + 17 + 8 * 5, &nan, 8);
  spit(p, b);
  CHECK_THROWS_AS(read_snapshot(p), ConfigError);

  CHECK_THROWS_AS(read_snapshot(scratch("missing.lpns")), ConfigError);

  spit(p, bytes);
  spit(sidecar_path(p), "{not json");
  CHECK_THROWS_AS(read_sidecar(p), ConfigError);
  fs::remove(sidecar_path(p));
}

TEST_CASE("diagnostics CSV") {
  CHECK(csv_header(3) == "t,E,enstrophy,H1,H32,y,riccati_lhs,riccati_rhs,A,B,C,flux_sum,Eq0,Eq1,Eq2");
  TrajectoryRow r;
  r.t = 0.1;
  r.energy = 1.0 / 3.0;
  r.shell_energies = {1.0, 2.0, 3.0};
  const std::string line = csv_line(r);
  CHECK(line.rfind("0.10000000000000001,0.33333333333333331,", 0) == 0);

  std::ostringstream out;
  write_diagnostics_csv(out, {r, r});
  const fs::path p = scratch("diag.csv");
  spit(p, out.str());
  const CsvTable t = read_csv(p);
  CHECK(t.columns.size() == 15);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][*t.find("E")] == 1.0 / 3.0);
  CHECK(t.rows[0][*t.find("Eq2")] == 3.0);
  CHECK_FALSE(t.find("nope").has_value());
  CHECK(std::stod(format_double(0.1)) == 0.1);

  spit(p, "t,y\n0,1\n1\n");
  CHECK_THROWS_AS(read_csv(p), ConfigError);
  spit(p, "t,y\n0,abc\n");
  CHECK_THROWS_AS(read_csv(p), ConfigError);
  spit(p, "");
  CHECK_THROWS_AS(read_csv(p), ConfigError);
}
