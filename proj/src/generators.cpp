#include "lpns/generators.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "lpns/errors.hpp"
#include "lpns/filter_bank.hpp"

namespace lpns {
namespace {

bool positive_half(int kx, int ky, int kz) {
  return kx > 0 || (kx == 0 && (ky > 0 || (ky == 0 && kz > 0)));
}

// Random solenoidal coefficients on the band 2^(q-1) < |k| <= 2^q.
SpectralVelocity random_band(const GridSpec& grid, std::uint64_t seed, int q) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(q), 0x4c504e53u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  SpectralVelocity band(grid);
  const int reach = 1 << q;
  const long upper = static_cast<long>(reach) * reach;
  const long lower = q == 0 ? 0 : upper / 4;
  for (int kx = -reach; kx <= reach; ++kx) {
    for (int ky = -reach; ky <= reach; ++ky) {
      for (int kz = -reach; kz <= reach; ++kz) {
        const long k2 = long(kx) * kx + long(ky) * ky + long(kz) * kz;
        if (k2 <= lower || k2 > upper || !positive_half(kx, ky, kz)) continue;
        Complex c[3];
        for (auto& v : c) {
          const double re = normal(rng);
          const double im = normal(rng);
          v = Complex(re, im);
        }
        const Complex kdotc = double(kx) * c[0] + double(ky) * c[1] + double(kz) * c[2];
        const double kk = static_cast<double>(k2);
        c[0] -= double(kx) * kdotc / kk;
        c[1] -= double(ky) * kdotc / kk;
        c[2] -= double(kz) * kdotc / kk;
        for (int comp = 0; comp < 3; ++comp) {
          band.at(comp, kx, ky, kz) = c[comp];
          band.at(comp, -kx, -ky, -kz) = std::conj(c[comp]);
        }
      }
    }
  }
  return band;
}

double weighted_energy(const SpectralVelocity& u, int q) {
  double sum = 0.0;
  for_each_mode(u.grid, [&](std::size_t idx, int kx, int ky, int kz) {
    const double m =
        std::norm(u.coeffs[0][idx]) + std::norm(u.coeffs[1][idx]) + std::norm(u.coeffs[2][idx]);
    if (m == 0.0) return;
    const double w = shell_weight(q, std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz));
    sum += w * w * m;
  });
  return kBoxVolume * sum;
}

}  // namespace

SpectralVelocity make_taylor_green(const GridSpec& grid, double amplitude) {
  if (!std::isfinite(amplitude)) throw ConfigError("Taylor-Green amplitude must be finite");
  SpectralVelocity u(grid);
  const double c = amplitude / 8.0;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) {
        u.at(0, sx, sy, sz) = Complex(0.0, -c * sx);
        u.at(1, sx, sy, sz) = Complex(0.0, c * sy);
      }
    }
  }
  return u;
}

SpectralVelocity make_random_field(const GridSpec& grid, std::uint64_t seed,
                                   const std::map<int, double>& spectrum) {
  for (const auto& [q, energy] : spectrum) {
    if (q < 0 || q > 30 || (1 << q) > grid.k_max()) {
      throw ConfigError("shell " + std::to_string(q) + " is not resolvable with K_max = " +
                        std::to_string(grid.k_max()));
    }
    if (!(energy >= 0.0) || !std::isfinite(energy)) {
      throw ConfigError("shell energies must be finite and non-negative");
    }
  }

  std::map<int, SpectralVelocity> bands;
  for (const auto& [q, energy] : spectrum) {
    if (energy > 0.0) bands.emplace(q, random_band(grid, seed, q));
  }

  // Band q contributes to shells q-1 and q only; solve from the top down.
  std::map<int, double> scale2;
  for (auto it = spectrum.rbegin(); it != spectrum.rend(); ++it) {
    const auto [q, energy] = *it;
    double leak = 0.0;
    if (auto above = bands.find(q + 1); above != bands.end()) {
      leak = scale2.at(q + 1) * weighted_energy(above->second, q);
    }
    if (energy == 0.0 && leak == 0.0) {
      scale2[q] = 0.0;
      continue;
    }
    const double target = energy - leak;
    if (target <= 0.0) {
      throw ConfigError("spectrum not realizable: shell " + std::to_string(q) +
                        " energy is smaller than the leakage from shell " + std::to_string(q + 1));
    }
    scale2[q] = target / weighted_energy(bands.at(q), q);
  }

  SpectralVelocity u(grid);
  for (const auto& [q, band] : bands) {
    const double a = std::sqrt(scale2.at(q));
    for (int c = 0; c < 3; ++c) {
      for (std::size_t i = 0; i < grid.size(); ++i) u.coeffs[c][i] += a * band.coeffs[c][i];
    }
  }
  return u;
}

SpectralVelocity make_ensemble_field(const GridSpec& grid, std::uint64_t seed, int top_band) {
  if (top_band < 0) throw ConfigError("top band must be non-negative");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::map<int, double> spectrum;
  for (int q = 0; q <= top_band; ++q) spectrum[q] = std::exp2(-q) * (0.75 + 0.5 * uniform(rng));
  return make_random_field(grid, seed, spectrum);
}

SpectralVelocity make_sine_mode(const GridSpec& grid, int kx, int ky, int kz, double ex,
                                double ey, double ez, double amplitude) {
  const double kdote = kx * ex + ky * ey + kz * ez;
  if (kdote != 0.0) throw ConfigError("polarization must be perpendicular to the wavevector");
  const int half = grid.n() / 2;
  if (std::abs(kx) >= half || std::abs(ky) >= half || std::abs(kz) >= half) {
    throw ConfigError("wavevector not resolvable on this grid");
  }
  SpectralVelocity u(grid);
  const double e[3] = {ex, ey, ez};
  // sin(k.x) = (e^{ik.x} - e^{-ik.x}) / (2i)
  for (int c = 0; c < 3; ++c) {
    u.at(c, kx, ky, kz) = Complex(0.0, -0.5 * amplitude * e[c]);
    u.at(c, -kx, -ky, -kz) = Complex(0.0, 0.5 * amplitude * e[c]);
  }
  return u;
}

}  // namespace lpns
