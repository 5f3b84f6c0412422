#include "lpns/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "lpns/errors.hpp"

namespace lpns {

void project_mode(int kx, int ky, int kz, Complex* c) {
  const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
  if (k2 == 0.0) return;
  const double kn = std::sqrt(k2);
  const double e[3] = {kx / kn, ky / kn, kz / kn};
  // A second pass removes the rounding left along k by the first, which
  // otherwise dominates modes whose solenoidal part vanishes.
  for (int pass = 0; pass < 2; ++pass) {
    const Complex f = e[0] * c[0] + e[1] * c[1] + e[2] * c[2];
    for (int i = 0; i < 3; ++i) c[i] -= e[i] * f;
  }
}

SpectralVelocity leray_project(const SpectralVelocity& u) {
  SpectralVelocity out = u;
  for_each_mode(u.grid, [&](std::size_t idx, int kx, int ky, int kz) {
    Complex c[3] = {u.coeffs[0][idx], u.coeffs[1][idx], u.coeffs[2][idx]};
    project_mode(kx, ky, kz, c);
    for (int i = 0; i < 3; ++i) out.coeffs[i][idx] = c[i];
  });
  return out;
}

SpectralVelocity dealias(const SpectralVelocity& u) {
  SpectralVelocity out = u;
  const int kmax = u.grid.k_max();
  for_each_mode(u.grid, [&](std::size_t idx, int kx, int ky, int kz) {
    if (std::abs(kx) > kmax || std::abs(ky) > kmax || std::abs(kz) > kmax) {
      for (auto& comp : out.coeffs) comp[idx] = 0.0;
    }
  });
  return out;
}

double divergence_residual(const SpectralVelocity& u) {
  double worst = 0.0;
  for_each_mode(u.grid, [&](std::size_t idx, int kx, int ky, int kz) {
    const double kn = std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
    const double cn = std::sqrt(std::norm(u.coeffs[0][idx]) + std::norm(u.coeffs[1][idx]) +
                                std::norm(u.coeffs[2][idx]));
    if (kn == 0.0 || cn == 0.0) return;
    const Complex kdotu = double(kx) * u.coeffs[0][idx] + double(ky) * u.coeffs[1][idx] +
                          double(kz) * u.coeffs[2][idx];
    worst = std::max(worst, std::abs(kdotu) / (kn * cn));
  });
  return worst;
}

double energy_fraction_beyond(const SpectralVelocity& u, int limit) {
  double outside = 0.0;
  double total = 0.0;
  for_each_mode(u.grid, [&](std::size_t idx, int kx, int ky, int kz) {
    const double e =
        std::norm(u.coeffs[0][idx]) + std::norm(u.coeffs[1][idx]) + std::norm(u.coeffs[2][idx]);
    total += e;
    if (std::abs(kx) > limit || std::abs(ky) > limit || std::abs(kz) > limit) outside += e;
  });
  return total > 0.0 ? std::sqrt(outside / total) : 0.0;
}

void require_alias_free(const SpectralVelocity& u) {
  const double frac = energy_fraction_beyond(u, u.grid.alias_free_limit());
  if (frac > 1e-12) {
    throw ConfigError("field has content beyond |k_i| = " +
                      std::to_string(u.grid.alias_free_limit()) +
                      "; quadratic products would alias (dealias first)");
  }
}

double l2_norm_squared(const SpectralVelocity& u) {
  double sum = 0.0;
  for (const auto& comp : u.coeffs) {
    for (const auto& c : comp) sum += std::norm(c);
  }
  return kBoxVolume * sum;
}

double l2_norm(const SpectralVelocity& u) { return std::sqrt(l2_norm_squared(u)); }

double gradient_norm_squared(const SpectralVelocity& u) {
  double sum = 0.0;
  for_each_mode(u.grid, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
    sum += k2 * (std::norm(u.coeffs[0][idx]) + std::norm(u.coeffs[1][idx]) +
                 std::norm(u.coeffs[2][idx]));
  });
  return kBoxVolume * sum;
}

double inner_product(const SpectralVelocity& u, const SpectralVelocity& v) {
  if (!(u.grid == v.grid)) throw ConfigError("fields live on different grids");
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < u.coeffs[c].size(); ++i) {
      sum += (std::conj(u.coeffs[c][i]) * v.coeffs[c][i]).real();
    }
  }
  return kBoxVolume * sum;
}

double l2_norm(const PhysicalVelocity& f) {
  double sum = 0.0;
  for (const auto& comp : f.values) {
    for (double v : comp) sum += v * v;
  }
  return std::sqrt(sum * f.grid.cell_volume());
}

double max_speed(const PhysicalVelocity& f) {
  double worst = 0.0;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    const double s2 = f.values[0][i] * f.values[0][i] + f.values[1][i] * f.values[1][i] +
                      f.values[2][i] * f.values[2][i];
    worst = std::max(worst, s2);
  }
  return std::sqrt(worst);
}

}  // namespace lpns
