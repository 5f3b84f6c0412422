#include "lpns/filter_bank.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

#include "lpns/errors.hpp"
#include "lpns/transform.hpp"

namespace lpns {
namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

int ceil_log2(int v) {
  int m = 0;
  while ((1 << m) < v) ++m;
  return m;
}

std::size_t checksum(const SpectralVelocity& u) {
  std::size_t h = std::hash<int>{}(u.grid.n());
  for (const auto& comp : u.coeffs) {
    std::string_view bytes(reinterpret_cast<const char*>(comp.data()), comp.size() * sizeof(Complex));
    h ^= std::hash<std::string_view>{}(bytes) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// Sum of phi_q over q in [lo, hi] applied to u.
SpectralVelocity apply_shell_range(const SpectralVelocity& u, const FilterBank& bank, int lo, int hi) {
  SpectralVelocity out(u.grid);
  out.time = u.time;
  lo = std::max(lo, bank.q_min());
  hi = std::min(hi, bank.q_max());
  if (lo > hi) return out;
  std::vector<double> mult(u.grid.size(), 0.0);
  for (int q = lo; q <= hi; ++q) {
    for (const auto& e : bank.support(q)) mult[e.index] += e.weight;
  }
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < mult.size(); ++i) {
      if (mult[i] != 0.0) out.coeffs[c][i] = mult[i] * u.coeffs[c][i];
    }
  }
  return out;
}

}  // namespace

double psi(double r) {
  r = std::abs(r);
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  const double a = bump(2.0 - 2.0 * r);
  const double b = bump(2.0 * r - 1.0);
  return a / (a + b);
}

double shell_weight(int q, double kmag) {
  return psi(std::ldexp(kmag, -(q + 1))) - psi(std::ldexp(kmag, -q));
}

FilterBank::FilterBank(const GridSpec& grid) : grid_(grid), q_max_(ceil_log2(grid.k_max()) + 1) {
  if (grid.k_max() < 1) throw ConfigError("grid cannot host shell 0");
  kmag_.resize(grid.size());
  for_each_mode(grid, [&](std::size_t idx, int kx, int ky, int kz) {
    kmag_[idx] = std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
  });
  dense_.assign(shell_count(), std::vector<double>(grid.size(), 0.0));
  support_.resize(shell_count());
  for (int q = 0; q <= q_max_; ++q) {
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const double w = shell_weight(q, kmag_[idx]);
      if (w != 0.0) {
        dense_[q][idx] = w;
        support_[q].push_back({idx, w});
      }
    }
  }
}

double FilterBank::lambda(int q) { return std::ldexp(1.0, q); }

void FilterBank::check(int q) const {
  if (!contains(q)) {
    throw RangeError("shell " + std::to_string(q) + " outside [0, " + std::to_string(q_max_) + "]");
  }
}

double FilterBank::weight(int q, std::size_t idx) const {
  check(q);
  return dense_[q][idx];
}

std::span<const ShellEntry> FilterBank::support(int q) const {
  check(q);
  return support_[q];
}

double FilterBank::low_pass(std::size_t idx) const { return psi(kmag_[idx]); }

double FilterBank::partition_defect() const {
  double worst = 0.0;
  for (std::size_t idx = 0; idx < grid_.size(); ++idx) {
    if (kmag_[idx] == 0.0 || kmag_[idx] > grid_.k_max()) continue;
    double sum = low_pass(idx);
    for (int q = 0; q <= q_max_; ++q) sum += dense_[q][idx];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

double FilterBank::min_square_sum() const {
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < grid_.size(); ++idx) {
    if (kmag_[idx] == 0.0 || kmag_[idx] > grid_.k_max()) continue;
    double sum = 0.0;
    for (int q = 0; q <= q_max_; ++q) sum += dense_[q][idx] * dense_[q][idx];
    lowest = std::min(lowest, sum);
  }
  return lowest;
}

SpectralVelocity shell_project(const SpectralVelocity& u, const FilterBank& bank, int q) {
  if (!(u.grid == bank.grid())) throw ConfigError("field and filter bank use different grids");
  SpectralVelocity out(u.grid);
  out.time = u.time;
  for (const auto& e : bank.support(q)) {
    for (int c = 0; c < 3; ++c) out.coeffs[c][e.index] = e.weight * u.coeffs[c][e.index];
  }
  return out;
}

ShellDecomposition decompose(const SpectralVelocity& u, const FilterBank& bank) {
  ShellDecomposition d;
  d.q_min = bank.q_min();
  d.source_checksum = checksum(u);
  d.pieces.reserve(bank.shell_count());
  for (int q = bank.q_min(); q <= bank.q_max(); ++q) d.pieces.push_back(shell_project(u, bank, q));
  return d;
}

SpectralVelocity reconstruct(const ShellDecomposition& d) {
  if (d.pieces.empty()) throw RangeError("empty decomposition");
  SpectralVelocity out(d.pieces.front().grid);
  out.time = d.pieces.front().time;
  for (const auto& piece : d.pieces) {
    for (int c = 0; c < 3; ++c) {
      for (std::size_t i = 0; i < piece.coeffs[c].size(); ++i) out.coeffs[c][i] += piece.coeffs[c][i];
    }
  }
  return out;
}

SpectralVelocity truncate_low(const SpectralVelocity& u, const FilterBank& bank, int q_cut) {
  return apply_shell_range(u, bank, bank.q_min(), q_cut);
}

SpectralVelocity truncate_high(const SpectralVelocity& u, const FilterBank& bank, int q_cut) {
  return apply_shell_range(u, bank, q_cut, bank.q_max());
}

std::vector<double> shell_energies(const SpectralVelocity& u, const FilterBank& bank) {
  if (!(u.grid == bank.grid())) throw ConfigError("field and filter bank use different grids");
  std::vector<double> out(bank.shell_count(), 0.0);
  for (int q = 0; q <= bank.q_max(); ++q) {
    double sum = 0.0;
    for (const auto& e : bank.support(q)) {
      const double mode = std::norm(u.coeffs[0][e.index]) + std::norm(u.coeffs[1][e.index]) +
                          std::norm(u.coeffs[2][e.index]);
      sum += e.weight * e.weight * mode;
    }
    out[q] = kBoxVolume * sum;
  }
  return out;
}

double sobolev_seminorm_squared(const SpectralVelocity& u, const FilterBank& bank, double s) {
  const auto energies = shell_energies(u, bank);
  double sum = 0.0;
  for (int q = 0; q <= bank.q_max(); ++q) sum += std::exp2(2.0 * s * q) * energies[q];
  return sum;
}

double sobolev_norm(const SpectralVelocity& u, const FilterBank& bank, double s) {
  return std::sqrt(sobolev_seminorm_squared(u, bank, s));
}

double lp_norm(const PhysicalVelocity& f, double p) {
  if (!(p >= 1.0)) throw RangeError("L^p norm needs p >= 1");
  const std::size_t size = f.grid.size();
  if (std::isinf(p)) {
    double worst = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      const double s2 = f.values[0][i] * f.values[0][i] + f.values[1][i] * f.values[1][i] +
                        f.values[2][i] * f.values[2][i];
      worst = std::max(worst, s2);
    }
    return std::sqrt(worst);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double s2 = f.values[0][i] * f.values[0][i] + f.values[1][i] * f.values[1][i] +
                      f.values[2][i] * f.values[2][i];
    sum += p == 2.0 ? s2 : (p == 4.0 ? s2 * s2 : std::pow(s2, 0.5 * p));
  }
  return std::pow(sum * f.grid.cell_volume(), 1.0 / p);
}

double bernstein_ratio(const SpectralVelocity& u_q, const FilterBank& bank, int q, double p,
                       double r) {
  auto supported = [](double e) { return e == 2.0 || e == 4.0 || std::isinf(e); };
  if (!supported(p) || !supported(r) || p < r) {
    throw RangeError("Bernstein ratio needs p, r in {2, 4, inf} with r <= p");
  }
  if (!(u_q.grid == bank.grid())) throw ConfigError("field and filter bank use different grids");
  const auto entries = bank.support(q);
  std::vector<char> inside(u_q.grid.size(), 0);
  for (const auto& e : entries) inside[e.index] = 1;
  double outside = 0.0;
  double total = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < u_q.grid.size(); ++i) {
      const double m = std::norm(u_q.coeffs[c][i]);
      total += m;
      if (!inside[i]) outside += m;
    }
  }
  if (total == 0.0) throw UndefinedRatioError("Bernstein ratio of a zero field");
  if (outside > 1e-24 * total) {
    throw InvariantError("field has content outside shell " + std::to_string(q));
  }
  if (p == r) return 1.0;
  const PhysicalVelocity f = inverse_transform(u_q);
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double scale = std::pow(FilterBank::lambda(q), 3.0 * (inv_r - inv_p));
  return lp_norm(f, p) / (scale * lp_norm(f, r));
}

}  // namespace lpns
