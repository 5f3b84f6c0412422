#include "lpns/flux.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "lpns/errors.hpp"
#include "lpns/parallel.hpp"
#include "lpns/spectral_ops.hpp"
#include "lpns/transform.hpp"

namespace lpns {
namespace {

constexpr int kPairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};

// Physical field plus the DFT of the six grid products u_i u_j.
struct Products {
  explicit Products(const SpectralVelocity& u) : phys(u.grid) {
    require_alias_free(u);
    for (int c = 0; c < 3; ++c) phys.values[c] = inverse_scalar(u.grid, u.coeffs[c]);
    std::vector<double> prod(u.grid.size());
    for (int t = 0; t < 6; ++t) {
      const auto& a = phys.values[kPairs[t][0]];
      const auto& b = phys.values[kPairs[t][1]];
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a[i] * b[i];
      hat[t] = forward_scalar(u.grid, prod);
    }
  }

  PhysicalVelocity phys;
  std::array<std::vector<Complex>, 6> hat;
};

void require_bank(const SpectralVelocity& u, const FilterBank& bank) {
  if (!(u.grid == bank.grid())) throw ConfigError("field and filter bank use different grids");
}

// Derivative wavenumber: the unpaired Nyquist index differentiates to zero.
int deriv_k(const GridSpec& grid, int k) { return k == -grid.n() / 2 ? 0 : k; }

// g(k) = Re sum_ij T_ij(k) conj(i k_j u_i(k)); transfer densities in Fourier space.
std::vector<double> transfer_density(const SpectralVelocity& u, const Products& p) {
  std::vector<double> g(u.grid.size(), 0.0);
  for_each_mode(u.grid, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k[3] = {double(deriv_k(u.grid, kx)), double(deriv_k(u.grid, ky)),
                         double(deriv_k(u.grid, kz))};
    Complex acc = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Complex cu = std::conj(u.coeffs[i][idx]);
      if (cu == 0.0) continue;
      for (int j = 0; j < 3; ++j) {
        acc += p.hat[SymTensorField::component(i, j)][idx] * Complex(0.0, -k[j]) * cu;
      }
    }
    g[idx] = acc.real();
  });
  return g;
}

std::vector<double> weighted_shell_sums(const FilterBank& bank, const std::vector<double>& g,
                                        int power) {
  std::vector<double> out(bank.shell_count(), 0.0);
  for (int q = 0; q <= bank.q_max(); ++q) {
    double sum = 0.0;
    for (const auto& e : bank.support(q)) {
      sum += (power == 2 ? e.weight * e.weight : e.weight) * g[e.index];
    }
    out[q] = kBoxVolume * sum;
  }
  return out;
}

SymTensorField tensor_from(const Products& p, const FilterBank& bank, int q) {
  const GridSpec& grid = bank.grid();
  SymTensorField out(grid);
  const auto entries = bank.support(q);
  std::vector<Complex> spec(grid.size());
  for (int t = 0; t < 6; ++t) {
    std::fill(spec.begin(), spec.end(), Complex(0.0));
    for (const auto& e : entries) spec[e.index] = e.weight * p.hat[t][e.index];
    out.values[t] = inverse_scalar(grid, spec);
  }
  return out;
}

SymTensorField remainder_from(const Products& p, const SpectralVelocity& u, const FilterBank& bank,
                              int q) {
  SymTensorField r = tensor_from(p, bank, q);
  const SpectralVelocity uq = shell_project(u, bank, q);
  std::array<std::vector<double>, 3> uq_phys;
  for (int c = 0; c < 3; ++c) uq_phys[c] = inverse_scalar(u.grid, uq.coeffs[c]);
  for (int t = 0; t < 6; ++t) {
    const int i = kPairs[t][0];
    const int j = kPairs[t][1];
    auto& out = r.values[t];
    for (std::size_t x = 0; x < out.size(); ++x) {
      out[x] -= uq_phys[i][x] * p.phys.values[j][x] + p.phys.values[i][x] * uq_phys[j][x];
    }
  }
  return r;
}

// grad[3*i + j] = d_j v_i on the grid.
std::array<std::vector<double>, 9> physical_gradient(const SpectralVelocity& v) {
  std::array<std::vector<double>, 9> grad;
  std::vector<Complex> spec(v.grid.size());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for_each_mode(v.grid, [&](std::size_t idx, int kx, int ky, int kz) {
        const int k[3] = {kx, ky, kz};
        spec[idx] = Complex(0.0, double(deriv_k(v.grid, k[j]))) * v.coeffs[i][idx];
      });
      grad[3 * i + j] = inverse_scalar(v.grid, spec);
    }
  }
  return grad;
}

// -int a_j d_j(b)_i a_i dx by grid quadrature.
double stretching_integral(const std::array<std::vector<double>, 3>& a,
                           const std::array<std::vector<double>, 9>& grad_b, double cell) {
  double sum = 0.0;
  for (std::size_t x = 0; x < a[0].size(); ++x) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) sum += a[j][x] * grad_b[3 * i + j][x] * a[i][x];
    }
  }
  return -sum * cell;
}

void require_s_range(double s) {
  if (!(s > 0.5 && s < 2.5)) {
    throw RangeError("s must satisfy 1/2 < s < 5/2, got " + std::to_string(s));
  }
}

double lambda_pow(int q, double e) { return std::exp2(e * q); }

}  // namespace

ShellNorms shell_norms(const SpectralVelocity& u, const FilterBank& bank, bool with_l4) {
  require_bank(u, bank);
  const int shells = bank.shell_count();
  ShellNorms n;
  n.l2.assign(shells, 0.0);
  n.l4.assign(shells, 0.0);
  n.grad2.assign(shells, 0.0);
  std::vector<double> k2(u.grid.size());
  for_each_mode(u.grid, [&](std::size_t idx, int kx, int ky, int kz) {
    k2[idx] = double(kx) * kx + double(ky) * ky + double(kz) * kz;
  });
  for (int q = 0; q < shells; ++q) {
    double e = 0.0;
    double g = 0.0;
    for (const auto& entry : bank.support(q)) {
      const std::size_t i = entry.index;
      const double m = std::norm(u.coeffs[0][i]) + std::norm(u.coeffs[1][i]) + std::norm(u.coeffs[2][i]);
      const double w2 = entry.weight * entry.weight;
      e += w2 * m;
      g += w2 * k2[i] * m;
    }
    n.l2[q] = std::sqrt(kBoxVolume * e);
    n.grad2[q] = kBoxVolume * g;
  }
  if (with_l4) {
    parallel_for(static_cast<std::size_t>(shells), [&](std::size_t q) {
      if (n.l2[q] == 0.0) return;
      const SpectralVelocity piece = shell_project(u, bank, static_cast<int>(q));
      PhysicalVelocity f(u.grid);
      for (int c = 0; c < 3; ++c) f.values[c] = inverse_scalar(u.grid, piece.coeffs[c]);
      n.l4[q] = lp_norm(f, 4.0);
    });
  }
  return n;
}

SymTensorField tensor_shell(const SpectralVelocity& u, const FilterBank& bank, int q) {
  require_bank(u, bank);
  bank.support(q);  // range check before the transforms
  return tensor_from(Products(u), bank, q);
}

SymTensorField remainder(const SpectralVelocity& u, const FilterBank& bank, int q) {
  require_bank(u, bank);
  if (q < 0) throw RangeError("remainder is defined for q >= 0 only");
  bank.support(q);
  return remainder_from(Products(u), u, bank, q);
}

std::vector<double> shell_transfers(const SpectralVelocity& u, const FilterBank& bank) {
  require_bank(u, bank);
  const Products p(u);
  return weighted_shell_sums(bank, transfer_density(u, p), 2);
}

std::vector<double> conservative_transfers(const SpectralVelocity& u, const FilterBank& bank) {
  require_bank(u, bank);
  const Products p(u);
  return weighted_shell_sums(bank, transfer_density(u, p), 1);
}

NltSplit nlt_split(const SpectralVelocity& u, const FilterBank& bank, int q) {
  require_bank(u, bank);
  if (q < 0) throw RangeError("remainder is defined for q >= 0 only");
  bank.support(q);
  const Products p(u);
  const double cell = u.grid.cell_volume();

  const SpectralVelocity uq = shell_project(u, bank, q);
  std::array<std::vector<double>, 3> uq_phys;
  for (int c = 0; c < 3; ++c) uq_phys[c] = inverse_scalar(u.grid, uq.coeffs[c]);

  NltSplit out;
  {
    const SymTensorField r = remainder_from(p, u, bank, q);
    const auto grad_uq = physical_gradient(uq);
    double sum = 0.0;
    for (std::size_t x = 0; x < u.grid.size(); ++x) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) sum += r(i, j, x) * grad_uq[3 * i + j][x];
      }
    }
    out.integral_r = sum * cell;
  }
  out.integral_low = stretching_integral(uq_phys, physical_gradient(truncate_low(u, bank, q + 1)), cell);
  out.integral_tail = stretching_integral(uq_phys, physical_gradient(truncate_high(u, bank, q + 2)), cell);
  return out;
}

Lemma1Sides lemma1_sides(const ShellNorms& norms, std::span<const double> transfers, int q) {
  const int shells = static_cast<int>(norms.l2.size());
  if (q < 0 || q >= shells) throw RangeError("shell " + std::to_string(q) + " outside the bank");
  Lemma1Sides s;
  s.lhs = transfers[q];
  const double uq = norms.l2[q];
  double low = 0.0;
  double high = 0.0;
  double near = 0.0;
  for (int p = 0; p < shells; ++p) {
    const double l4sq = norms.l4[p] * norms.l4[p];
    if (p <= q) low += lambda_pow(p, 2.0) * l4sq;
    if (p > q) high += l4sq;
    if (p <= q + 1) near += lambda_pow(p, 2.5) * norms.l2[p];
  }
  s.rhs1 = uq * low / FilterBank::lambda(q);
  s.rhs2 = FilterBank::lambda(q) * uq * high;
  s.rhs3 = uq * uq * near;
  return s;
}

Lemma1Sides lemma1_sides(const SpectralVelocity& u, const FilterBank& bank, int q) {
  bank.support(q);
  const ShellNorms norms = shell_norms(u, bank, true);
  const auto transfers = shell_transfers(u, bank);
  return lemma1_sides(norms, transfers, q);
}

TriSums abc_sums(const ShellNorms& norms, double s, double nu) {
  require_s_range(s);
  if (!(nu > 0.0)) throw RangeError("viscosity must be positive");
  TriSums t;
  t.s = s;
  t.nu = nu;
  const int shells = static_cast<int>(norms.l2.size());
  for (int q = 0; q < shells; ++q) {
    const double uq = norms.l2[q];
    if (uq == 0.0) continue;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    for (int p = 0; p < shells; ++p) {
      const double l4sq = norms.l4[p] * norms.l4[p];
      if (p <= q) a += lambda_pow(p, 2.0) * l4sq;
      else b += l4sq;
      if (p <= q + 1) c += lambda_pow(p, 2.5) * norms.l2[p];
    }
    t.A += lambda_pow(q, 2.0 * s - 1.0) * uq * a;
    t.B += lambda_pow(q, 2.0 * s + 1.0) * uq * b;
    t.C += lambda_pow(q, 2.0 * s) * uq * uq * c;
  }
  return t;
}

TriSums abc_sums(const SpectralVelocity& u, const FilterBank& bank, double s, double nu) {
  require_s_range(s);
  if (!(nu > 0.0)) throw RangeError("viscosity must be positive");
  return abc_sums(shell_norms(u, bank, true), s, nu);
}

double riccati_exponent(double s) {
  require_s_range(s);
  return (2.0 * s + 1.0) / (2.0 * s - 1.0);
}

AbcConstants estimate_abc_constants(std::span<const SpectralVelocity> ensemble,
                                    const FilterBank& bank, double s, double nu) {
  const double beta = riccati_exponent(s);
  if (!(nu > 0.0)) throw RangeError("viscosity must be positive");
  std::vector<ShellNorms> norms(ensemble.size());
  parallel_for(ensemble.size(), [&](std::size_t i) { norms[i] = shell_norms(ensemble[i], bank, true); });

  AbcConstants k;
  bool any = false;
  for (const auto& n : norms) {
    double riccati_part = 0.0;
    double dissipative_part = 0.0;
    for (std::size_t q = 0; q < n.l2.size(); ++q) {
      const double e = n.l2[q] * n.l2[q];
      riccati_part += std::pow(lambda_pow(static_cast<int>(q), 2.0 * s) * e / nu, beta);
      dissipative_part += lambda_pow(static_cast<int>(q), 2.0 * s + 2.0) * e;
    }
    const double denom = nu * riccati_part + nu / 3.0 * dissipative_part;
    if (denom == 0.0) continue;
    const TriSums t = abc_sums(n, s, nu);
    k.k_a = std::max(k.k_a, t.A / denom);
    k.k_b = std::max(k.k_b, t.B / denom);
    k.k_c = std::max(k.k_c, t.C / denom);
    any = true;
  }
  if (!any) throw UndefinedRatioError("ensemble contains only zero fields");
  return k;
}

RiccatiSides riccati_sides(const SpectralVelocity& u, const FilterBank& bank, double s, double nu) {
  RiccatiSides r;
  r.s = s;
  r.exponent = riccati_exponent(s);
  const ShellNorms norms = shell_norms(u, bank, false);
  const auto transfers = shell_transfers(u, bank);
  for (int q = 0; q < bank.shell_count(); ++q) {
    const double w = lambda_pow(q, 2.0 * s);
    const double yq = w * norms.l2[q] * norms.l2[q];
    r.y += yq;
    r.rhs += yq > 0.0 ? std::pow(yq, r.exponent) : 0.0;
    r.lhs += w * (-2.0 * nu * norms.grad2[q] + 2.0 * transfers[q]);
    r.lhs_scale += w * (2.0 * nu * norms.grad2[q] + 2.0 * std::abs(transfers[q]));
  }
  return r;
}

FluxReport shell_flux_report(const SpectralVelocity& u, const FilterBank& bank, double s,
                             double nu, bool with_remainder) {
  require_bank(u, bank);
  require_s_range(s);
  const Products p(u);
  const auto density = transfer_density(u, p);
  const auto transfers = weighted_shell_sums(bank, density, 2);
  const auto conservative = weighted_shell_sums(bank, density, 1);
  const ShellNorms norms = shell_norms(u, bank, true);

  FluxReport report;
  report.rows.resize(bank.shell_count());
  parallel_for(report.rows.size(), [&](std::size_t qi) {
    const int q = static_cast<int>(qi);
    ShellFluxRow& row = report.rows[qi];
    row.q = q;
    row.energy = norms.l2[q] * norms.l2[q];
    row.transfer = transfers[q];
    row.dissipation_exact = 2.0 * nu * norms.grad2[q];
    row.dissipation_surrogate = 2.0 * nu * lambda_pow(q, 2.0) * row.energy;
    if (with_remainder) row.remainder_l2 = l2_norm(remainder_from(p, u, bank, q));
    row.lemma1 = lemma1_sides(norms, transfers, q);
  });
  for (int q = 0; q < bank.shell_count(); ++q) {
    report.flux_sum += transfers[q];
    report.flux_abs_sum += std::abs(transfers[q]);
    report.conservative_flux_sum += conservative[q];
    report.conservative_flux_abs_sum += std::abs(conservative[q]);
  }
  if (nu > 0.0) report.abc = abc_sums(norms, s, nu);

  RiccatiSides& r = report.riccati;
  r.s = s;
  r.exponent = riccati_exponent(s);
  for (int q = 0; q < bank.shell_count(); ++q) {
    const double w = lambda_pow(q, 2.0 * s);
    const double yq = w * norms.l2[q] * norms.l2[q];
    r.y += yq;
    r.rhs += yq > 0.0 ? std::pow(yq, r.exponent) : 0.0;
    r.lhs += w * (-2.0 * nu * norms.grad2[q] + 2.0 * transfers[q]);
    r.lhs_scale += w * (2.0 * nu * norms.grad2[q] + 2.0 * std::abs(transfers[q]));
  }
  return report;
}

}  // namespace lpns
