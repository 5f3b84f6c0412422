#pragma once

#include <span>
#include <vector>

#include "lpns/fields.hpp"
#include "lpns/filter_bank.hpp"

namespace lpns {

/// Per-shell norms: ||u_q||_2, ||u_q||_4 (grid quadrature) and ||grad u_q||_2^2.
struct ShellNorms {
  std::vector<double> l2;
  std::vector<double> l4;
  std::vector<double> grad2;
};

/// L4 norms are only computed (one inverse transform per shell) when requested.
ShellNorms shell_norms(const SpectralVelocity& u, const FilterBank& bank, bool with_l4 = true);

/// (u (x) u)_q: the phi_q projection of each pointwise product u_i u_j.
/// ConfigError if u is not alias-free.
SymTensorField tensor_shell(const SpectralVelocity& u, const FilterBank& bank, int q);

/// r_q(u, u) = (u (x) u)_q - u_q (x) u - u (x) u_q. RangeError for q < 0.
SymTensorField remainder(const SpectralVelocity& u, const FilterBank& bank, int q);

/// transfer_q = int Tr[(u (x) u)_q . grad u_q] dx for every shell of the bank.
std::vector<double> shell_transfers(const SpectralVelocity& u, const FilterBank& bank);

/// int Tr[(u (x) u)_q . grad u] dx for every shell. These add up to
/// int (u.grad u).u dx, which vanishes for divergence-free u.
std::vector<double> conservative_transfers(const SpectralVelocity& u, const FilterBank& bank);

/// The nonlinear term of shell q split along the remainder decomposition:
///   integral_r    = int r_q : grad u_q
///   integral_low  = -int u_q . grad u_{<=q+1} . u_q
///   integral_tail = -int u_q . grad u_{>=q+2} . u_q
/// For divergence-free u, transfer_q = integral_r + integral_low + integral_tail.
/// The tail is nonzero in general: u_q (x) u_q reaches |k| < 2^(q+2), which
/// overlaps the support of u_{q+2}.
struct NltSplit {
  double integral_r = 0.0;
  double integral_low = 0.0;
  double integral_tail = 0.0;
};
NltSplit nlt_split(const SpectralVelocity& u, const FilterBank& bank, int q);

/// Both sides of the trace bound for shell q:
///   lhs  = transfer_q
///   rhs1 = lambda_q^-1 ||u_q||_2 sum_{p<=q} lambda_p^2 ||u_p||_4^2
///   rhs2 = lambda_q ||u_q||_2 sum_{p>q} ||u_p||_4^2
///   rhs3 = ||u_q||_2^2 sum_{p<=q+1} lambda_p^(5/2) ||u_p||_2
struct Lemma1Sides {
  double lhs = 0.0;
  double rhs1 = 0.0;
  double rhs2 = 0.0;
  double rhs3 = 0.0;
  double rhs_total() const noexcept { return rhs1 + rhs2 + rhs3; }
};
Lemma1Sides lemma1_sides(const SpectralVelocity& u, const FilterBank& bank, int q);
Lemma1Sides lemma1_sides(const ShellNorms& norms, std::span<const double> transfers, int q);

struct TriSums {
  double s = 0.0;
  double nu = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

/// A = sum_q sum_{p<=q} lambda_q^(2s-1) ||u_q||_2 lambda_p^2 ||u_p||_4^2
/// B = sum_q sum_{p>q}  lambda_q^(2s+1) ||u_q||_2 ||u_p||_4^2
/// C = sum_q sum_{p<=q+1} lambda_q^(2s) ||u_q||_2^2 lambda_p^(5/2) ||u_p||_2
/// RangeError unless 1/2 < s < 5/2 and nu > 0.
TriSums abc_sums(const SpectralVelocity& u, const FilterBank& bank, double s, double nu);
TriSums abc_sums(const ShellNorms& norms, double s, double nu);

struct AbcConstants {
  double k_a = 0.0;
  double k_b = 0.0;
  double k_c = 0.0;
};

/// K_X = max over the ensemble of X / D with
/// D = nu sum_q (nu^-1 lambda_q^(2s) ||u_q||^2)^((2s+1)/(2s-1)) + (nu/3) sum_q lambda_q^(2s+2) ||u_q||^2.
/// Zero fields are skipped; UndefinedRatioError if nothing remains.
AbcConstants estimate_abc_constants(std::span<const SpectralVelocity> ensemble,
                                    const FilterBank& bank, double s, double nu);

/// Exponent (2s+1)/(2s-1) of the Riccati-type inequality.
double riccati_exponent(double s);

struct RiccatiSides {
  double s = 0.0;
  double exponent = 0.0;
  double lhs = 0.0;  // d/dt y along the flow
  double rhs = 0.0;  // sum_q (lambda_q^(2s) ||u_q||^2)^exponent
  double y = 0.0;    // sum_q lambda_q^(2s) ||u_q||^2
  // sum_q lambda_q^(2s) (2 nu ||grad u_q||^2 + 2 |transfer_q|): magnitude of
  // the terms that make up lhs, used to normalize comparisons against lhs.
  double lhs_scale = 0.0;
};

/// lhs = sum_q lambda_q^(2s) (-2 nu ||grad u_q||^2 + 2 transfer_q), the exact
/// time derivative of y for the Navier-Stokes flow through u.
RiccatiSides riccati_sides(const SpectralVelocity& u, const FilterBank& bank, double s, double nu);

struct ShellFluxRow {
  int q = 0;
  double energy = 0.0;                 // ||u_q||_2^2
  double transfer = 0.0;               // int Tr[(u (x) u)_q . grad u_q]
  double dissipation_exact = 0.0;      // 2 nu ||grad u_q||_2^2
  double dissipation_surrogate = 0.0;  // 2 nu lambda_q^2 ||u_q||_2^2
  double remainder_l2 = 0.0;           // ||r_q(u, u)||_2
  Lemma1Sides lemma1;
};

struct FluxReport {
  std::vector<ShellFluxRow> rows;
  TriSums abc;
  RiccatiSides riccati;
  double flux_sum = 0.0;      // sum_q transfer_q
  double flux_abs_sum = 0.0;  // sum_q |transfer_q|
  double conservative_flux_sum = 0.0;
  double conservative_flux_abs_sum = 0.0;
};

/// Aggregates all per-shell diagnostics; remainder norms cost six inverse
/// transforms per shell and can be skipped.
FluxReport shell_flux_report(const SpectralVelocity& u, const FilterBank& bank, double s,
                             double nu, bool with_remainder = true);

}  // namespace lpns
