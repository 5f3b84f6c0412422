#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lpns/fields.hpp"

namespace lpns {

/// Smooth radial cutoff: 1 on [0, 1/2], 0 on [1, inf), and
/// B(2-2r) / (B(2-2r) + B(2r-1)) in between with B(t) = exp(-1/t) for t > 0.
double psi(double r);

/// Dyadic multiplier phi_q(|k|) = psi(|k| / 2^(q+1)) - psi(|k| / 2^q).
double shell_weight(int q, double kmag);

/// Identifier of the cutoff profile, recorded alongside every output.
inline constexpr std::string_view kPsiProfileId = "exp-bump-ratio/v1";

struct ShellEntry {
  std::size_t index;
  double weight;
};

/// Dyadic Littlewood-Paley multipliers phi_q evaluated on every lattice
/// point for shells q = 0 .. q_max, with q_max = ceil(log2 K_max) + 1.
/// Immutable after construction.
class FilterBank {
 public:
  explicit FilterBank(const GridSpec& grid);

  const GridSpec& grid() const noexcept { return grid_; }
  int q_min() const noexcept { return 0; }
  int q_max() const noexcept { return q_max_; }
  int shell_count() const noexcept { return q_max_ + 1; }
  bool contains(int q) const noexcept { return q >= 0 && q <= q_max_; }
  static double lambda(int q);

  /// phi_q at a lattice index; RangeError for shells outside the bank.
  double weight(int q, std::size_t idx) const;
  /// Lattice points where phi_q is nonzero, in storage order.
  std::span<const ShellEntry> support(int q) const;
  /// psi(|k|) at a lattice index (only k = 0 is nonzero on the integer lattice).
  double low_pass(std::size_t idx) const;

  /// max over 0 < |k| <= K_max of |psi(|k|) + sum_q phi_q(k) - 1|.
  double partition_defect() const;
  /// inf over 0 < |k| <= K_max of sum_q phi_q(k)^2 (lower L2 frame bound).
  double min_square_sum() const;

 private:
  void check(int q) const;

  GridSpec grid_;
  int q_max_;
  std::vector<std::vector<double>> dense_;
  std::vector<std::vector<ShellEntry>> support_;
  std::vector<double> kmag_;
};

/// u_q: coefficients phi_q(k) c(k). RangeError if q is outside the bank.
SpectralVelocity shell_project(const SpectralVelocity& u, const FilterBank& bank, int q);

struct ShellDecomposition {
  int q_min = 0;
  std::vector<SpectralVelocity> pieces;
  std::size_t source_checksum = 0;

  int q_max() const noexcept { return q_min + static_cast<int>(pieces.size()) - 1; }
  const SpectralVelocity& piece(int q) const { return pieces.at(static_cast<std::size_t>(q - q_min)); }
};

ShellDecomposition decompose(const SpectralVelocity& u, const FilterBank& bank);
SpectralVelocity reconstruct(const ShellDecomposition& d);

/// u_{<=Q} = sum_{q <= Q} u_q. Q below the bank gives zero, above gives all shells.
SpectralVelocity truncate_low(const SpectralVelocity& u, const FilterBank& bank, int q_cut);
/// u_{>=Q} = sum_{q >= Q} u_q.
SpectralVelocity truncate_high(const SpectralVelocity& u, const FilterBank& bank, int q_cut);

/// ||u_q||_2^2 for every shell of the bank.
std::vector<double> shell_energies(const SpectralVelocity& u, const FilterBank& bank);

/// sum_q lambda_q^(2s) ||u_q||_2^2.
double sobolev_seminorm_squared(const SpectralVelocity& u, const FilterBank& bank, double s);
/// Homogeneous Sobolev norm (sum_q lambda_q^(2s) ||u_q||_2^2)^(1/2).
double sobolev_norm(const SpectralVelocity& u, const FilterBank& bank, double s);

/// Physical-space L^p norm of |u(x)| by grid quadrature; p = infinity gives the max.
double lp_norm(const PhysicalVelocity& f, double p);

/// ||u_q||_p / (lambda_q^(3(1/r - 1/p)) ||u_q||_r) for p, r in {2, 4, inf}, r <= p.
/// Throws InvariantError if u_q has content outside shell q, RangeError for
/// unsupported exponents and UndefinedRatioError for a zero field.
double bernstein_ratio(const SpectralVelocity& u_q, const FilterBank& bank, int q, double p,
                       double r);

}  // namespace lpns
