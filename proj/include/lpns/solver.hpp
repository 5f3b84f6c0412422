#pragma once

#include <functional>
#include <vector>

#include "lpns/fields.hpp"
#include "lpns/filter_bank.hpp"

namespace lpns {

struct SolverParams {
  double nu = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  int diag_every = 1;      // steps between diagnostic rows
  int snapshot_every = 0;  // steps between snapshots; 0 disables them
  bool nonlinear_enabled = true;
  double riccati_s = 1.5;  // s used for y, the Riccati sides and A, B, C

  /// ConfigError on nu <= 0, dt <= 0, t_end < 0, bad cadences or s outside (1/2, 5/2).
  void validate() const;
  /// Number of steps needed to reach t_end.
  long step_count() const;
};

/// Largest step allowed by the CFL bound 0.5 dx / max|u| (infinity for u = 0).
double admissible_dt(const SpectralVelocity& u);

/// Integrating-factor RK4 for the dealiased, Leray-projected equations
///   du/dt = -P div(u (x) u) + nu lap u.
/// The viscous factor exp(-nu |k|^2 h) is applied exactly, so the heat
/// equation (nonlinearity off) is reproduced to rounding.
class Stepper {
 public:
  Stepper(const GridSpec& grid, double nu, double dt, bool nonlinear);

  /// Advances u by one step in place. Throws StepSizeError (before touching u)
  /// when dt exceeds the CFL bound and DivergenceError on non-finite output.
  void advance(SpectralVelocity& u);

  /// -P dealias(div(v (x) v)), computed pseudo-spectrally (nine transforms).
  SpectralVelocity nonlinear_term(const SpectralVelocity& v, double* max_speed = nullptr) const;

 private:
  GridSpec grid_;
  double nu_;
  double dt_;
  bool nonlinear_;
  std::vector<double> decay_half_;
  std::vector<double> decay_full_;
};

/// One step from u; convenience wrapper around Stepper.
SpectralVelocity step(const SpectralVelocity& u, const SolverParams& params);

struct TrajectoryRow {
  double t = 0.0;
  double energy = 0.0;     // ||u||_2^2
  double enstrophy = 0.0;  // ||grad u||_2^2
  double h1 = 0.0;         // shell-sum Sobolev norm, s = 1
  double h32 = 0.0;        // s = 3/2
  double y = 0.0;
  double riccati_lhs = 0.0;
  double riccati_rhs = 0.0;
  double riccati_scale = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double flux_sum = 0.0;
  std::vector<double> shell_energies;
};

TrajectoryRow sample_row(const SpectralVelocity& u, const FilterBank& bank,
                         const SolverParams& params);

struct SimulationResult {
  std::vector<TrajectoryRow> rows;
  std::vector<SpectralVelocity> snapshots;
};

/// Runs from u0.time to t_end, sampling a row every diag_every steps (and
/// at the start) and a snapshot every snapshot_every steps. `on_row`, when
/// set, is called as each row is produced.
SimulationResult simulate(const SpectralVelocity& u0, const SolverParams& params,
                          const std::function<void(const TrajectoryRow&)>& on_row = {});

/// max over interior rows of |centered dE/dt + 2 nu enstrophy| / max(E(0), 1e-14).
/// RangeError for fewer than three rows.
double energy_balance_residual(const std::vector<TrajectoryRow>& rows, double nu);

}  // namespace lpns
