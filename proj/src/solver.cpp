#include "lpns/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "lpns/errors.hpp"
#include "lpns/flux.hpp"
#include "lpns/spectral_ops.hpp"
#include "lpns/transform.hpp"

namespace lpns {

void SolverParams::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("nu must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be non-negative");
  if (diag_every < 1) throw ConfigError("diag_every must be at least 1");
  if (snapshot_every < 0) throw ConfigError("snapshot_every must be non-negative");
  if (!(riccati_s > 0.5 && riccati_s < 2.5)) throw ConfigError("s must satisfy 1/2 < s < 5/2");
}

long SolverParams::step_count() const {
  return static_cast<long>(std::ceil(t_end / dt - 1e-9));
}

double admissible_dt(const SpectralVelocity& u) {
  const double speed = max_speed(inverse_transform(u));
  if (speed == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * u.grid.dx() / speed;
}

Stepper::Stepper(const GridSpec& grid, double nu, double dt, bool nonlinear)
    : grid_(grid), nu_(nu), dt_(dt), nonlinear_(nonlinear) {
  decay_half_.resize(grid.size());
  decay_full_.resize(grid.size());
  for_each_mode(grid, [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
    decay_half_[idx] = std::exp(-nu * k2 * 0.5 * dt);
    decay_full_[idx] = std::exp(-nu * k2 * dt);
  });
}

SpectralVelocity Stepper::nonlinear_term(const SpectralVelocity& v, double* max_speed_out) const {
  constexpr int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  const GridSpec& g = grid_;
  std::array<std::vector<double>, 3> phys;
  for (int c = 0; c < 3; ++c) phys[c] = inverse_scalar(g, v.coeffs[c]);
  if (max_speed_out) {
    double m = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) {
      m = std::max(m, phys[0][x] * phys[0][x] + phys[1][x] * phys[1][x] + phys[2][x] * phys[2][x]);
    }
    *max_speed_out = std::sqrt(m);
  }
  std::array<std::vector<Complex>, 6> prod_hat;
  std::vector<double> prod(g.size());
  for (int t = 0; t < 6; ++t) {
    const auto& a = phys[pairs[t][0]];
    const auto& b = phys[pairs[t][1]];
    for (std::size_t x = 0; x < prod.size(); ++x) prod[x] = a[x] * b[x];
    prod_hat[t] = forward_scalar(g, prod);
  }
  SpectralVelocity out(g);
  const int kmax = g.k_max();
  const int nyq = -g.n() / 2;
  for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
    if (std::abs(kx) > kmax || std::abs(ky) > kmax || std::abs(kz) > kmax) return;
    if (kx == nyq || ky == nyq || kz == nyq) return;
    const double k[3] = {double(kx), double(ky), double(kz)};
    Complex f[3];
    for (int i = 0; i < 3; ++i) {
      Complex acc = 0.0;
      for (int j = 0; j < 3; ++j) acc += k[j] * prod_hat[SymTensorField::component(i, j)][idx];
      f[i] = Complex(0.0, -1.0) * acc;
    }
    project_mode(kx, ky, kz, f);
    for (int i = 0; i < 3; ++i) out.coeffs[i][idx] = f[i];
  });
  return out;
}

namespace {

// out = decay .* (x + h y), component-wise; y may be null.
void decay_axpy(const std::vector<double>& decay, const SpectralVelocity& x, double h,
                const SpectralVelocity* y, SpectralVelocity& out) {
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < decay.size(); ++i) {
      const Complex v = y ? x.coeffs[c][i] + h * y->coeffs[c][i] : x.coeffs[c][i];
      out.coeffs[c][i] = decay[i] * v;
    }
  }
}

bool all_finite(const SpectralVelocity& u) {
  for (const auto& comp : u.coeffs) {
    for (const auto& v : comp) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  }
  return true;
}

}  // namespace

void Stepper::advance(SpectralVelocity& u) {
  const double t0 = u.time;
  if (!nonlinear_) {
    for (int c = 0; c < 3; ++c) {
      for (std::size_t i = 0; i < decay_full_.size(); ++i) u.coeffs[c][i] *= decay_full_[i];
    }
  } else {
    double speed = 0.0;
    const SpectralVelocity a = nonlinear_term(u, &speed);
    if (speed > 0.0 && dt_ > 0.5 * grid_.dx() / speed) {
      const double allowed = 0.5 * grid_.dx() / speed;
      std::ostringstream msg;
      msg.precision(6);
      msg << "time step " << dt_ << " violates the CFL bound at t = " << t0
          << "; admissible dt <= " << allowed;
      throw StepSizeError(msg.str(), allowed);
    }
    const double h = dt_;
    SpectralVelocity stage(grid_);
    SpectralVelocity eu_half(grid_);
    decay_axpy(decay_half_, u, 0.0, nullptr, eu_half);

    decay_axpy(decay_half_, u, 0.5 * h, &a, stage);
    const SpectralVelocity b = nonlinear_term(stage);

    for (int c = 0; c < 3; ++c) {
      for (std::size_t i = 0; i < stage.coeffs[c].size(); ++i) {
        stage.coeffs[c][i] = eu_half.coeffs[c][i] + 0.5 * h * b.coeffs[c][i];
      }
    }
    const SpectralVelocity cterm = nonlinear_term(stage);

    // E(h) u + h E(h/2) c = E(h/2) (E(h/2) u + h c)
    decay_axpy(decay_half_, eu_half, h, &cterm, stage);
    const SpectralVelocity d = nonlinear_term(stage);

    for (int c = 0; c < 3; ++c) {
      for (std::size_t i = 0; i < decay_full_.size(); ++i) {
        const Complex lin = decay_full_[i] * u.coeffs[c][i];
        const Complex incr = decay_full_[i] * a.coeffs[c][i] +
                             2.0 * decay_half_[i] * (b.coeffs[c][i] + cterm.coeffs[c][i]) +
                             d.coeffs[c][i];
        u.coeffs[c][i] = lin + h / 6.0 * incr;
      }
    }
    symmetrize(u);
  }
  if (!all_finite(u)) {
    throw DivergenceError("non-finite velocity after the step from t = " + std::to_string(t0), t0);
  }
  u.time = t0 + dt_;
}

SpectralVelocity step(const SpectralVelocity& u, const SolverParams& params) {
  params.validate();
  Stepper stepper(u.grid, params.nu, params.dt, params.nonlinear_enabled);
  SpectralVelocity out = u;
  stepper.advance(out);
  return out;
}

TrajectoryRow sample_row(const SpectralVelocity& u, const FilterBank& bank,
                         const SolverParams& params) {
  TrajectoryRow row;
  row.t = u.time;
  row.energy = l2_norm_squared(u);
  row.enstrophy = gradient_norm_squared(u);
  row.h1 = sobolev_norm(u, bank, 1.0);
  row.h32 = sobolev_norm(u, bank, 1.5);
  const FluxReport rep = shell_flux_report(u, bank, params.riccati_s, params.nu, false);
  row.y = rep.riccati.y;
  row.riccati_lhs = rep.riccati.lhs;
  row.riccati_rhs = rep.riccati.rhs;
  row.riccati_scale = rep.riccati.lhs_scale;
  row.a = rep.abc.A;
  row.b = rep.abc.B;
  row.c = rep.abc.C;
  row.flux_sum = rep.flux_sum;
  row.shell_energies.reserve(rep.rows.size());
  for (const auto& r : rep.rows) row.shell_energies.push_back(r.energy);
  return row;
}

SimulationResult simulate(const SpectralVelocity& u0, const SolverParams& params,
                          const std::function<void(const TrajectoryRow&)>& on_row) {
  params.validate();
  require_alias_free(u0);
  const FilterBank bank(u0.grid);
  Stepper stepper(u0.grid, params.nu, params.dt, params.nonlinear_enabled);
  const long steps = params.step_count();
  const double t_start = u0.time;

  SimulationResult result;
  SpectralVelocity u = u0;
  auto emit = [&] {
    result.rows.push_back(sample_row(u, bank, params));
    if (on_row) on_row(result.rows.back());
  };
  emit();
  if (params.snapshot_every > 0) result.snapshots.push_back(u);
  for (long n = 1; n <= steps; ++n) {
    stepper.advance(u);
    // Avoid accumulating rounding in the clock.
    u.time = t_start + static_cast<double>(n) * params.dt;
    if (n % params.diag_every == 0) emit();
    if (params.snapshot_every > 0 && n % params.snapshot_every == 0) result.snapshots.push_back(u);
  }
  return result;
}

double energy_balance_residual(const std::vector<TrajectoryRow>& rows, double nu) {
  if (rows.size() < 3) throw RangeError("energy balance needs at least three rows");
  const double scale = std::max(rows.front().energy, 1e-14);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double dedt = (rows[i + 1].energy - rows[i - 1].energy) / (rows[i + 1].t - rows[i - 1].t);
    worst = std::max(worst, std::abs(dedt + 2.0 * nu * rows[i].enstrophy) / scale);
  }
  return worst;
}

}  // namespace lpns
