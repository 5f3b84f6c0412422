#pragma once

#include <cstdint>
#include <map>

#include "lpns/fields.hpp"

namespace lpns {

/// a * (sin x cos y cos z, -cos x sin y cos z, 0); all modes at |k| = sqrt(3).
SpectralVelocity make_taylor_green(const GridSpec& grid, double amplitude);

/// Seeded divergence-free random field with prescribed shell energies.
///
/// Each key q of `spectrum` adds a white, solenoidal band on the lattice
/// shell 2^(q-1) < |k| <= 2^q. Band amplitudes are then solved so that
/// ||u_q||_2^2 equals spectrum[q] for every requested shell (a band only
/// leaks into the shell below it, so the system is triangular). The random
/// coefficients depend only on (seed, q, k), never on the grid size, so the
/// same seed produces the same continuous field on every grid that resolves it.
///
/// Throws ConfigError for shells with 2^q > K_max, negative energies, or
/// spectra whose lower shells cannot absorb the leakage from the band above.
SpectralVelocity make_random_field(const GridSpec& grid, std::uint64_t seed,
                                   const std::map<int, double>& spectrum);

/// Member of the seeded test ensemble: bands 0..top_band with shell energies
/// 2^-q (0.75 + 0.5 v_q), v_q uniform on [0, 1) drawn from the seed.
SpectralVelocity make_ensemble_field(const GridSpec& grid, std::uint64_t seed, int top_band = 2);

/// Single real Fourier mode a * e * sin(k.x) with e perpendicular to k
/// (divergence-free). ||u||_2 = a (2 pi)^(3/2) / sqrt(2) for a unit e.
SpectralVelocity make_sine_mode(const GridSpec& grid, int kx, int ky, int kz, double ex,
                                double ey, double ez, double amplitude);

}  // namespace lpns
