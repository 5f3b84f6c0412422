#pragma once

#include <span>
#include <vector>

#include "lpns/fields.hpp"

namespace lpns {

/// c(k) = n^-3 sum_x f(x) exp(-i k.x), i.e. (2*pi)^-3 times the integral.
/// Throws ConfigError if a component array does not match the grid.
SpectralVelocity forward_transform(const PhysicalVelocity& f);

/// Real-space synthesis. Throws InvariantError if the coefficients are not
/// Hermitian-symmetric to 1e-12 relative to their largest magnitude.
PhysicalVelocity inverse_transform(const SpectralVelocity& u);

// Scalar variants without invariant checks; the inverse keeps the real part.
std::vector<Complex> forward_scalar(const GridSpec& grid, std::span<const double> values);
std::vector<double> inverse_scalar(const GridSpec& grid, std::span<const Complex> coeffs);

/// max_k |c(k) - conj(c(-k))| / max_k |c(k)| over all components (0 for a zero field).
double hermitian_defect(const SpectralVelocity& u);

/// Replaces c by (c(k) + conj(c(-k)))/2; exact no-op on symmetric input.
void symmetrize(SpectralVelocity& u);

}  // namespace lpns
