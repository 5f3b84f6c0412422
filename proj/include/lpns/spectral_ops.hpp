#pragma once

#include "lpns/fields.hpp"

namespace lpns {

/// Applies P(k) = I - k k^T / |k|^2 mode by mode; the k = 0 mode is left as is.
SpectralVelocity leray_project(const SpectralVelocity& u);
/// The same projection applied to one coefficient triple c[0..2] at k.
void project_mode(int kx, int ky, int kz, Complex* c);

/// Zeroes every coefficient whose wavevector has max_i |k_i| > K_max.
SpectralVelocity dealias(const SpectralVelocity& u);

/// max over nonzero modes of |k.c(k)| / (|k| |c(k)|).
double divergence_residual(const SpectralVelocity& u);

/// Fraction of the L2 norm carried by modes with max_i |k_i| > limit.
double energy_fraction_beyond(const SpectralVelocity& u, int limit);

/// Throws ConfigError unless quadratic products of u are alias-free on its
/// own support (modes beyond grid.alias_free_limit() carry < 1e-12 of the norm).
void require_alias_free(const SpectralVelocity& u);

// Norms are unnormalized integrals over the full box.
double l2_norm_squared(const SpectralVelocity& u);
double l2_norm(const SpectralVelocity& u);
double gradient_norm_squared(const SpectralVelocity& u);
/// Real L2 inner product (2*pi)^3 Re sum_k conj(u(k)).v(k).
double inner_product(const SpectralVelocity& u, const SpectralVelocity& v);

double l2_norm(const PhysicalVelocity& f);
/// max over grid points of the Euclidean magnitude |u(x)|.
double max_speed(const PhysicalVelocity& f);

}  // namespace lpns
