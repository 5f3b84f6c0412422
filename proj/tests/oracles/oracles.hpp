#pragma once

#include <array>
#include <vector>

#include "lpns/fields.hpp"

// Brute-force reference computations. None of these use FFTs or the
// production summation paths; they exist to cross-check them.
namespace lpns::oracle {

/// Direct Fourier synthesis u(x) = sum_k c(k) exp(i k.x), one separable pass
/// per axis with explicit twiddle tables.
PhysicalVelocity synthesize(const SpectralVelocity& u);

/// Convolution kernel of the shell-q multiplier on the lattice:
/// w(y_m) = n^-3 sum_k phi_q(|k|) cos(k.y_m), evaluated by direct summation.
std::vector<double> shell_kernel(const GridSpec& grid, int q);

/// r_q(x) = sum_y w(y) (u(x-y) - u(x)) (x) (u(x-y) - u(x)), O(n^6).
/// `magnitude` holds the same sum with |w| and |d_i d_j|: the size of the
/// summands, against which round-off in `value` is measured.
struct KernelRemainder {
  explicit KernelRemainder(const GridSpec& g) : value(g), magnitude(g) {}
  SymTensorField value;
  SymTensorField magnitude;
};
KernelRemainder kernel_remainder(const SpectralVelocity& u, int q);

/// A, B, C by an explicit double loop over (q, p) pairs, from per-shell L2
/// and L4 norms supplied by the caller.
std::array<double, 3> trisums_double_loop(const std::vector<double>& l2,
                                          const std::vector<double>& l4, double s);

}  // namespace lpns::oracle
