#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "lpns/grid.hpp"

namespace lpns {

using Complex = std::complex<double>;

/// Fourier coefficients of a real velocity field on the torus,
/// u(x) = sum_k c(k) exp(i k.x), one complex lattice per component.
///
/// Invariants expected by most operations (checked where they matter):
/// Hermitian symmetry c(-k) = conj(c(k)), zero mean c(0) = 0 and k.c(k) = 0.
struct SpectralVelocity {
  explicit SpectralVelocity(const GridSpec& g)
      : grid(g), coeffs{std::vector<Complex>(g.size()), std::vector<Complex>(g.size()),
                        std::vector<Complex>(g.size())} {}

  Complex& at(int comp, int kx, int ky, int kz) {
    return coeffs[comp][grid.index_of_wavevector(kx, ky, kz)];
  }
  const Complex& at(int comp, int kx, int ky, int kz) const {
    return coeffs[comp][grid.index_of_wavevector(kx, ky, kz)];
  }

  GridSpec grid;
  std::array<std::vector<Complex>, 3> coeffs;
  double time = 0.0;
};

/// Point values of a velocity field on the uniform grid x = 2*pi*(i, j, l)/n.
struct PhysicalVelocity {
  explicit PhysicalVelocity(const GridSpec& g)
      : grid(g), values{std::vector<double>(g.size()), std::vector<double>(g.size()),
                        std::vector<double>(g.size())} {}

  GridSpec grid;
  std::array<std::vector<double>, 3> values;
};

/// Symmetric 3x3 tensor field stored as its six independent components
/// in the order xx, xy, xz, yy, yz, zz.
struct SymTensorField {
  explicit SymTensorField(const GridSpec& g) : grid(g) {
    for (auto& c : values) c.assign(g.size(), 0.0);
  }

  static constexpr int component(int i, int j) noexcept {
    constexpr int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return table[i][j];
  }
  double operator()(int i, int j, std::size_t idx) const { return values[component(i, j)][idx]; }

  GridSpec grid;
  std::array<std::vector<double>, 6> values;
};

SpectralVelocity operator+(const SpectralVelocity& a, const SpectralVelocity& b);
SpectralVelocity operator-(const SpectralVelocity& a, const SpectralVelocity& b);
SpectralVelocity operator*(double s, const SpectralVelocity& a);

/// Sum of the six-component L2 norm: (int sum_ij T_ij^2 dx)^(1/2).
double l2_norm(const SymTensorField& t);
SymTensorField operator-(const SymTensorField& a, const SymTensorField& b);

}  // namespace lpns
