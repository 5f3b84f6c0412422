#pragma once

#include <array>
#include <cstddef>

namespace lpns {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
// Volume of the periodic box [0, 2*pi)^3.
inline constexpr double kBoxVolume = kTwoPi * kTwoPi * kTwoPi;

/// Cubic periodic lattice on [0, 2*pi)^3 with n points per dimension.
///
/// Resolvable wavenumbers are the integers in [-n/2, n/2). Storage order
/// for both physical and spectral arrays is (x, y, z) with z fastest.
/// The dealias cutoff K_max = floor(fraction * n / 2) acts on the max-norm
/// of the wavevector.
class GridSpec {
 public:
  /// Throws ConfigError unless n is a power of two >= 16, the fraction
  /// num/den lies in (0, 1] and K_max >= 2.
  explicit GridSpec(int n, int dealias_num = 2, int dealias_den = 3);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  int dealias_num() const noexcept { return num_; }
  int dealias_den() const noexcept { return den_; }
  int k_max() const noexcept { return k_max_; }
  double dx() const noexcept { return kTwoPi / n_; }
  // Quadrature weight of one grid cell.
  double cell_volume() const noexcept { return kBoxVolume / static_cast<double>(size_); }

  // Largest max-norm wavenumber whose quadratic products are alias-free for
  // all modes of the same band: 3 * K < n.
  int alias_free_limit() const noexcept { return (n_ - 1) / 3; }

  int wavenumber(int index) const noexcept { return index < n_ / 2 ? index : index - n_; }

  std::size_t index(int i, int j, int l) const noexcept {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + l;
  }
  std::size_t index_of_wavevector(int kx, int ky, int kz) const noexcept {
    return index(wrap(kx), wrap(ky), wrap(kz));
  }
  // Index of -k (modulo the lattice).
  std::size_t conjugate_index(std::size_t idx) const noexcept;
  std::array<int, 3> wavevector(std::size_t idx) const noexcept;

  bool operator==(const GridSpec& o) const noexcept {
    return n_ == o.n_ && num_ * o.den_ == o.num_ * den_;
  }

 private:
  int wrap(int k) const noexcept { return ((k % n_) + n_) % n_; }

  int n_;
  int num_;
  int den_;
  int k_max_;
  std::size_t size_;
};

/// Visits every lattice point in storage order with its wavevector.
template <typename Fn>
void for_each_mode(const GridSpec& grid, Fn&& fn) {
  const int n = grid.n();
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const int kx = grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const int ky = grid.wavenumber(j);
      for (int l = 0; l < n; ++l, ++idx) {
        fn(idx, kx, ky, grid.wavenumber(l));
      }
    }
  }
}

}  // namespace lpns
