#include "lpns/grid.hpp"

#include <string>

#include "lpns/errors.hpp"

namespace lpns {

GridSpec::GridSpec(int n, int dealias_num, int dealias_den)
    : n_(n), num_(dealias_num), den_(dealias_den), k_max_(0), size_(0) {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw ConfigError("grid size must be a power of two >= 16, got " + std::to_string(n));
  }
  if (dealias_den <= 0 || dealias_num <= 0 || dealias_num > dealias_den) {
    throw ConfigError("dealias fraction must lie in (0, 1], got " + std::to_string(dealias_num) +
                      "/" + std::to_string(dealias_den));
  }
  k_max_ = (dealias_num * n) / (2 * dealias_den);
  if (k_max_ < 2) {
    throw ConfigError("dealias cutoff K_max = " + std::to_string(k_max_) + " is below 2");
  }
  size_ = static_cast<std::size_t>(n) * n * n;
}

std::size_t GridSpec::conjugate_index(std::size_t idx) const noexcept {
  const std::size_t nn = static_cast<std::size_t>(n_);
  const std::size_t l = idx % nn;
  const std::size_t j = (idx / nn) % nn;
  const std::size_t i = idx / (nn * nn);
  auto neg = [nn](std::size_t a) { return a == 0 ? 0 : nn - a; };
  return (neg(i) * nn + neg(j)) * nn + neg(l);
}

std::array<int, 3> GridSpec::wavevector(std::size_t idx) const noexcept {
  const std::size_t nn = static_cast<std::size_t>(n_);
  const int l = static_cast<int>(idx % nn);
  const int j = static_cast<int>((idx / nn) % nn);
  const int i = static_cast<int>(idx / (nn * nn));
  return {wavenumber(i), wavenumber(j), wavenumber(l)};
}

}  // namespace lpns
