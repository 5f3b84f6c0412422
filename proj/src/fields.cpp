#include "lpns/fields.hpp"

#include <cmath>

#include "lpns/errors.hpp"

namespace lpns {
namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw ConfigError("fields live on different grids");
}

}  // namespace

SpectralVelocity operator+(const SpectralVelocity& a, const SpectralVelocity& b) {
  require_same_grid(a.grid, b.grid);
  SpectralVelocity out = a;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < out.coeffs[c].size(); ++i) out.coeffs[c][i] += b.coeffs[c][i];
  }
  return out;
}

SpectralVelocity operator-(const SpectralVelocity& a, const SpectralVelocity& b) {
  require_same_grid(a.grid, b.grid);
  SpectralVelocity out = a;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < out.coeffs[c].size(); ++i) out.coeffs[c][i] -= b.coeffs[c][i];
  }
  return out;
}

SpectralVelocity operator*(double s, const SpectralVelocity& a) {
  SpectralVelocity out = a;
  for (auto& comp : out.coeffs) {
    for (auto& v : comp) v *= s;
  }
  return out;
}

double l2_norm(const SymTensorField& t) {
  double sum = 0.0;
  for (int c = 0; c < 6; ++c) {
    // Off-diagonal components appear twice in the full tensor.
    const double mult = (c == 0 || c == 3 || c == 5) ? 1.0 : 2.0;
    double part = 0.0;
    for (double v : t.values[c]) part += v * v;
    sum += mult * part;
  }
  return std::sqrt(sum * t.grid.cell_volume());
}

SymTensorField operator-(const SymTensorField& a, const SymTensorField& b) {
  require_same_grid(a.grid, b.grid);
  SymTensorField out = a;
  for (int c = 0; c < 6; ++c) {
    for (std::size_t i = 0; i < out.values[c].size(); ++i) out.values[c][i] -= b.values[c][i];
  }
  return out;
}

}  // namespace lpns
