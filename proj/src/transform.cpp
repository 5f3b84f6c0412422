#include "lpns/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "lpns/errors.hpp"

namespace lpns {
namespace {

// FFTW planning is not thread-safe; execution with new-array interface is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    const std::size_t size = static_cast<std::size_t>(n) * n * n;
    fftw_complex* scratch = fftw_alloc_complex(size);
    fftw_plan plan = fftw_plan_dft_3d(n, n, n, scratch, scratch, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

void execute_in_place(const GridSpec& grid, std::vector<Complex>& data, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans().get(grid.n(), sign), ptr, ptr);
}

}  // namespace

std::vector<Complex> forward_scalar(const GridSpec& grid, std::span<const double> values) {
  if (values.size() != grid.size()) {
    throw ConfigError("array of size " + std::to_string(values.size()) +
                      " does not match grid of size " + std::to_string(grid.size()));
  }
  std::vector<Complex> data(values.begin(), values.end());
  execute_in_place(grid, data, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : data) v *= scale;
  return data;
}

std::vector<double> inverse_scalar(const GridSpec& grid, std::span<const Complex> coeffs) {
  if (coeffs.size() != grid.size()) {
    throw ConfigError("coefficient array does not match grid");
  }
  std::vector<Complex> data(coeffs.begin(), coeffs.end());
  execute_in_place(grid, data, FFTW_BACKWARD);
  std::vector<double> out(data.size());
  std::transform(data.begin(), data.end(), out.begin(), [](const Complex& c) { return c.real(); });
  return out;
}

SpectralVelocity forward_transform(const PhysicalVelocity& f) {
  SpectralVelocity out(f.grid);
  for (int c = 0; c < 3; ++c) out.coeffs[c] = forward_scalar(f.grid, f.values[c]);
  return out;
}

PhysicalVelocity inverse_transform(const SpectralVelocity& u) {
  for (const auto& comp : u.coeffs) {
    if (comp.size() != u.grid.size()) throw ConfigError("coefficient array does not match grid");
  }
  const double defect = hermitian_defect(u);
  if (defect > 1e-12) {
    throw InvariantError("coefficients are not Hermitian-symmetric (relative defect " +
                         std::to_string(defect) + ")");
  }
  PhysicalVelocity out(u.grid);
  for (int c = 0; c < 3; ++c) out.values[c] = inverse_scalar(u.grid, u.coeffs[c]);
  return out;
}

double hermitian_defect(const SpectralVelocity& u) {
  double largest = 0.0;
  double defect = 0.0;
  for (const auto& comp : u.coeffs) {
    for (std::size_t i = 0; i < comp.size(); ++i) {
      largest = std::max(largest, std::abs(comp[i]));
      defect = std::max(defect, std::abs(comp[i] - std::conj(comp[u.grid.conjugate_index(i)])));
    }
  }
  return largest > 0.0 ? defect / largest : 0.0;
}

void symmetrize(SpectralVelocity& u) {
  for (auto& comp : u.coeffs) {
    std::vector<Complex> sym(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) {
      sym[i] = 0.5 * (comp[i] + std::conj(comp[u.grid.conjugate_index(i)]));
    }
    comp = std::move(sym);
  }
}

}  // namespace lpns
