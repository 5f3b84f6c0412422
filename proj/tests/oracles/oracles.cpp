#include "oracles.hpp"

#include <cmath>
#include <complex>

#include "lpns/filter_bank.hpp"
#include "lpns/parallel.hpp"

namespace lpns::oracle {

PhysicalVelocity synthesize(const SpectralVelocity& u) {
  const GridSpec& g = u.grid;
  const int n = g.n();
  std::vector<Complex> tw(n);
  for (int m = 0; m < n; ++m) tw[m] = std::polar(1.0, kTwoPi * m / n);
  PhysicalVelocity out(g);
  std::vector<Complex> a(g.size());
  std::vector<Complex> b(g.size());
  for (int c = 0; c < 3; ++c) {
    a = u.coeffs[c];
    // Axis by axis: sum over index i_axis of a * exp(i k_axis x_axis).
    for (int axis = 0; axis < 3; ++axis) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int l = 0; l < n; ++l) {
            Complex acc = 0.0;
            for (int m = 0; m < n; ++m) {
              const int kk = g.wavenumber(m);
              std::size_t src = 0;
              int pos = 0;
              if (axis == 0) { src = g.index(m, j, l); pos = i; }
              if (axis == 1) { src = g.index(i, m, l); pos = j; }
              if (axis == 2) { src = g.index(i, j, m); pos = l; }
              acc += a[src] * tw[((kk * pos) % n + n) % n];
            }
            b[g.index(i, j, l)] = acc;
          }
        }
      }
      a.swap(b);
    }
    for (std::size_t x = 0; x < g.size(); ++x) out.values[c][x] = a[x].real();
  }
  return out;
}

std::vector<double> shell_kernel(const GridSpec& g, int q) {
  const int n = g.n();
  std::vector<double> cosine(n);
  for (int m = 0; m < n; ++m) cosine[m] = std::cos(kTwoPi * m / n);
  std::vector<std::array<int, 3>> ks;
  std::vector<double> weights;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const auto k = g.wavevector(idx);
    const double w = shell_weight(q, std::sqrt(double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2])));
    if (w != 0.0) {
      ks.push_back(k);
      weights.push_back(w);
    }
  }
  std::vector<double> out(g.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        double sum = 0.0;
        for (std::size_t t = 0; t < ks.size(); ++t) {
          const int phase = ((ks[t][0] * a + ks[t][1] * b + ks[t][2] * c) % n + n) % n;
          sum += weights[t] * cosine[phase];
        }
        out[g.index(a, b, c)] = sum / static_cast<double>(g.size());
      }
    }
  }
  return out;
}

KernelRemainder kernel_remainder(const SpectralVelocity& u, int q) {
  const GridSpec& g = u.grid;
  const int n = g.n();
  const PhysicalVelocity f = synthesize(u);
  const std::vector<double> w = shell_kernel(g, q);
  KernelRemainder r(g);
  constexpr int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t xi) {
    const int i = static_cast<int>(xi);
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        const std::size_t x = g.index(i, j, l);
        const double ux[3] = {f.values[0][x], f.values[1][x], f.values[2][x]};
        double acc[6] = {0, 0, 0, 0, 0, 0};
        double mag[6] = {0, 0, 0, 0, 0, 0};
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
              const double wy = w[g.index(a, b, c)];
              if (wy == 0.0) continue;
              const std::size_t xm = g.index((i - a + n) % n, (j - b + n) % n, (l - c + n) % n);
              const double d[3] = {f.values[0][xm] - ux[0], f.values[1][xm] - ux[1],
                                   f.values[2][xm] - ux[2]};
              for (int t = 0; t < 6; ++t) {
                const double term = wy * d[pairs[t][0]] * d[pairs[t][1]];
                acc[t] += term;
                mag[t] += std::abs(term);
              }
            }
          }
        }
        for (int t = 0; t < 6; ++t) {
          r.value.values[t][x] = acc[t];
          r.magnitude.values[t][x] = mag[t];
        }
      }
    }
  });
  return r;
}

std::array<double, 3> trisums_double_loop(const std::vector<double>& l2,
                                          const std::vector<double>& l4, double s) {
  // Outer loop over p, inner over q: the reverse of the production order.
  const int shells = static_cast<int>(l2.size());
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  for (int p = 0; p < shells; ++p) {
    for (int q = 0; q < shells; ++q) {
      const double lq = std::pow(2.0, q);
      const double lp = std::pow(2.0, p);
      if (p <= q) a += std::pow(lq, 2 * s - 1) * l2[q] * lp * lp * l4[p] * l4[p];
      if (p > q) b += std::pow(lq, 2 * s + 1) * l2[q] * l4[p] * l4[p];
      if (p <= q + 1) c += std::pow(lq, 2 * s) * l2[q] * l2[q] * std::pow(lp, 2.5) * l2[p];
    }
  }
  return {a, b, c};
}

}  // namespace lpns::oracle
