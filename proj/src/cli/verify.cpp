#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>

#include "lpns/cli.hpp"
#include "lpns/errors.hpp"
#include "lpns/filter_bank.hpp"
#include "lpns/flux.hpp"
#include "lpns/generators.hpp"
#include "lpns/solver.hpp"
#include "lpns/spectral_ops.hpp"
#include "oracles.hpp"

namespace lpns::cli {
namespace {

constexpr double kFloor = 1e-14;

class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  // Passes when value < limit.
  void check(const std::string& name, double value, double limit) {
    const bool pass = value < limit;
    print(pass ? "PASS" : "FAIL", name, value, limit);
    failed_ = failed_ || !pass;
  }
  void require(const std::string& name, bool ok, double value) {
    print(ok ? "PASS" : "FAIL", name, value, std::numeric_limits<double>::quiet_NaN());
    failed_ = failed_ || !ok;
  }
  void info(const std::string& name, double value) {
    print("info", name, value, std::numeric_limits<double>::quiet_NaN());
  }
  bool failed() const { return failed_; }

 private:
  void print(const char* tag, const std::string& name, double value, double limit) {
    char buf[256];
    if (std::isnan(limit)) {
      std::snprintf(buf, sizeof buf, "[%s] %s = %.6e", tag, name.c_str(), value);
    } else {
      std::snprintf(buf, sizeof buf, "[%s] %s = %.6e (limit %.1e)", tag, name.c_str(), value, limit);
    }
    out_ << buf << '\n';
  }
  std::ostream& out_;
  bool failed_ = false;
};


// Adds a gradient (curl-free) mode with amplitude a at k = (2, 1, 0).
void inject_divergence(SpectralVelocity& u, double a) {
  const int k[3] = {2, 1, 0};
  const double kn = std::sqrt(5.0);
  for (int c = 0; c < 3; ++c) {
    const Complex v(0.0, a * k[c] / kn);
    u.at(c, k[0], k[1], k[2]) += v;
    u.at(c, -k[0], -k[1], -k[2]) += std::conj(v);
  }
}

void suite_partition(const VerifyOptions& o, Report& r) {
  const GridSpec grid(o.n);
  const FilterBank bank(grid);
  r.check("partition_defect n=" + std::to_string(o.n), bank.partition_defect(), 1e-12);
  r.require("frame_lower_bound (inf sum phi_q^2 > 0)", bank.min_square_sum() > 0.0, bank.min_square_sum());
  const SpectralVelocity u = make_ensemble_field(grid, o.seed, std::min(2, static_cast<int>(std::log2(grid.k_max()))));
  double outside = 0.0;
  for (int q = 0; q <= bank.q_max(); ++q) {
    const SpectralVelocity uq = shell_project(u, bank, q);
    const double lo = std::exp2(q - 1);
    const double hi = std::exp2(q + 1);
    for_each_mode(grid, [&](std::size_t idx, int kx, int ky, int kz) {
      const double km = std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
      if (km >= lo && km <= hi) return;
      for (int c = 0; c < 3; ++c) outside = std::max(outside, std::abs(uq.coeffs[c][idx]));
    });
  }
  r.require("support_leak (max |coefficient| outside the shell band, must be 0)", outside == 0.0, outside);
  const SpectralVelocity back = reconstruct(decompose(u, bank));
  r.check("reconstruction_rel_error", l2_norm(back - u) / std::max(l2_norm(u), kFloor), 1e-12);
}

void suite_tensor(const VerifyOptions& o, Report& r) {
  if (o.n > 32) throw ConfigError("tensor suite uses an O(n^6) oracle; use n <= 32");
  const GridSpec grid(o.n);
  const FilterBank bank(grid);
  const int top = std::min(2, static_cast<int>(std::log2(grid.k_max())));
  const std::pair<std::string, SpectralVelocity> fields[] = {
      {"taylor_green", make_taylor_green(grid, 1.0)},
      {"seed" + std::to_string(o.seed), make_ensemble_field(grid, o.seed, top)}};
  for (const auto& [name, u] : fields) {
    for (int q = 0; q <= bank.q_max(); ++q) {
      const auto ref = oracle::kernel_remainder(u, q);
      const SymTensorField fast = remainder(u, bank, q);
      const double rel = l2_norm(fast - ref.value) / std::max(l2_norm(ref.magnitude), kFloor);
      r.check("remainder_vs_kernel " + name + " q=" + std::to_string(q), rel, 1e-8);
    }
  }
}

void suite_nlt(const VerifyOptions& o, Report& r) {
  const GridSpec grid(o.n);
  const FilterBank bank(grid);
  const int top = std::min(2, static_cast<int>(std::log2(grid.k_max())));
  double worst_split = 0.0;
  double worst_literal = 0.0;
  double worst_flux = 0.0;
  double worst_literal_flux = 0.0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    SpectralVelocity u = make_ensemble_field(grid, o.seed + i, top);
    if (o.inject_divergence) inject_divergence(u, 0.3);
    const auto transfers = shell_transfers(u, bank);
    for (int q = 0; q <= bank.q_max(); ++q) {
      const NltSplit s = nlt_split(u, bank, q);
      const double transfer = transfers[q];
      const double scale = std::max({std::abs(transfer), std::abs(s.integral_r), std::abs(s.integral_low),
                                     std::abs(s.integral_tail), kFloor});
      worst_split = std::max(worst_split,
                             std::abs(transfer - s.integral_r - s.integral_low - s.integral_tail) / scale);
      worst_literal = std::max(worst_literal, std::abs(transfer - s.integral_r - s.integral_low) / scale);
    }
    const FluxReport rep = shell_flux_report(u, bank, 1.5, 1.0, false);
    worst_flux = std::max(worst_flux, std::abs(rep.conservative_flux_sum) /
                                          std::max(rep.conservative_flux_abs_sum, kFloor));
    worst_literal_flux = std::max(worst_literal_flux, std::abs(rep.flux_sum) / std::max(rep.flux_abs_sum, kFloor));
  }
  r.check("split_residual (transfer - r - low - tail), max over 10 fields x shells", worst_split, 1e-9);
  r.check("conservative_flux_sum |sum|/sum|.|", worst_flux, 1e-9);
  r.info("two_term_residual (transfer - r - low), tail omitted", worst_literal);
  r.info("squared_weight_flux_sum |sum transfer_q|/sum|transfer_q|", worst_literal_flux);
}

struct EnsembleStats {
  double lemma1 = 0.0;
  AbcConstants abc;
  double bern42 = 0.0;
  double bern_inf2 = 0.0;
};

EnsembleStats ensemble_stats(int n, std::uint64_t seed, int count, bool lemma, bool bernstein) {
  const GridSpec grid(n);
  const FilterBank bank(grid);
  EnsembleStats st;
  std::vector<SpectralVelocity> fields;
  for (int i = 0; i < count; ++i) fields.push_back(make_ensemble_field(grid, seed + i, 2));
  if (lemma) {
    for (const auto& u : fields) {
      const ShellNorms norms = shell_norms(u, bank, true);
      const auto transfers = shell_transfers(u, bank);
      for (int q = 0; q <= bank.q_max(); ++q) {
        const Lemma1Sides s = lemma1_sides(norms, transfers, q);
        if (s.rhs_total() > 0.0) st.lemma1 = std::max(st.lemma1, s.lhs / s.rhs_total());
      }
    }
    st.abc = estimate_abc_constants(fields, bank, 1.5, 1.0);
  }
  if (bernstein) {
    for (int i = 0; i < count; ++i) {
      const int q = 1 + i % 2;
      const SpectralVelocity uq = shell_project(fields[i], bank, q);
      st.bern42 = std::max(st.bern42, bernstein_ratio(uq, bank, q, 4.0, 2.0));
      st.bern_inf2 = std::max(st.bern_inf2, bernstein_ratio(uq, bank, q, INFINITY, 2.0));
    }
  }
  return st;
}

double drift(double a, double b) { return std::abs(b - a) / std::max(std::abs(a), kFloor); }

void suite_lemma1(const VerifyOptions& o, Report& r) {
  if (o.n > 64) throw ConfigError("lemma1 suite compares n and 2n; use n <= 64");
  const EnsembleStats a = ensemble_stats(o.n, o.seed, 20, true, false);
  const EnsembleStats b = ensemble_stats(2 * o.n, o.seed, 20, true, false);
  r.require("lemma1_constant K(n) finite", std::isfinite(a.lemma1), a.lemma1);
  r.require("lemma1_constant K(2n) finite", std::isfinite(b.lemma1), b.lemma1);
  r.check("lemma1_constant drift n->2n", drift(a.lemma1, b.lemma1), 0.2);
  r.info("K_A(n)", a.abc.k_a);
  r.info("K_B(n)", a.abc.k_b);
  r.info("K_C(n)", a.abc.k_c);
  r.check("K_A drift n->2n", drift(a.abc.k_a, b.abc.k_a), 0.2);
  r.check("K_B drift n->2n", drift(a.abc.k_b, b.abc.k_b), 0.2);
  r.check("K_C drift n->2n", drift(a.abc.k_c, b.abc.k_c), 0.2);
}

void suite_bernstein(const VerifyOptions& o, Report& r) {
  if (o.n > 64) throw ConfigError("bernstein suite compares n and 2n; use n <= 64");
  if (GridSpec(o.n).k_max() < 4) throw ConfigError("bernstein suite needs K_max >= 4 (n >= 16 with 2/3 dealiasing gives 5)");
  const EnsembleStats a = ensemble_stats(o.n, o.seed, 20, false, true);
  const EnsembleStats b = ensemble_stats(2 * o.n, o.seed, 20, false, true);
  r.require("ratio(4,2) finite at n", std::isfinite(a.bern42), a.bern42);
  r.require("ratio(inf,2) finite at n", std::isfinite(a.bern_inf2), a.bern_inf2);
  r.check("ratio(4,2) drift n->2n", drift(a.bern42, b.bern42), 0.2);
  r.check("ratio(inf,2) drift n->2n", drift(a.bern_inf2, b.bern_inf2), 0.2);
}

void suite_riccati(const VerifyOptions& o, Report& r) {
  r.require("exponent s=3/2 is 2", riccati_exponent(1.5) == 2.0, riccati_exponent(1.5));
  r.require("exponent s=1 is 3", riccati_exponent(1.0) == 3.0, riccati_exponent(1.0));
  r.check("exponent s=2 vs 5/3", std::abs(riccati_exponent(2.0) - 5.0 / 3.0), 1e-15);

  const GridSpec grid(o.n);
  SolverParams p;
  p.nu = 0.1;
  p.dt = 1e-3;
  p.t_end = 0.1;
  const auto rows = simulate(make_ensemble_field(grid, o.seed, 2), p).rows;
  double kr = 0.0;
  double fd = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].riccati_lhs > 0.0) kr = std::max(kr, rows[i].riccati_lhs * p.nu * p.nu / rows[i].riccati_rhs);
    if (i == 0 || i + 1 == rows.size()) continue;
    const double dydt = (rows[i + 1].y - rows[i - 1].y) / (rows[i + 1].t - rows[i - 1].t);
    fd = std::max(fd, std::abs(dydt - rows[i].riccati_lhs) / std::max(rows[i].riccati_scale, kFloor));
  }
  r.require("riccati constant K_R finite", std::isfinite(kr), kr);
  r.check("lhs vs centered difference of y", fd, 1e-4);
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"tensor", "nlt", "lemma1", "bernstein", "riccati", "partition"};
  return names;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, std::function<void(const VerifyOptions&, Report&)>> suites{
      {"tensor", suite_tensor},       {"nlt", suite_nlt},         {"lemma1", suite_lemma1},
      {"bernstein", suite_bernstein}, {"riccati", suite_riccati}, {"partition", suite_partition}};
  const auto it = suites.find(o.suite);
  if (it == suites.end()) {
    err << "config error: unknown suite '" << o.suite << "'\n";
    return kExitConfig;
  }
  Report report(out);
  try {
    GridSpec check(o.n);
    (void)check;
    out << "suite " << o.suite << " n=" << o.n << " seed=" << o.seed
        << (o.inject_divergence ? " (divergence injected)" : "") << '\n';
    it->second(o, report);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  out << (report.failed() ? "FAIL" : "PASS") << '\n';
  return report.failed() ? kExitVerifyFailed : kExitOk;
}

}  // namespace lpns::cli
