#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lpns {

enum class BoundKind {
  leray_h1,
  lp,
  giga_hs,
  rss_high_s,
  cmp_h32_log,
  cmp_h52_log,
  main_h32,
  general_s_rate,
};

std::string_view to_string(BoundKind kind);
/// ConfigError for unknown names.
BoundKind parse_bound_kind(std::string_view name);
const std::vector<BoundKind>& all_bound_kinds();

/// Parameters of one lower-bound family. `s` doubles as the exponent p for
/// kind lp; `u0_l2` (||u0||_2) is required by rss_high_s only.
struct BoundSpec {
  BoundKind kind = BoundKind::main_h32;
  double s = 1.5;
  double c = 1.0;
  double t_star = 1.0;
  std::optional<double> u0_l2;

  /// ConfigError for parameters outside the range of the kind, c <= 0 or t_star <= 0.
  void validate() const;
};

/// Lower bound at time t for a solution that blows up at t_star.
/// DomainError for t >= t_star and, for the logarithmic kinds, t_star - t >= 1.
double eval_lower_bound(const BoundSpec& spec, double t);

/// Exact solution of dy/dt = coef y^2 from y(0) = y0.
struct RiccatiSolution {
  double blowup_time = 0.0;
  std::function<double(double)> y;
};
/// DomainError unless y0 > 0 and coef > 0.
RiccatiSolution riccati_solve(double y0, double coef);

struct NormSample {
  double t = 0.0;
  double y = 0.0;
};

/// Ordered (t, y) samples with strictly increasing t and finite y >= 0.
struct NormSeries {
  std::vector<NormSample> samples;
  /// ConfigError if the invariants do not hold.
  void validate() const;
};

/// Earliest admissible blow-up time max_i (t_i + c_emp / y_i). A sample with
/// y = 0 gives +infinity. DomainError for an empty series or c_emp <= 0.
double blowup_floor(const NormSeries& series, double c_emp);

struct RateFit {
  double alpha = 0.0;  // slope of log y against -log(t_star - t)
  double c_fit = 0.0;  // exp(intercept)
};

/// Least-squares fit of y = c / (t_star - t)^alpha. FitError for fewer than
/// five samples, samples at or beyond t_star, non-positive y or a degenerate
/// spread of log(t_star - t).
RateFit fit_rate(const NormSeries& series, double t_star);

}  // namespace lpns
