#include "lpns/bounds.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "lpns/errors.hpp"

namespace lpns {
namespace {

struct KindName {
  BoundKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 8> kNames = {{
    {BoundKind::leray_h1, "leray_h1"},
    {BoundKind::lp, "lp"},
    {BoundKind::giga_hs, "giga_hs"},
    {BoundKind::rss_high_s, "rss_high_s"},
    {BoundKind::cmp_h32_log, "cmp_h32_log"},
    {BoundKind::cmp_h52_log, "cmp_h52_log"},
    {BoundKind::main_h32, "main_h32"},
    {BoundKind::general_s_rate, "general_s_rate"},
}};

std::string num(double v) { return std::to_string(v); }

}  // namespace

std::string_view to_string(BoundKind kind) {
  for (const auto& e : kNames) {
    if (e.kind == kind) return e.name;
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view name) {
  for (const auto& e : kNames) {
    if (e.name == name) return e.kind;
  }
  throw ConfigError("unknown bound kind '" + std::string(name) + "'");
}

const std::vector<BoundKind>& all_bound_kinds() {
  static const std::vector<BoundKind> kinds = [] {
    std::vector<BoundKind> out;
    for (const auto& e : kNames) out.push_back(e.kind);
    return out;
  }();
  return kinds;
}

void BoundSpec::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("bound constant c must be positive");
  if (!(t_star > 0.0) || !std::isfinite(t_star)) throw ConfigError("t_star must be positive");
  switch (kind) {
    case BoundKind::lp:
      if (!(s > 3.0) || !std::isfinite(s)) throw ConfigError("lp bound needs 3 < p < inf, got " + num(s));
      break;
    case BoundKind::giga_hs:
    case BoundKind::general_s_rate:
      if (!(s > 0.5 && s < 2.5)) {
        throw ConfigError(std::string(to_string(kind)) + " needs 1/2 < s < 5/2, got " + num(s));
      }
      break;
    case BoundKind::rss_high_s:
      if (!(s > 2.5) || !std::isfinite(s)) throw ConfigError("rss_high_s needs s > 5/2, got " + num(s));
      if (!u0_l2 || !(*u0_l2 >= 0.0)) throw ConfigError("rss_high_s needs a non-negative ||u0||_2");
      break;
    default:
      break;
  }
}

double eval_lower_bound(const BoundSpec& spec, double t) {
  spec.validate();
  if (!(t < spec.t_star)) {
    throw DomainError("bound evaluated at t = " + num(t) + " >= t_star = " + num(spec.t_star));
  }
  const double tau = spec.t_star - t;
  const double c = spec.c;
  const double s = spec.s;
  switch (spec.kind) {
    case BoundKind::leray_h1:
      return c / std::pow(tau, 0.25);
    case BoundKind::lp:
      return c / std::pow(tau, (s - 3.0) / (2.0 * s));
    case BoundKind::giga_hs:
    case BoundKind::general_s_rate:
      return c / std::pow(tau, (2.0 * s - 1.0) / 4.0);
    case BoundKind::rss_high_s:
      return c * std::pow(*spec.u0_l2, (5.0 - 2.0 * s) / 5.0) / std::pow(tau, 2.0 * s / 5.0);
    case BoundKind::cmp_h32_log:
    case BoundKind::cmp_h52_log: {
      if (!(tau < 1.0)) {
        throw DomainError("logarithmic bounds need t_star - t < 1, got " + num(tau));
      }
      const double w = tau * std::abs(std::log(tau));
      return spec.kind == BoundKind::cmp_h32_log ? c / std::sqrt(w) : c / w;
    }
    case BoundKind::main_h32:
      return c / std::sqrt(tau);
  }
  throw ConfigError("unhandled bound kind");
}

RiccatiSolution riccati_solve(double y0, double coef) {
  if (!(y0 > 0.0) || !(coef > 0.0) || !std::isfinite(y0) || !std::isfinite(coef)) {
    throw DomainError("riccati_solve needs y0 > 0 and coef > 0");
  }
  RiccatiSolution sol;
  sol.blowup_time = 1.0 / (coef * y0);
  sol.y = [y0, coef](double t) {
    const double d = 1.0 - coef * y0 * t;
    if (!(d > 0.0)) throw DomainError("Riccati solution evaluated at or past blow-up");
    return y0 / d;
  };
  return sol;
}

void NormSeries::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].t) || !std::isfinite(samples[i].y) || samples[i].y < 0.0) {
      throw ConfigError("norm series sample " + std::to_string(i) + " is not finite and non-negative");
    }
    if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
      throw ConfigError("norm series times must be strictly increasing");
    }
  }
}

double blowup_floor(const NormSeries& series, double c_emp) {
  if (series.samples.empty()) throw DomainError("blowup_floor needs at least one sample");
  if (!(c_emp > 0.0)) throw DomainError("blowup_floor needs c_emp > 0");
  series.validate();
  double floor = -std::numeric_limits<double>::infinity();
  for (const auto& p : series.samples) {
    if (p.y == 0.0) return std::numeric_limits<double>::infinity();
    floor = std::max(floor, p.t + c_emp / p.y);
  }
  return floor;
}

RateFit fit_rate(const NormSeries& series, double t_star) {
  if (series.samples.size() < 5) throw FitError("fit_rate needs at least five samples");
  series.validate();
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& p : series.samples) {
    if (!(p.t < t_star)) throw FitError("fit_rate samples must precede t_star");
    if (!(p.y > 0.0)) throw FitError("fit_rate needs positive y");
    x.push_back(-std::log(t_star - p.t));
    y.push_back(std::log(p.y));
  }
  const double m = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 1e-12 * m * std::max(1.0, mx * mx))) {
    throw FitError("degenerate spread of t_star - t in fit_rate");
  }
  RateFit fit;
  fit.alpha = sxy / sxx;
  fit.c_fit = std::exp(my - fit.alpha * mx);
  return fit;
}

}  // namespace lpns
