#include "sqmzi/precision.hpp"

#include <cmath>
#include <stdexcept>

#include "sqmzi/errors.hpp"

namespace sqmzi {

PrecisionPoint n_precision(const InterferometerConfig& cfg) {
  if (cfg.alpha_sq() == 0.0)
    throw DegenerateInput("n_precision: needs |alpha| > 0");
  if (!alpha_on_minus_i_axis(cfg.alpha()))
    throw std::invalid_argument(
        "n_precision: defined for the convention alpha = -i|alpha| only");

  const double alpha_sq = cfg.alpha_sq();
  const double s2 = cfg.sin_half() * cfg.sin_half();
  const double c2 = cfg.cos_half() * cfg.cos_half();
  const ScenarioScalars sc = scenario_scalars(cfg);
  const double eps = sc.photon_ratio;

  const double numerator = alpha_sq * (1.0 - eps) * (1.0 - eps) * s2 * c2;
  const double denominator = s2 * s2 + std::exp(-2.0 * cfg.r()) * s2 * c2 +
                             eps * sc.excess_noise_factor;

  PrecisionPoint out;
  out.theta = cfg.theta();
  out.value = numerator == 0.0 ? 0.0 : numerator / denominator;
  out.normalized = out.value / alpha_sq;
  return out;
}

double sql_precision(double alpha_sq, double theta) {
  const double c = std::cos(theta / 2);
  return alpha_sq * c * c;
}

double optimal_theta(double alpha_abs, double r) {
  if (!(alpha_abs > 0.0))
    throw DegenerateInput("optimal_theta: needs |alpha| > 0");
  if (r == 0.0) return 0.0;
  return 2.0 *
         std::atan(std::sqrt(std::sinh(2.0 * r) / (std::sqrt(2.0) * alpha_abs)));
}

double optimal_precision(double alpha_sq, double r) {
  if (!(alpha_sq > 0.0))
    throw DegenerateInput("optimal_precision: needs |alpha| > 0");
  const double sh = std::sinh(r);
  const double ch = std::cosh(r);
  const double eps = sh * sh / alpha_sq;
  if (eps >= 1.0)
    throw DegenerateInput(
        "optimal_precision: eps = sinh^2(r)/alpha_sq >= 1 is outside the "
        "formula's regime");
  const double e2r = std::exp(2.0 * r);
  const double denom = 1.0 + e2r * (eps + 2.0 * std::sqrt(2.0 * eps * ch * ch));
  return alpha_sq * e2r * (1.0 - eps) * (1.0 - eps) / denom;
}

OptimalPoint optimal_point(double alpha_sq, double r) {
  OptimalPoint out;
  out.theta = optimal_theta(std::sqrt(alpha_sq), r);
  out.value = optimal_precision(alpha_sq, r);
  out.degenerate = (r == 0.0);
  return out;
}

std::vector<PrecisionCurvePoint> precision_curve(
    const InterferometerConfig& base, std::span<const double> thetas) {
  std::vector<PrecisionCurvePoint> out;
  out.reserve(thetas.size());
  const double alpha_sq = base.alpha_sq();
  for (const double theta : thetas) {
    const PrecisionPoint p = n_precision(base.with_theta(theta));
    PrecisionCurvePoint row;
    row.theta = theta;
    row.p = p.value;
    row.p_norm = p.normalized;
    row.sql = sql_precision(alpha_sq, theta);
    row.sql_norm = row.sql / alpha_sq;
    out.push_back(row);
  }
  return out;
}

}  // namespace sqmzi
