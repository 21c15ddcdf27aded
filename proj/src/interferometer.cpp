#include "sqmzi/interferometer.hpp"

#include <cmath>
#include <stdexcept>

#include "sqmzi/errors.hpp"

namespace sqmzi {

double squeezing_from_db(double db) { return db * std::log(10.0) / 20.0; }

bool alpha_on_minus_i_axis(std::complex<double> alpha) {
  const double mag = std::abs(alpha);
  if (mag == 0.0) return true;
  return std::abs(alpha.real()) <= 1e-12 * mag && alpha.imag() <= 0.0;
}

InterferometerConfig::InterferometerConfig(std::complex<double> alpha,
                                           double r, double theta, double phi)
    : alpha_(alpha), r_(r), theta_(theta), phi_(phi) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw std::invalid_argument("InterferometerConfig: alpha must be finite");
  if (!std::isfinite(r) || r < 0.0)
    throw std::invalid_argument(
        "InterferometerConfig: r must be finite and >= 0");
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw std::invalid_argument(
        "InterferometerConfig: theta and phi must be finite");
}

InterferometerConfig InterferometerConfig::from_alpha_sq(double alpha_sq,
                                                         double r,
                                                         double theta,
                                                         double phi) {
  if (!(alpha_sq >= 0.0))
    throw std::invalid_argument("from_alpha_sq: alpha_sq must be >= 0");
  return InterferometerConfig({0.0, -std::sqrt(alpha_sq)}, r, theta, phi);
}

InterferometerConfig InterferometerConfig::from_arm_phases(
    std::complex<double> alpha, double r, double theta_a, double theta_b) {
  return InterferometerConfig(alpha, r, theta_a - theta_b, theta_a + theta_b);
}

double InterferometerConfig::cos_half() const { return std::cos(theta_ / 2); }
double InterferometerConfig::sin_half() const { return std::sin(theta_ / 2); }

InterferometerConfig InterferometerConfig::with_theta(double theta) const {
  return InterferometerConfig(alpha_, r_, theta, phi_);
}

double ModeTransform::commutator_defect() const {
  return std::abs(std::norm(coeff_b) - std::norm(coeff_bdag) +
                  std::norm(coeff_a) - 1.0);
}

ModeTransform output_mode_transform(const InterferometerConfig& cfg) {
  const double c = cfg.cos_half();
  const double s = cfg.sin_half();
  const std::complex<double> global = std::polar(1.0, cfg.phi() / 2);
  const std::complex<double> i_s(0.0, s);
  ModeTransform t;
  t.coeff_b = global * (c * std::cosh(cfg.r()));
  t.coeff_bdag = global * (-c * std::sinh(cfg.r()));
  t.coeff_a = global * i_s;
  t.displacement = global * i_s * cfg.alpha();
  return t;
}

double mean_photon_number(const InterferometerConfig& cfg) {
  const double c2 = cfg.cos_half() * cfg.cos_half();
  const double s2 = cfg.sin_half() * cfg.sin_half();
  const double sh = std::sinh(cfg.r());
  return c2 * sh * sh + s2 * cfg.alpha_sq();
}

double photon_number_variance(const InterferometerConfig& cfg) {
  const double c = cfg.cos_half();
  const double s = cfg.sin_half();
  const double c2 = c * c;
  const double s2 = s * s;
  const double sh = std::sinh(cfg.r());
  const double ch = std::cosh(cfg.r());
  const std::complex<double> mixed =
      cfg.alpha() * ch + std::conj(cfg.alpha()) * sh;
  return s2 * s2 * cfg.alpha_sq() + s2 * c2 * sh * sh +
         2.0 * c2 * c2 * ch * ch * sh * sh + s2 * c2 * std::norm(mixed);
}

ScenarioScalars scenario_scalars(const InterferometerConfig& cfg) {
  const double alpha_sq = cfg.alpha_sq();
  if (alpha_sq == 0.0)
    throw DegenerateInput("scenario_scalars: photon_ratio needs |alpha| > 0");
  const double c2 = cfg.cos_half() * cfg.cos_half();
  const double s2 = cfg.sin_half() * cfg.sin_half();
  const double sh = std::sinh(cfg.r());
  const double ch = std::cosh(cfg.r());
  ScenarioScalars out;
  out.photon_ratio = sh * sh / alpha_sq;
  out.excess_noise_factor = s2 * c2 + 2.0 * ch * ch * c2 * c2;
  out.total_photons = alpha_sq + sh * sh;
  return out;
}

}  // namespace sqmzi
