#include "sqmzi/gaussian.hpp"

#include <cmath>

#include "sqmzi/errors.hpp"

namespace sqmzi {

Eigen::Matrix2cd SingleModeGaussian::covariance() const {
  Eigen::Matrix2cd sigma;
  const std::complex<double> off = 2.0 * anomalous_moment;
  sigma << 1.0 + 2.0 * normal_moment, off, std::conj(off),
      1.0 + 2.0 * normal_moment;
  return sigma;
}

double SingleModeGaussian::det_covariance() const {
  const double diag = 1.0 + 2.0 * normal_moment;
  return diag * diag - 4.0 * std::norm(anomalous_moment);
}

Eigen::Vector2cd SingleModeGaussian::mean_vector() const {
  return Eigen::Vector2cd(mean_field, std::conj(mean_field));
}

SingleModeGaussian reduce_to_mode_b(const InterferometerConfig& cfg) {
  const double c = cfg.cos_half();
  const double s = cfg.sin_half();
  const double sh = std::sinh(cfg.r());
  const double ch = std::cosh(cfg.r());
  SingleModeGaussian state;
  state.mean_field = std::complex<double>(0.0, 1.0) * cfg.alpha() *
                     std::polar(1.0, cfg.phi() / 2) * s;
  state.normal_moment = c * c * sh * sh;
  state.anomalous_moment = -std::polar(1.0, cfg.phi()) * (c * c * ch * sh);
  return state;
}

namespace {

double checked_symplectic_eigenvalue(const SingleModeGaussian& state) {
  const double det = state.det_covariance();
  if (det < 1.0 - 1e-9)
    throw UnphysicalState("covariance violates det(sigma) >= 1");
  return std::sqrt(std::max(det, 1.0));
}

}  // namespace

double symplectic_eigenvalue(const SingleModeGaussian& state) {
  return checked_symplectic_eigenvalue(state);
}

WilliamsonDecomp williamson(const SingleModeGaussian& state) {
  WilliamsonDecomp out;
  out.sym_eigenvalue = checked_symplectic_eigenvalue(state);
  const double diag = 1.0 + 2.0 * state.normal_moment;
  const std::complex<double> off = 2.0 * state.anomalous_moment;
  // sigma / lambda = S S^dag fixes cosh(2 r_out) = diag / lambda and
  // sinh(2 r_out) e^{i(phase+pi)} = off / lambda.
  out.r_out = 0.5 * std::log((diag + std::abs(off)) / out.sym_eigenvalue);
  out.phase = std::abs(off) > 0.0 ? std::arg(-off) : 0.0;
  const std::complex<double> s12 =
      -std::polar(1.0, out.phase) * std::sinh(out.r_out);
  out.symplectic << std::cosh(out.r_out), s12, std::conj(s12),
      std::cosh(out.r_out);
  return out;
}

double purity(const SingleModeGaussian& state) {
  return 1.0 / checked_symplectic_eigenvalue(state);
}

bool is_pure(const SingleModeGaussian& state) {
  return std::abs(checked_symplectic_eigenvalue(state) - 1.0) < kPureTol;
}

}  // namespace sqmzi
