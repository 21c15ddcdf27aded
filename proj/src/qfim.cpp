#include "sqmzi/qfim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqmzi/errors.hpp"

namespace sqmzi {

namespace {

using Cd = std::complex<double>;
constexpr Cd kI{0.0, 1.0};

void require_minus_i_alpha(const InterferometerConfig& cfg) {
  if (!alpha_on_minus_i_axis(cfg.alpha()))
    throw std::invalid_argument(
        "qfim: defined for the convention alpha = -i|alpha| only");
}

Eigen::Matrix2cd hermitian2(double diag, Cd off) {
  Eigen::Matrix2cd m;
  m << diag, off, std::conj(off), diag;
  return m;
}

/// Inverse of sigma = [[a, b], [b*, a]] with det = a^2 - |b|^2.
Eigen::Matrix2cd invert_covariance(const Eigen::Matrix2cd& sigma, double det) {
  Eigen::Matrix2cd inv;
  inv << sigma(0, 0) / det, -sigma(0, 1) / det, -sigma(1, 0) / det,
      sigma(1, 1) / det;
  return inv;
}

double displacement_term(const Eigen::Matrix2cd& sigma_inv,
                         const Eigen::Vector2cd& dk,
                         const Eigen::Vector2cd& dl) {
  return 2.0 * std::real(dk.dot(sigma_inv * dl));
}

double pure_point_entry(const Eigen::Matrix2cd& sigma_inv,
                        const Eigen::Matrix2cd& dk_sigma,
                        const Eigen::Matrix2cd& dl_sigma,
                        const Eigen::Vector2cd& dk_mean,
                        const Eigen::Vector2cd& dl_mean) {
  const Cd tr = (sigma_inv * dk_sigma * sigma_inv * dl_sigma).trace();
  return 0.25 * std::real(tr) +
         displacement_term(sigma_inv, dk_mean, dl_mean);
}

double pure_limit_entry(const Eigen::Matrix2cd& sigma_inv,
                        const Eigen::Matrix2cd& dk_sigma,
                        const Eigen::Matrix2cd& dl_sigma,
                        const Eigen::Matrix2cd& d2_sigma,
                        const Eigen::Vector2cd& dk_mean,
                        const Eigen::Vector2cd& dl_mean) {
  const Cd tr2 = (sigma_inv * d2_sigma).trace();
  const Cd tr1 = (sigma_inv * dk_sigma * sigma_inv * dl_sigma).trace();
  return 0.25 * std::real(2.0 * tr2 - tr1) +
         displacement_term(sigma_inv, dk_mean, dl_mean);
}

QfimValues pure_point_values(const ParamDerivatives& pd) {
  const Eigen::Matrix2cd sigma_inv =
      invert_covariance(pd.sigma, 1.0 + pd.lambda_gap);
  QfimValues v;
  v.phi_phi = pure_point_entry(sigma_inv, pd.d_sigma_phi, pd.d_sigma_phi,
                               pd.d_mean_phi, pd.d_mean_phi);
  v.phi_theta = pure_point_entry(sigma_inv, pd.d_sigma_phi, pd.d_sigma_theta,
                                 pd.d_mean_phi, pd.d_mean_theta);
  v.theta_theta =
      pure_point_entry(sigma_inv, pd.d_sigma_theta, pd.d_sigma_theta,
                       pd.d_mean_theta, pd.d_mean_theta);
  return v;
}

QfimValues pure_limit_values(const ParamDerivatives& pd) {
  const Eigen::Matrix2cd sigma_inv =
      invert_covariance(pd.sigma, 1.0 + pd.lambda_gap);
  QfimValues v;
  v.phi_phi =
      pure_limit_entry(sigma_inv, pd.d_sigma_phi, pd.d_sigma_phi,
                       pd.d2_sigma_phi_phi, pd.d_mean_phi, pd.d_mean_phi);
  v.phi_theta =
      pure_limit_entry(sigma_inv, pd.d_sigma_phi, pd.d_sigma_theta,
                       pd.d2_sigma_phi_theta, pd.d_mean_phi, pd.d_mean_theta);
  v.theta_theta = pure_limit_entry(sigma_inv, pd.d_sigma_theta,
                                   pd.d_sigma_theta, pd.d2_sigma_theta_theta,
                                   pd.d_mean_theta, pd.d_mean_theta);
  return v;
}

bool at_fringe(double theta, double fringe) {
  constexpr double kFringeSnapTol = 1e-13;  // rad
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return std::abs(std::remainder(theta - fringe, two_pi)) < kFringeSnapTol;
}

}  // namespace

ParamDerivatives param_derivatives(const InterferometerConfig& cfg) {
  require_minus_i_alpha(cfg);
  const double c = cfg.cos_half();
  const double s = cfg.sin_half();
  const double sin_t = std::sin(cfg.theta());
  const double cos_t = std::cos(cfg.theta());
  const double sh = std::sinh(cfg.r());
  const double ch = std::cosh(cfg.r());
  const double amag = std::abs(cfg.alpha());
  const Cd eiphi = std::polar(1.0, cfg.phi());
  const Cd eiphi_half = std::polar(1.0, cfg.phi() / 2);

  ParamDerivatives pd;

  const Cd d = amag * s * eiphi_half;
  const Cd d_phi = 0.5 * kI * d;
  const Cd d_theta = 0.5 * amag * c * eiphi_half;
  pd.mean << d, std::conj(d);
  pd.d_mean_phi << d_phi, std::conj(d_phi);
  pd.d_mean_theta << d_theta, std::conj(d_theta);

  // C_N = c^2 sinh^2 r, C_A = -e^{i phi} c^2 cosh r sinh r.
  const double cn = c * c * sh * sh;
  const Cd ca = -eiphi * (c * c * ch * sh);
  const double dcn_theta = -0.5 * sin_t * sh * sh;
  const Cd dca_theta = eiphi * (0.5 * sin_t * ch * sh);
  const Cd dca_phi = kI * ca;
  const double d2cn_theta = -0.5 * cos_t * sh * sh;
  const Cd d2ca_theta = eiphi * (0.5 * cos_t * ch * sh);
  const Cd d2ca_phi_theta = kI * dca_theta;
  const Cd d2ca_phi_phi = -ca;

  pd.sigma = hermitian2(1.0 + 2.0 * cn, 2.0 * ca);
  pd.d_sigma_theta = hermitian2(2.0 * dcn_theta, 2.0 * dca_theta);
  pd.d_sigma_phi = hermitian2(0.0, 2.0 * dca_phi);
  pd.d2_sigma_theta_theta = hermitian2(2.0 * d2cn_theta, 2.0 * d2ca_theta);
  pd.d2_sigma_phi_theta = hermitian2(0.0, 2.0 * d2ca_phi_theta);
  pd.d2_sigma_phi_phi = hermitian2(0.0, 2.0 * d2ca_phi_phi);

  pd.lambda_gap = sin_t * sin_t * sh * sh;
  pd.lambda = std::sqrt(1.0 + pd.lambda_gap);
  pd.d_lambda_phi = 0.0;
  pd.d_lambda_theta = sin_t * cos_t * sh * sh / pd.lambda;

  const double e2r = std::exp(2.0 * cfg.r());
  const double g = s * s + e2r * c * c;
  const double dg_theta = 0.5 * sin_t * (1.0 - e2r);
  const double r_out = 0.5 * std::log(g / pd.lambda);
  const double dr_out_theta =
      0.5 * (dg_theta / g - pd.d_lambda_theta / pd.lambda);

  const Cd s12 = -eiphi * std::sinh(r_out);
  pd.s_matrix << std::cosh(r_out), s12, std::conj(s12), std::cosh(r_out);
  pd.j_phi = -kI * eiphi * std::cosh(r_out) * std::sinh(r_out);
  pd.j_theta = -eiphi * dr_out_theta;
  return pd;
}

QfimResult qfim_mixed(const InterferometerConfig& cfg) {
  const ParamDerivatives pd = param_derivatives(cfg);
  const double gap_linear = pd.lambda_gap / (pd.lambda + 1.0);  // lambda - 1
  if (gap_linear <= kQfimSwitchTol)
    throw PureStateRegion(
        "qfim_mixed: state is pure (or nearly pure); use the pure-point or "
        "pure-limit form");

  const double lam2 = 1.0 + pd.lambda_gap;
  const Eigen::Matrix2cd sigma_inv = invert_covariance(pd.sigma, lam2);
  const double unitary_weight = 4.0 * lam2 / (lam2 + 1.0);

  const auto entry = [&](Cd jk, Cd jl, double dlk, double dll,
                         const Eigen::Vector2cd& dk_mean,
                         const Eigen::Vector2cd& dl_mean) {
    return unitary_weight * std::real(std::conj(jk) * jl) +
           dlk * dll / pd.lambda_gap +
           displacement_term(sigma_inv, dk_mean, dl_mean);
  };

  QfimResult out;
  out.regime = QfimRegime::Mixed;
  out.phi_phi = entry(pd.j_phi, pd.j_phi, pd.d_lambda_phi, pd.d_lambda_phi,
                      pd.d_mean_phi, pd.d_mean_phi);
  out.phi_theta =
      entry(pd.j_phi, pd.j_theta, pd.d_lambda_phi, pd.d_lambda_theta,
            pd.d_mean_phi, pd.d_mean_theta);
  out.theta_theta =
      entry(pd.j_theta, pd.j_theta, pd.d_lambda_theta, pd.d_lambda_theta,
            pd.d_mean_theta, pd.d_mean_theta);
  return out;
}

QfimResult qfim_pure_point(const InterferometerConfig& cfg) {
  const ParamDerivatives pd = param_derivatives(cfg);
  if (pd.lambda_gap / (pd.lambda + 1.0) > kQfimSwitchTol)
    throw NotAtPurePoint("qfim_pure_point: state is mixed here");
  const QfimValues v = pure_point_values(pd);
  QfimResult out;
  out.phi_phi = v.phi_phi;
  out.phi_theta = v.phi_theta;
  out.theta_theta = v.theta_theta;
  out.regime = QfimRegime::PurePoint;
  return out;
}

QfimResult qfim_pure_limit(const InterferometerConfig& cfg) {
  const ParamDerivatives pd = param_derivatives(cfg);
  if (pd.lambda_gap / (pd.lambda + 1.0) > kQfimSwitchTol)
    throw NotAtPurePoint("qfim_pure_limit: state is mixed here");
  const QfimValues v = pure_limit_values(pd);
  QfimResult out;
  out.phi_phi = v.phi_phi;
  out.phi_theta = v.phi_theta;
  out.theta_theta = v.theta_theta;
  out.regime = QfimRegime::PureLimit;
  return out;
}

QfimResult qfim(const InterferometerConfig& cfg) {
  const ParamDerivatives pd = param_derivatives(cfg);
  if (pd.lambda_gap / (pd.lambda + 1.0) > kQfimSwitchTol) return qfim_mixed(cfg);

  if (at_fringe(cfg.theta(), 0.0) || at_fringe(cfg.theta(), std::numbers::pi)) {
    const QfimValues v = pure_point_values(pd);
    QfimResult out;
    out.phi_phi = v.phi_phi;
    out.phi_theta = v.phi_theta;
    out.theta_theta = v.theta_theta;
    out.regime = QfimRegime::PurePoint;
    out.fringe_limit = pure_limit_values(pd);
    return out;
  }

  const QfimValues v = pure_limit_values(pd);
  QfimResult out;
  out.phi_phi = v.phi_phi;
  out.phi_theta = v.phi_theta;
  out.theta_theta = v.theta_theta;
  out.regime = QfimRegime::PureLimit;
  return out;
}

double two_mode_qfi(double alpha_sq, double r) {
  if (!(alpha_sq >= 0.0) || !(r >= 0.0))
    throw std::invalid_argument("two_mode_qfi: alpha_sq and r must be >= 0");
  const double sh = std::sinh(r);
  return alpha_sq * std::exp(2.0 * r) + sh * sh;
}

}  // namespace sqmzi
