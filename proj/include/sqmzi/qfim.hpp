#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>

#include "sqmzi/interferometer.hpp"

namespace sqmzi {

enum class QfimRegime { Mixed, PurePoint, PureLimit };

struct QfimValues {
  double phi_phi = 0.0;
  double phi_theta = 0.0;
  double theta_theta = 0.0;
};

/// 2x2 quantum Fisher information matrix on (phi, theta).
struct QfimResult {
  double phi_phi = 0.0;
  double phi_theta = 0.0;
  double theta_theta = 0.0;
  QfimRegime regime = QfimRegime::Mixed;
  /// At an exact fringe (regime PurePoint) the theta -> fringe limit of the
  /// QFIM, which differs from the pure-point value by sinh^2(r) in the
  /// theta-theta entry.
  std::optional<QfimValues> fringe_limit;
};

/// Closed-form derivatives of the mode-b Gaussian data with respect to
/// (phi, theta). Requires alpha = -i|alpha|.
struct ParamDerivatives {
  double lambda = 1.0;
  double lambda_gap = 0.0;  // lambda^2 - 1 = sin^2(theta) sinh^2(r), exact form

  Eigen::Matrix2cd sigma;
  Eigen::Matrix2cd d_sigma_phi;
  Eigen::Matrix2cd d_sigma_theta;
  Eigen::Matrix2cd d2_sigma_phi_phi;
  Eigen::Matrix2cd d2_sigma_phi_theta;
  Eigen::Matrix2cd d2_sigma_theta_theta;

  double d_lambda_phi = 0.0;  // identically zero
  double d_lambda_theta = 0.0;

  Eigen::Vector2cd mean;  // (d, d*)
  Eigen::Vector2cd d_mean_phi;
  Eigen::Vector2cd d_mean_theta;

  Eigen::Matrix2cd s_matrix;  // symplectic factor S of sigma
  std::complex<double> j_phi;    // J_k = S11* dk S12 - S12 dk S11*
  std::complex<double> j_theta;
};

ParamDerivatives param_derivatives(const InterferometerConfig& cfg);

/// lambda - 1 gap below which the mixed-state formula is abandoned in
/// favor of the pure-limit form (the mixed formula divides by lambda^2 - 1,
/// which cancellation destroys near a fringe).
inline constexpr double kQfimSwitchTol = 1e-7;

/// Mixed-state QFIM,
///   Q^kl = 4 lambda^2 / (lambda^2 + 1) Re{J_k* J_l}
///        + d_k lambda d_l lambda / (lambda^2 - 1)
///        + 2 d_k dvec^dag sigma^-1 d_l dvec.
/// Throws PureStateRegion when lambda - 1 <= kQfimSwitchTol.
QfimResult qfim_mixed(const InterferometerConfig& cfg);

/// QFIM of the exact pure state at a fringe,
///   Q0^kl = 1/4 Tr{sigma^-1 dk sigma sigma^-1 dl sigma}
///         + 2 dk dvec^dag sigma^-1 dl dvec.
/// Throws NotAtPurePoint when lambda - 1 > kQfimSwitchTol.
QfimResult qfim_pure_point(const InterferometerConfig& cfg);

/// theta -> fringe limit of the mixed-state QFIM,
///   Q0+^kl = 1/4 Tr{2 sigma^-1 dk dl sigma
///                   - sigma^-1 dk sigma sigma^-1 dl sigma}
///          + 2 dk dvec^dag sigma^-1 dl dvec.
/// Throws NotAtPurePoint when lambda - 1 > kQfimSwitchTol.
QfimResult qfim_pure_limit(const InterferometerConfig& cfg);

/// Dispatcher: mixed formula when lambda - 1 > kQfimSwitchTol; the
/// pure-point value (with the pure-limit as metadata) exactly at a fringe;
/// the pure-limit form otherwise.
QfimResult qfim(const InterferometerConfig& cfg);

/// Two-mode readout benchmark F0 = alpha_sq e^{2r} + sinh^2 r.
double two_mode_qfi(double alpha_sq, double r);

}  // namespace sqmzi
