#pragma once

#include <complex>

namespace sqmzi {

/// Squeezing strength in dB -> squeezing parameter r = dB * ln(10) / 20.
double squeezing_from_db(double db);

/// True when alpha lies on the negative imaginary axis (alpha = -i|alpha|),
/// the amplitude phase that minimizes the output photon-number variance.
/// The precision and QFIM modules are defined for this convention only.
bool alpha_on_minus_i_axis(std::complex<double> alpha);

/// Physical scenario of the interferometer: coherent amplitude alpha in
/// mode a, squeezed vacuum with parameter r in mode b, and the internal
/// arm phases expressed as difference theta = theta_a - theta_b and sum
/// phi = theta_a + theta_b.
class InterferometerConfig {
 public:
  InterferometerConfig(std::complex<double> alpha, double r, double theta,
                       double phi = 0.0);

  /// alpha = -i * sqrt(alpha_sq), the variance-minimizing amplitude phase.
  static InterferometerConfig from_alpha_sq(double alpha_sq, double r,
                                            double theta, double phi = 0.0);

  static InterferometerConfig from_arm_phases(std::complex<double> alpha,
                                              double r, double theta_a,
                                              double theta_b);

  std::complex<double> alpha() const { return alpha_; }
  double alpha_sq() const { return std::norm(alpha_); }
  double r() const { return r_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

  double cos_half() const;  // cos(theta/2)
  double sin_half() const;  // sin(theta/2)

  InterferometerConfig with_theta(double theta) const;

 private:
  std::complex<double> alpha_;
  double r_;
  double theta_;
  double phi_;
};

/// Heisenberg-picture output operator of mode b:
///   b_out = coeff_b * b + coeff_bdag * b^dag + coeff_a * a + displacement.
struct ModeTransform {
  std::complex<double> coeff_b;
  std::complex<double> coeff_bdag;
  std::complex<double> coeff_a;
  std::complex<double> displacement;

  /// | |coeff_b|^2 - |coeff_bdag|^2 + |coeff_a|^2 - 1 |; zero when the
  /// bosonic commutator of b_out is preserved.
  double commutator_defect() const;
};

ModeTransform output_mode_transform(const InterferometerConfig& cfg);

/// <N_b> = cos^2(theta/2) sinh^2 r + sin^2(theta/2) |alpha|^2.
double mean_photon_number(const InterferometerConfig& cfg);

/// Var N_b = s^4 |alpha|^2 + s^2 c^2 sinh^2 r + 2 c^4 cosh^2 r sinh^2 r
///           + s^2 c^2 |alpha cosh r + alpha* sinh r|^2.
/// Valid for arbitrary complex alpha.
double photon_number_variance(const InterferometerConfig& cfg);

/// Scalar combinations used by the precision formulas.
struct ScenarioScalars {
  double photon_ratio;         // sinh^2 r / |alpha|^2
  double excess_noise_factor;  // s^2 c^2 + 2 cosh^2 r c^4
  double total_photons;        // |alpha|^2 + sinh^2 r
};

/// Throws DegenerateInput when |alpha| = 0 (photon_ratio undefined).
ScenarioScalars scenario_scalars(const InterferometerConfig& cfg);

}  // namespace sqmzi
