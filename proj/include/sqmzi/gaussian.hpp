#pragma once

#include <Eigen/Core>
#include <complex>

#include "sqmzi/interferometer.hpp"

namespace sqmzi {

/// Reduced Gaussian state of output mode b in the complex (annihilation /
/// creation ordered) convention: vacuum covariance is the identity.
struct SingleModeGaussian {
  std::complex<double> mean_field;        // <b_out>
  double normal_moment;                   // C_N = <db^dag db>
  std::complex<double> anomalous_moment;  // C_A = <db db>

  /// sigma = [[1 + 2 C_N, 2 C_A], [2 C_A*, 1 + 2 C_N]]
  Eigen::Matrix2cd covariance() const;
  double det_covariance() const;  // (1 + 2 C_N)^2 - 4 |C_A|^2
  Eigen::Vector2cd mean_vector() const;  // (d, d*)
};

/// Mean field uses the general-alpha form d = i alpha e^{i phi/2} sin(theta/2);
/// with alpha = -i|alpha| this reduces to |alpha| e^{i phi/2} sin(theta/2).
SingleModeGaussian reduce_to_mode_b(const InterferometerConfig& cfg);

/// lambda = sqrt(det sigma). Throws UnphysicalState when
/// det sigma < 1 - 1e-9.
double symplectic_eigenvalue(const SingleModeGaussian& state);

/// sigma = lambda * S * S^dag with S symplectic (S K S^dag = K,
/// K = diag(1, -1)).
struct WilliamsonDecomp {
  double sym_eigenvalue;        // lambda
  Eigen::Matrix2cd symplectic;  // S
  double r_out;                 // output squeezing parameter
  double phase;                 // S12 = -e^{i phase} sinh(r_out)
};

/// Works for any physical single-mode covariance of the form
/// [[a, b], [b*, a]]; for C_A = C_N = 0 returns the identity with r_out = 0.
WilliamsonDecomp williamson(const SingleModeGaussian& state);

inline constexpr double kPureTol = 1e-9;  // |lambda - 1| gap for is_pure

double purity(const SingleModeGaussian& state);  // 1 / lambda
bool is_pure(const SingleModeGaussian& state);

}  // namespace sqmzi
