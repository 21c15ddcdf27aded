#pragma once

#include <span>
#include <vector>

#include "sqmzi/interferometer.hpp"

namespace sqmzi {

/// Inverse phase variance achievable by photon counting in mode b
/// (error propagation on <N_b>). Zero at the black fringe for every r.
struct PrecisionPoint {
  double theta;
  double value;       // P_theta
  double normalized;  // P_theta / |alpha|^2
};

/// Requires |alpha| > 0 and alpha = -i|alpha|; throws DegenerateInput /
/// std::invalid_argument otherwise.
PrecisionPoint n_precision(const InterferometerConfig& cfg);

/// Standard quantum limit |alpha|^2 cos^2(theta/2) (the r = 0 curve).
double sql_precision(double alpha_sq, double theta);

/// Positive branch of the optimal difference phase,
///   theta_opt = 2 arctan(sqrt(sinh(2r) / (sqrt(2) |alpha|))).
/// Returns 0 for r = 0 (the maximum degenerates to the theta -> 0 plateau).
/// Throws DegenerateInput when alpha_abs = 0.
double optimal_theta(double alpha_abs, double r);

/// Maximum N-precision,
///   P_opt = alpha_sq e^{2r} (1 - eps)^2
///           / (1 + e^{2r} (eps + 2 sqrt(2 eps cosh^2 r))).
/// Throws DegenerateInput when alpha_sq = 0 or eps = sinh^2 r / alpha_sq >= 1.
double optimal_precision(double alpha_sq, double r);

struct OptimalPoint {
  double theta;
  double value;
  bool degenerate;  // r = 0: the maximum is a plateau limit, not attained
};

OptimalPoint optimal_point(double alpha_sq, double r);

struct PrecisionCurvePoint {
  double theta;
  double p;
  double p_norm;
  double sql;
  double sql_norm;
};

/// Pointwise n_precision over the grid plus the SQL companion column.
/// Output order follows the grid order.
std::vector<PrecisionCurvePoint> precision_curve(
    const InterferometerConfig& base, std::span<const double> thetas);

}  // namespace sqmzi
