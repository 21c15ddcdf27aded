#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sqmzi {

/// Shortest round-trip decimal form with up to 17 significant digits;
/// locale independent, so CSV output is bit-stable across runs.
std::string format_double(double value);

enum class SweepColumn {
  NPrecision,
  Sql,
  Qfi,
  QfiPureLimit,
  CfiOracle,
  QfiOracle,
  Lambda,
  ROut,
};

/// Parses a comma-separated column list; throws std::invalid_argument on
/// unknown names.
std::vector<SweepColumn> parse_columns(const std::string& spec);

bool is_oracle_column(SweepColumn c);

struct SweepSpec {
  double alpha_sq = 0.0;
  double r = 0.0;
  double phi = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
  int points = 0;
  std::vector<SweepColumn> columns;
  std::optional<int> cutoff;  // required when oracle columns are present
};

/// Evenly spaced grid theta_i = min + (max - min) * i / (points - 1);
/// symmetric ranges with an odd point count hit theta = 0 exactly.
std::vector<double> sweep_grid(double theta_min, double theta_max, int points);

/// One CSV row per grid point. Figure-style columns (n_precision, sql, qfi,
/// qfi_pure_limit) are emitted raw plus a `_norm` companion divided by
/// |alpha|^2; oracle columns add a trailing tail_mass column. Truncation
/// and conditioning problems are reported on `diag` and do not abort the
/// sweep. Throws DegenerateInput / std::invalid_argument on bad specs.
void run_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& diag);

struct PointSpec {
  double alpha_sq = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Scalar report: moments, N-precision, Williamson data, the full QFIM with
/// its regime, and the two-mode benchmark; at a fringe both the pure-point
/// and pure-limit QFIM values are printed.
void run_point(const PointSpec& spec, std::ostream& out);

struct CertifySpec {
  std::complex<double> alpha;
  double r = 0.0;
  double phi = 0.0;
  int cutoff = 0;
  std::vector<double> thetas = {0.4, 0.8, 1.6, 2.4};
  double tail_tolerance = 1e-10;
};

/// Runs the closed-form vs Fock-oracle equivalence suite and prints one
/// row per check with its relative error and tolerance. Returns true iff
/// every check passed. Inputs are restricted to the certified domain
/// |alpha| <= 2, r <= 0.8.
bool run_certify(const CertifySpec& spec, std::ostream& out);

}  // namespace sqmzi
