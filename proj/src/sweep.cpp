#include "sqmzi/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sqmzi/errors.hpp"
#include "sqmzi/fock.hpp"
#include "sqmzi/gaussian.hpp"
#include "sqmzi/precision.hpp"
#include "sqmzi/qfim.hpp"

namespace sqmzi {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<SweepColumn> parse_columns(const std::string& spec) {
  std::vector<SweepColumn> out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (token == "n_precision")
      out.push_back(SweepColumn::NPrecision);
    else if (token == "sql")
      out.push_back(SweepColumn::Sql);
    else if (token == "qfi")
      out.push_back(SweepColumn::Qfi);
    else if (token == "qfi_pure_limit")
      out.push_back(SweepColumn::QfiPureLimit);
    else if (token == "cfi_oracle")
      out.push_back(SweepColumn::CfiOracle);
    else if (token == "qfi_oracle")
      out.push_back(SweepColumn::QfiOracle);
    else if (token == "lambda")
      out.push_back(SweepColumn::Lambda);
    else if (token == "r_out")
      out.push_back(SweepColumn::ROut);
    else
      throw std::invalid_argument("unknown column: " + token);
  }
  if (out.empty()) throw std::invalid_argument("empty column list");
  return out;
}

bool is_oracle_column(SweepColumn c) {
  return c == SweepColumn::CfiOracle || c == SweepColumn::QfiOracle;
}

std::vector<double> sweep_grid(double theta_min, double theta_max,
                               int points) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = theta_min +
              (theta_max - theta_min) * (double(i) / double(points - 1));
  return grid;
}

namespace {

const char* column_name(SweepColumn c) {
  switch (c) {
    case SweepColumn::NPrecision: return "n_precision";
    case SweepColumn::Sql: return "sql";
    case SweepColumn::Qfi: return "qfi";
    case SweepColumn::QfiPureLimit: return "qfi_pure_limit";
    case SweepColumn::CfiOracle: return "cfi_oracle";
    case SweepColumn::QfiOracle: return "qfi_oracle";
    case SweepColumn::Lambda: return "lambda";
    case SweepColumn::ROut: return "r_out";
  }
  return "?";
}

bool has_norm_companion(SweepColumn c) {
  return c == SweepColumn::NPrecision || c == SweepColumn::Sql ||
         c == SweepColumn::Qfi || c == SweepColumn::QfiPureLimit;
}

struct OracleRow {
  double cfi = std::numeric_limits<double>::quiet_NaN();
  double qfi = std::numeric_limits<double>::quiet_NaN();
  double tail = std::numeric_limits<double>::quiet_NaN();
  std::string problem;
};

OracleRow oracle_row(const fock::FockWorkspace& ws,
                     const InterferometerConfig& cfg, bool want_cfi,
                     bool want_qfi) {
  OracleRow out;
  const fock::TwoModeState psi = ws.output_state(cfg.phi(), cfg.theta());
  const fock::TwoModeState dpsi =
      ws.derivative_state_theta(cfg.phi(), cfg.theta());
  out.tail = fock::tail_mass(psi);
  const fock::SingleModeDensity rho = fock::reduce_density(psi);
  const Eigen::MatrixXcd drho = fock::reduced_derivative(psi, dpsi);
  try {
    if (want_qfi) out.qfi = fock::sld_qfi(rho, drho);
    if (want_cfi) {
      // Same sum as classical_fisher_number but on the shared workspace.
      const auto fisher = [&](double eps_p) {
        double total = 0.0;
        for (int n = 0; n < ws.dim(); ++n) {
          const double p = rho.matrix()(n, n).real();
          if (p <= eps_p) continue;
          const double dp = drho(n, n).real();
          total += dp * dp / p;
        }
        return total;
      };
      const double primary = fisher(1e-12);
      const double check = fisher(1e-13);
      const double scale = std::max(std::abs(primary), std::abs(check));
      if (scale >= 1e-12 && std::abs(primary - check) / scale > 1e-4)
        throw IllConditioned("cfi eps_p sensitivity check failed");
      out.cfi = primary;
    }
  } catch (const IllConditioned& e) {
    out.problem = e.what();
  }
  return out;
}

}  // namespace

void run_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& diag) {
  if (!(spec.alpha_sq > 0.0))
    throw DegenerateInput("sweep: alpha_sq must be > 0");
  if (!(spec.theta_min < spec.theta_max))
    throw std::invalid_argument("sweep: need theta_min < theta_max");
  if (spec.points < 2) throw std::invalid_argument("sweep: need points >= 2");
  if (spec.columns.empty())
    throw std::invalid_argument("sweep: need at least one column");
  const bool oracle =
      std::any_of(spec.columns.begin(), spec.columns.end(), is_oracle_column);
  if (oracle && !spec.cutoff)
    throw std::invalid_argument("sweep: oracle columns require --cutoff");

  std::string header = "theta";
  for (const SweepColumn c : spec.columns) {
    header += ',';
    header += column_name(c);
    if (has_norm_companion(c)) {
      header += ',';
      header += column_name(c);
      header += "_norm";
    }
  }
  if (oracle) header += ",tail_mass";
  out << header << '\n';

  const std::vector<double> grid =
      sweep_grid(spec.theta_min, spec.theta_max, spec.points);

  std::optional<fock::FockWorkspace> ws;
  if (oracle)
    ws.emplace(*spec.cutoff,
               std::complex<double>(0.0, -std::sqrt(spec.alpha_sq)), spec.r);

  double max_tail = 0.0;
  std::vector<std::string> problems;

  const auto make_row = [&](double theta) {
    const InterferometerConfig cfg =
        InterferometerConfig::from_alpha_sq(spec.alpha_sq, spec.r, theta,
                                            spec.phi);
    std::string row = format_double(theta);
    OracleRow orc;
    if (oracle)
      orc = oracle_row(*ws, cfg,
                       std::find(spec.columns.begin(), spec.columns.end(),
                                 SweepColumn::CfiOracle) != spec.columns.end(),
                       std::find(spec.columns.begin(), spec.columns.end(),
                                 SweepColumn::QfiOracle) != spec.columns.end());
    const auto append = [&row](double v) {
      row += ',';
      row += format_double(v);
    };
    for (const SweepColumn c : spec.columns) {
      switch (c) {
        case SweepColumn::NPrecision: {
          const PrecisionPoint p = n_precision(cfg);
          append(p.value);
          append(p.normalized);
          break;
        }
        case SweepColumn::Sql: {
          const double v = sql_precision(spec.alpha_sq, theta);
          append(v);
          append(v / spec.alpha_sq);
          break;
        }
        case SweepColumn::Qfi: {
          const double v = qfim(cfg).theta_theta;
          append(v);
          append(v / spec.alpha_sq);
          break;
        }
        case SweepColumn::QfiPureLimit: {
          // Black-fringe pure-limit value, the constant reference line.
          const double v = two_mode_qfi(spec.alpha_sq, spec.r);
          append(v);
          append(v / spec.alpha_sq);
          break;
        }
        case SweepColumn::CfiOracle: append(orc.cfi); break;
        case SweepColumn::QfiOracle: append(orc.qfi); break;
        case SweepColumn::Lambda:
          append(symplectic_eigenvalue(reduce_to_mode_b(cfg)));
          break;
        case SweepColumn::ROut: append(williamson(reduce_to_mode_b(cfg)).r_out); break;
      }
    }
    if (oracle) {
      row += ',';
      row += format_double(orc.tail);
      max_tail = std::max(max_tail, orc.tail);
      if (!orc.problem.empty())
        problems.push_back("theta=" + format_double(theta) + ": " +
                           orc.problem);
    }
    row += '\n';
    return row;
  };

  std::vector<std::string> rows(grid.size());
  const unsigned hw = std::thread::hardware_concurrency();
  const bool parallel = !oracle && grid.size() >= 256 && hw > 1;
  if (parallel) {
    const unsigned nthreads = std::min(hw, 8u);
    std::vector<std::thread> threads;
    threads.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
      threads.emplace_back([&, t] {
        for (std::size_t i = t; i < grid.size(); i += nthreads)
          rows[i] = make_row(grid[i]);
      });
    }
    for (auto& th : threads) th.join();
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = make_row(grid[i]);
  }

  for (const std::string& row : rows) out << row;

  if (oracle && max_tail > fock::kTailThreshold)
    diag << "warning: truncation tail mass reached " << format_double(max_tail)
         << " (threshold " << format_double(fock::kTailThreshold)
         << "); increase --cutoff\n";
  for (const std::string& p : problems) diag << "warning: " << p << '\n';
}

namespace {

const char* regime_name(QfimRegime regime) {
  switch (regime) {
    case QfimRegime::Mixed: return "Mixed";
    case QfimRegime::PurePoint: return "PurePoint";
    case QfimRegime::PureLimit: return "PureLimit";
  }
  return "?";
}

}  // namespace

void run_point(const PointSpec& spec, std::ostream& out) {
  const InterferometerConfig cfg = InterferometerConfig::from_alpha_sq(
      spec.alpha_sq, spec.r, spec.theta, spec.phi);

  out << "alpha_sq        = " << format_double(spec.alpha_sq) << '\n'
      << "r               = " << format_double(spec.r) << '\n'
      << "theta           = " << format_double(spec.theta) << '\n'
      << "phi             = " << format_double(spec.phi) << '\n';

  out << "mean_photons    = " << format_double(mean_photon_number(cfg)) << '\n'
      << "photon_variance = " << format_double(photon_number_variance(cfg))
      << '\n';

  if (spec.alpha_sq > 0.0) {
    const PrecisionPoint p = n_precision(cfg);
    out << "n_precision     = " << format_double(p.value) << '\n'
        << "n_precision_norm= " << format_double(p.normalized) << '\n';
  } else {
    out << "n_precision     = n/a (|alpha| = 0)\n";
  }

  const SingleModeGaussian state = reduce_to_mode_b(cfg);
  const WilliamsonDecomp w = williamson(state);
  out << "lambda          = " << format_double(w.sym_eigenvalue) << '\n'
      << "r_out           = " << format_double(w.r_out) << '\n'
      << "purity          = " << format_double(purity(state)) << '\n';

  const QfimResult q = qfim(cfg);
  out << "qfim_regime     = " << regime_name(q.regime) << '\n'
      << "q_phi_phi       = " << format_double(q.phi_phi) << '\n'
      << "q_phi_theta     = " << format_double(q.phi_theta) << '\n'
      << "q_theta_theta   = " << format_double(q.theta_theta) << '\n';
  if (spec.alpha_sq > 0.0)
    out << "q_theta_theta_norm = "
        << format_double(q.theta_theta / spec.alpha_sq) << '\n';
  if (q.fringe_limit) {
    out << "pure_limit_q_phi_phi     = "
        << format_double(q.fringe_limit->phi_phi) << '\n'
        << "pure_limit_q_phi_theta   = "
        << format_double(q.fringe_limit->phi_theta) << '\n'
        << "pure_limit_q_theta_theta = "
        << format_double(q.fringe_limit->theta_theta) << '\n';
  }
  out << "two_mode_qfi    = " << format_double(two_mode_qfi(spec.alpha_sq, spec.r))
      << '\n';
}

namespace {

class CheckTable {
 public:
  explicit CheckTable(std::ostream& out) : out_(out) {
    out_ << "check | closed-form | oracle | rel.err | tol | status\n";
  }

  void relative(const std::string& name, double expected, double actual,
                double tol) {
    const double scale = std::max(std::abs(expected), std::abs(actual));
    const double rel = scale < 1e-12 ? 0.0 : std::abs(expected - actual) / scale;
    row(name, format_double(expected), format_double(actual), rel, tol,
        rel <= tol);
  }

  void relative(const std::string& name, std::complex<double> expected,
                std::complex<double> actual, double tol) {
    const double scale = std::max(std::abs(expected), std::abs(actual));
    const double rel = scale < 1e-12 ? 0.0 : std::abs(expected - actual) / scale;
    row(name, format_complex(expected), format_complex(actual), rel, tol,
        rel <= tol);
  }

  void upper_bound(const std::string& name, double value, double bound) {
    row(name, format_double(bound) + " (bound)", format_double(value),
        value <= bound ? 0.0 : value - bound, bound, value <= bound);
  }

  /// lhs <= rhs within relative slack.
  void ordered(const std::string& name, double lhs, double rhs, double slack) {
    const bool ok = lhs <= rhs + slack * std::max(1.0, std::abs(rhs));
    row(name, format_double(lhs) + " <= " + format_double(rhs), ok ? "ok" : "violated",
        std::max(0.0, lhs - rhs), slack, ok);
  }

  void failure(const std::string& name, const std::string& message) {
    out_ << name << " | - | " << message << " | - | - | FAIL\n";
    all_pass_ = false;
  }

  bool all_pass() const { return all_pass_; }

 private:
  static std::string format_complex(std::complex<double> z) {
    return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") +
           format_double(std::abs(z.imag())) + "i";
  }

  void row(const std::string& name, const std::string& expected,
           const std::string& actual, double err, double tol, bool pass) {
    out_ << name << " | " << expected << " | " << actual << " | "
         << format_double(err) << " | " << format_double(tol) << " | "
         << (pass ? "PASS" : "FAIL") << '\n';
    if (!pass) all_pass_ = false;
  }

  std::ostream& out_;
  bool all_pass_ = true;
};

}  // namespace

bool run_certify(const CertifySpec& spec, std::ostream& out) {
  if (std::abs(spec.alpha) > 2.0 || spec.r > 0.8)
    throw DegenerateInput(
        "certify: certified domain is |alpha| <= 2, r <= 0.8");
  if (spec.cutoff < 2)
    throw std::invalid_argument("certify: cutoff must be >= 2");
  if (spec.thetas.empty())
    throw std::invalid_argument("certify: need at least one theta");

  out << "oracle certification: alpha = (" << format_double(spec.alpha.real())
      << ", " << format_double(spec.alpha.imag()) << "), r = "
      << format_double(spec.r) << ", phi = " << format_double(spec.phi)
      << ", cutoff = " << spec.cutoff << '\n';
  out << "certified domain: |alpha| <= 2, r <= 0.8. Closed forms at larger "
         "scales are exact evaluations; the Fock oracle certifies only this "
         "desk-scale domain.\n";

  const fock::FockWorkspace ws(spec.cutoff, spec.alpha, spec.r);
  CheckTable table(out);
  const bool phase_convention_ok = alpha_on_minus_i_axis(spec.alpha);
  const double alpha_sq = std::norm(spec.alpha);
  if (!phase_convention_ok)
    out << "note: alpha is not on the -i axis; precision/QFIM checks are "
           "skipped (moment checks support general alpha)\n";

  for (const double theta : spec.thetas) {
    const std::string tag = " @theta=" + format_double(theta);
    const InterferometerConfig cfg(spec.alpha, spec.r, theta, spec.phi);

    const fock::TwoModeState psi = ws.output_state(spec.phi, theta);
    const double tail = fock::tail_mass(psi);
    table.upper_bound("tail_mass" + tag, tail, spec.tail_tolerance);

    const fock::SingleModeDensity rho = fock::reduce_density(psi);
    const fock::ModeMoments moments = fock::mode_moments(rho);

    table.relative("mean_photons" + tag, mean_photon_number(cfg),
                   moments.mean_photons, 1e-8);
    table.relative("photon_variance" + tag, photon_number_variance(cfg),
                   moments.photon_variance, 1e-8);

    const SingleModeGaussian closed = reduce_to_mode_b(cfg);
    table.relative("mean_field" + tag, closed.mean_field, moments.mean_field,
                   1e-8);
    table.relative("normal_moment" + tag, closed.normal_moment,
                   moments.normal_moment, 1e-8);
    table.relative("anomalous_moment" + tag, closed.anomalous_moment,
                   moments.anomalous_moment, 1e-8);
    table.relative("purity" + tag, purity(closed), moments.purity, 1e-6);

    if (!phase_convention_ok) continue;

    const fock::TwoModeState dpsi_theta =
        ws.derivative_state_theta(spec.phi, theta);
    const fock::TwoModeState dpsi_phi = ws.derivative_state_phi(spec.phi, theta);
    const Eigen::MatrixXcd drho_theta = fock::reduced_derivative(psi, dpsi_theta);
    const Eigen::MatrixXcd drho_phi = fock::reduced_derivative(psi, dpsi_phi);

    const QfimResult closed_qfim = qfim(cfg);
    try {
      const double oracle_qfi = fock::sld_qfi(rho, drho_theta);
      table.relative("qfi_theta_theta" + tag, closed_qfim.theta_theta,
                     oracle_qfi, 1e-3);

      const double oracle_cross = fock::sld_qfi_cross(rho, drho_theta, drho_phi);
      table.upper_bound("|qfi_phi_theta|" + tag, std::abs(oracle_cross),
                        1e-4 * closed_qfim.theta_theta);

      const double f0 = two_mode_qfi(alpha_sq, spec.r);
      const double oracle_two_mode = fock::pure_two_mode_qfi(psi, dpsi_theta);
      table.relative("two_mode_qfi" + tag, f0, oracle_two_mode, 1e-6);

      const auto cfi = [&] {
        double total = 0.0;
        for (int n = 0; n < ws.dim(); ++n) {
          const double p = rho.matrix()(n, n).real();
          if (p <= 1e-12) continue;
          const double dp = drho_theta(n, n).real();
          total += dp * dp / p;
        }
        return total;
      }();
      if (alpha_sq > 0.0) {
        const double p_theta = n_precision(cfg).value;
        table.ordered("chain P<=CFI" + tag, p_theta, cfi, 1e-6);
      }
      table.ordered("chain CFI<=QFI" + tag, cfi, oracle_qfi, 1e-6);
      table.ordered("chain QFI<=F0" + tag, oracle_qfi, f0, 1e-6);
    } catch (const IllConditioned& e) {
      table.failure("sld" + tag, e.what());
    }
  }

  out << (table.all_pass() ? "CERTIFY PASS" : "CERTIFY FAIL") << '\n';
  return table.all_pass();
}

}  // namespace sqmzi
