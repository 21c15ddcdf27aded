// Command-line front end: parameter sweeps (CSV), single-point reports and
// Fock-oracle certification runs.
//
// Exit codes: 0 success, 1 check failure, 2 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "sqmzi/errors.hpp"
#include "sqmzi/interferometer.hpp"
#include "sqmzi/sweep.hpp"

namespace {

struct RangeSpec {
  double lo = 0.0;
  double hi = 0.0;
};

RangeSpec parse_range(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos)
    throw sqmzi::DegenerateInput("expected a range of the form a..b: " + text);
  RangeSpec range;
  std::size_t lo_end = 0, hi_end = 0;
  const std::string lo = text.substr(0, sep);
  const std::string hi = text.substr(sep + 2);
  range.lo = std::stod(lo, &lo_end);
  range.hi = std::stod(hi, &hi_end);
  if (lo_end != lo.size() || hi_end != hi.size())
    throw sqmzi::DegenerateInput("malformed range: " + text);
  return range;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    out.push_back(std::stod(token));
  }
  return out;
}

double resolve_squeezing(const std::optional<double>& r,
                         const std::optional<double>& db) {
  if (r && db)
    throw sqmzi::DegenerateInput("give either --r or --db, not both");
  if (db) return sqmzi::squeezing_from_db(*db);
  if (r) return *r;
  return 0.0;
}

double to_radians(double value, bool degrees) {
  return degrees ? value * std::numbers::pi / 180.0 : value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quantum precision limits for a Mach-Zehnder interferometer fed with "
      "coherent light and squeezed vacuum, single-mode readout"};
  app.require_subcommand(1);

  // --- sweep ---
  auto* sweep = app.add_subcommand(
      "sweep", "CSV of precision/QFI quantities over a theta grid");
  double sw_alpha_sq = 0.0;
  std::optional<double> sw_r, sw_db;
  double sw_phi = 0.0;
  std::string sw_range;
  int sw_points = 0;
  std::string sw_columns = "n_precision,sql";
  std::optional<int> sw_cutoff;
  bool sw_degrees = false;
  std::string sw_output;
  sweep->add_option("--alpha-sq", sw_alpha_sq, "|alpha|^2 of the coherent input")
      ->required();
  sweep->add_option("--r", sw_r, "squeezing parameter r");
  sweep->add_option("--db", sw_db, "squeezing in dB (r = dB ln10 / 20)");
  sweep->add_option("--phi", sw_phi, "sum phase (default 0)");
  sweep->add_option("--theta-range,--theta", sw_range,
                    "theta range, min..max (radians unless --degrees)")
      ->required();
  sweep->add_option("--points", sw_points, "grid size (>= 2)")->required();
  sweep->add_option("--columns", sw_columns,
                    "comma list from n_precision,sql,qfi,qfi_pure_limit,"
                    "cfi_oracle,qfi_oracle,lambda,r_out");
  sweep->add_option("--cutoff", sw_cutoff,
                    "Fock cutoff (required for oracle columns)");
  sweep->add_flag("--degrees", sw_degrees, "interpret theta inputs in degrees");
  sweep->add_option("--output", sw_output, "write CSV to this path");

  // --- point ---
  auto* point = app.add_subcommand("point", "scalar report at one (theta, phi)");
  double pt_alpha_sq = 0.0;
  std::optional<double> pt_r, pt_db;
  double pt_phi = 0.0;
  double pt_theta = 0.0;
  bool pt_degrees = false;
  point->add_option("--alpha-sq", pt_alpha_sq, "|alpha|^2")->required();
  point->add_option("--r", pt_r, "squeezing parameter r");
  point->add_option("--db", pt_db, "squeezing in dB");
  point->add_option("--phi", pt_phi, "sum phase (default 0)");
  point->add_option("--theta", pt_theta, "difference phase")->required();
  point->add_flag("--degrees", pt_degrees, "interpret theta/phi in degrees");

  // --- certify ---
  auto* certify = app.add_subcommand(
      "certify", "closed forms vs the truncated-Fock oracle (desk scale)");
  double ct_alpha_re = 0.0, ct_alpha_im = 0.0;
  std::optional<double> ct_r, ct_db;
  double ct_phi = 0.3;
  int ct_cutoff = 0;
  std::string ct_grid = "0.4,0.8,1.6,2.4";
  certify->add_option("--alpha-re", ct_alpha_re, "Re alpha");
  certify->add_option("--alpha-im", ct_alpha_im, "Im alpha");
  certify->add_option("--r", ct_r, "squeezing parameter r");
  certify->add_option("--db", ct_db, "squeezing in dB");
  certify->add_option("--phi", ct_phi, "sum phase (default 0.3)");
  certify->add_option("--cutoff", ct_cutoff, "Fock cutoff")->required();
  certify->add_option("--theta-grid", ct_grid, "comma list of theta values");

  try {
    app.parse(argc, argv);

    if (sweep->parsed()) {
      const RangeSpec range = parse_range(sw_range);
      sqmzi::SweepSpec spec;
      spec.alpha_sq = sw_alpha_sq;
      spec.r = resolve_squeezing(sw_r, sw_db);
      spec.phi = sw_phi;
      spec.theta_min = to_radians(range.lo, sw_degrees);
      spec.theta_max = to_radians(range.hi, sw_degrees);
      spec.points = sw_points;
      spec.columns = sqmzi::parse_columns(sw_columns);
      spec.cutoff = sw_cutoff;
      if (!sw_output.empty()) {
        std::ofstream file(sw_output);
        if (!file) throw sqmzi::DegenerateInput("cannot open " + sw_output);
        sqmzi::run_sweep(spec, file, std::cerr);
      } else {
        sqmzi::run_sweep(spec, std::cout, std::cerr);
      }
      return 0;
    }

    if (point->parsed()) {
      sqmzi::PointSpec spec;
      spec.alpha_sq = pt_alpha_sq;
      spec.r = resolve_squeezing(pt_r, pt_db);
      spec.theta = to_radians(pt_theta, pt_degrees);
      spec.phi = to_radians(pt_phi, pt_degrees);
      sqmzi::run_point(spec, std::cout);
      return 0;
    }

    if (certify->parsed()) {
      sqmzi::CertifySpec spec;
      spec.alpha = {ct_alpha_re, ct_alpha_im};
      spec.r = resolve_squeezing(ct_r, ct_db);
      spec.phi = ct_phi;
      spec.cutoff = ct_cutoff;
      spec.thetas = parse_grid(ct_grid);
      return sqmzi::run_certify(spec, std::cout) ? 0 : 1;
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const sqmzi::DegenerateInput& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
