#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

#include "sqmzi/errors.hpp"
#include "sqmzi/fock.hpp"
#include "sqmzi/gaussian.hpp"
#include "sqmzi/interferometer.hpp"
#include "sqmzi/precision.hpp"
#include "sqmzi/qfim.hpp"
#include "test_util.hpp"

using namespace sqmzi;
using testutil::rel_err;
using Cd = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;
const InterferometerConfig kDesk({0.0, -1.2}, 0.5, 0.8, 0.3);
}  // namespace

TEST_SUITE_BEGIN("fock_oracle");

TEST_CASE("vacuum pipeline is the identity") {
  const auto psi = fock::build_output_state({Cd{0, 0}, 0.0, 0.7, 0.2}, 8);
  CHECK(std::abs(psi.amplitudes()(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(psi.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fock::tail_mass(psi) < 1e-12);
}

TEST_CASE("black fringe returns the coherent beam to mode a") {
  const auto psi = fock::build_output_state({Cd{0, -1.2}, 0.0, 0.0, 0.0}, 25);
  const auto m = fock::mode_moments(fock::reduce_density(psi));
  CHECK(std::abs(m.mean_photons) < 1e-12);
}

TEST_CASE("pipeline stages preserve the norm") {
  for (const auto& cfg :
       {kDesk, InterferometerConfig({0.8, 0.6}, 0.7, 2.1, 1.0)}) {
    const auto psi = fock::build_output_state(cfg, fock::default_cutoff(cfg.alpha(), cfg.r()));
    CHECK(std::abs(psi.norm_sq() - 1.0) < 1e-10);
  }
}

TEST_CASE("default cutoff heuristic") {
  CHECK(fock::default_cutoff({0.0, -1.2}, 0.5) >=
        static_cast<int>(std::ceil(1.44 + 7.2 + 10 * std::pow(std::sinh(0.5), 2) + 15)));
  CHECK(fock::default_cutoff({0, 0}, 0.0) == 15);
}

TEST_CASE("tail mass diagnostics") {
  SUBCASE("vacuum has none") {
    const auto psi = fock::build_output_state({Cd{0, 0}, 0.0, 0.0, 0.0}, 4);
    CHECK(fock::tail_mass(psi) == 0.0);
  }
  SUBCASE("coherent amplitude 1.2 at cutoff 40 is negligible") {
    const auto psi = fock::build_output_state({Cd{0, -1.2}, 0.0, kPi, 0.0}, 40);
    CHECK(fock::tail_mass(psi) < 1e-12);
  }
  SUBCASE("squeezed tail at cutoff 10 triggers the warning threshold") {
    const auto psi = fock::build_output_state({Cd{0, -1.2}, 0.8, 0.0, 0.0}, 10);
    CHECK(fock::tail_mass(psi) > fock::kTailThreshold);
  }
}

TEST_CASE("derivative state") {
  const fock::FockWorkspace ws(40, kDesk.alpha(), kDesk.r());
  const auto psi = ws.output_state(kDesk.phi(), kDesk.theta());
  const auto dpsi = ws.derivative_state_theta(kDesk.phi(), kDesk.theta());

  SUBCASE("norm conservation: Re<psi|dpsi> = 0") {
    const Cd overlap =
        psi.amplitudes().conjugate().cwiseProduct(dpsi.amplitudes()).sum();
    CHECK(std::abs(overlap.real()) < 1e-10);
  }
  SUBCASE("central finite differences converge at O(h^2)") {
    const auto fd_norm = [&](double h) {
      const auto plus = ws.output_state(kDesk.phi(), kDesk.theta() + h);
      const auto minus = ws.output_state(kDesk.phi(), kDesk.theta() - h);
      const Eigen::MatrixXcd fd =
          (plus.amplitudes() - minus.amplitudes()) / (2.0 * h);
      return (fd - dpsi.amplitudes()).norm();
    };
    const double e1 = fd_norm(1e-3);
    const double e2 = fd_norm(5e-4);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
  }
  SUBCASE("vacuum derivative is the zero vector") {
    const auto d0 = fock::derivative_state_theta({Cd{0, 0}, 0.0, 0.4, 0.1}, 6);
    CHECK(d0.amplitudes().norm() < 1e-14);
  }
}

TEST_CASE("reduce_density properties") {
  const auto psi = fock::build_output_state(kDesk, 40);
  const auto rho = fock::reduce_density(psi);
  const Eigen::MatrixXcd& m = rho.matrix();
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(m.trace().real() - 1.0) < 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  CHECK(es.eigenvalues().minCoeff() > -1e-10);

  SUBCASE("black-fringe reduction is pure squeezed") {
    const auto pure = fock::reduce_density(
        fock::build_output_state({Cd{0, -1.2}, 0.6, 0.0, 0.0}, 40));
    CHECK(std::abs(fock::mode_moments(pure).purity - 1.0) < 1e-8);
  }
  SUBCASE("purity equals 1/lambda") {
    const InterferometerConfig cfg({0.0, -1.0}, 0.5, kPi / 2, 0.0);
    const auto red = fock::reduce_density(fock::build_output_state(cfg, 40));
    CHECK(rel_err(fock::mode_moments(red).purity,
                  purity(reduce_to_mode_b(cfg))) < 1e-6);
  }
  SUBCASE("product-state input reduces to the b factor") {
    // theta = 0 keeps the modes disentangled: rho_b is exactly the
    // (phase-rotated) squeezed vacuum regardless of alpha.
    const auto prod = fock::reduce_density(
        fock::build_output_state({Cd{0, -1.2}, 0.6, 0.0, 0.9}, 40));
    const auto bare = fock::reduce_density(
        fock::build_output_state({Cd{0, 0}, 0.6, 0.0, 0.9}, 40));
    CHECK((prod.matrix() - bare.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("sld_qfi collapses to the pure-state formula") {
  const int d = 12;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(d);
  std::srand(7);
  for (int i = 0; i < d; ++i) {
    v(i) = Cd(std::rand() % 100, std::rand() % 100);
    w(i) = Cd(std::rand() % 100, std::rand() % 100);
  }
  v.normalize();
  w *= 0.01;
  // Trace-preserving family: project out the norm-changing part of w.
  w -= v * (v.dot(w)).real();
  const Eigen::MatrixXcd rho = v * v.adjoint();
  const Eigen::MatrixXcd drho = w * v.adjoint() + v * w.adjoint();
  const double expected = 4.0 * (w.squaredNorm() - std::norm(v.dot(w)));
  CHECK(rel_err(fock::sld_qfi(fock::SingleModeDensity(rho), drho), expected) <
        1e-10);
}

TEST_CASE("sld_qfi approaches the black-fringe limit as theta -> 0") {
  const double f0 = two_mode_qfi(1.44, 0.5);
  const fock::FockWorkspace ws(40, Cd{0, -1.2}, 0.5);
  const auto at = [&](double theta) {
    const auto psi = ws.output_state(0.0, theta);
    const auto dpsi = ws.derivative_state_theta(0.0, theta);
    return fock::sld_qfi(fock::reduce_density(psi),
                         fock::reduced_derivative(psi, dpsi));
  };
  const double far = std::abs(at(0.3) - f0);
  const double near = std::abs(at(1e-2) - f0);
  CHECK(near < far);
  CHECK(rel_err(at(1e-2), f0) < 1e-3);
  CHECK(rel_err(at(1e-3), f0) < 1e-5);
}

TEST_CASE("classical Fisher information") {
  SUBCASE("coherent-only photon counting saturates the SQL") {
    for (const double theta : {0.5, 1.2, 2.0}) {
      const InterferometerConfig cfg({0.0, -1.2}, 0.0, theta, 0.0);
      CHECK(rel_err(fock::classical_fisher_number(cfg, 30),
                    sql_precision(1.44, theta)) < 1e-6);
    }
  }
  SUBCASE("white fringe carries no first-order number information") {
    const InterferometerConfig cfg({0.0, -1.2}, 0.5, kPi, 0.0);
    CHECK(std::abs(fock::classical_fisher_number(cfg, 40)) < 1e-12);
  }
  SUBCASE("information chain at the desk-scale grid") {
    const fock::FockWorkspace ws(40, Cd{0, -1.2}, 0.5);
    for (const double theta : {0.4, 0.8, 1.6, 2.4}) {
      const InterferometerConfig cfg({0.0, -1.2}, 0.5, theta, 0.3);
      const auto psi = ws.output_state(0.3, theta);
      const auto dpsi = ws.derivative_state_theta(0.3, theta);
      const auto rho = fock::reduce_density(psi);
      const auto drho = fock::reduced_derivative(psi, dpsi);
      const double p = n_precision(cfg).value;
      const double cfi = fock::classical_fisher_number(cfg, 40);
      const double qfi1 = fock::sld_qfi(rho, drho);
      const double qfi2 = fock::pure_two_mode_qfi(psi, dpsi);
      CHECK(p <= cfi * (1 + 1e-6) + 1e-12);
      CHECK(cfi <= qfi1 * (1 + 1e-6) + 1e-12);
      CHECK(qfi1 <= qfi2 * (1 + 1e-6) + 1e-12);
    }
  }
}

TEST_CASE("pure two-mode QFI") {
  SUBCASE("vacuum carries no phase information") {
    const fock::FockWorkspace ws(6, Cd{0, 0}, 0.0);
    const auto psi = ws.output_state(0.0, 0.4);
    const auto dpsi = ws.derivative_state_theta(0.0, 0.4);
    CHECK(std::abs(fock::pure_two_mode_qfi(psi, dpsi)) < 1e-14);
  }
  SUBCASE("coherent-only SQL") {
    const fock::FockWorkspace ws(30, Cd{0, -1.2}, 0.0);
    const auto psi = ws.output_state(0.0, 0.9);
    const auto dpsi = ws.derivative_state_theta(0.0, 0.9);
    CHECK(rel_err(fock::pure_two_mode_qfi(psi, dpsi), 1.44) < 1e-8);
  }
  SUBCASE("theta independence") {
    const fock::FockWorkspace ws(40, Cd{0, -1.2}, 0.5);
    const double ref = fock::pure_two_mode_qfi(
        ws.output_state(0.0, 0.2), ws.derivative_state_theta(0.0, 0.2));
    for (const double theta : {1.0, 2.0}) {
      const double v = fock::pure_two_mode_qfi(
          ws.output_state(0.0, theta), ws.derivative_state_theta(0.0, theta));
      CHECK(rel_err(v, ref) < 1e-8);
    }
  }
}

TEST_CASE("gaussian-moment equivalence toward the desk-scale edge") {
  // The default heuristic cutoff (39 here) leaves ~1e-9 tail at the corner
  // of the certified domain; 1e-8 moments need a larger one.
  const InterferometerConfig cfg({0.0, -2.0}, 0.8, 1.6, 0.5);
  const auto psi = fock::build_output_state(cfg, 70);
  CHECK(fock::tail_mass(psi) < 1e-10);
  const auto m = fock::mode_moments(fock::reduce_density(psi));
  const auto closed = reduce_to_mode_b(cfg);
  CHECK(rel_err(m.mean_field, closed.mean_field) < 1e-8);
  CHECK(rel_err(m.normal_moment, closed.normal_moment) < 1e-8);
  CHECK(rel_err(m.anomalous_moment, closed.anomalous_moment) < 1e-8);
  CHECK(rel_err(m.mean_photons, mean_photon_number(cfg)) < 1e-8);
  CHECK(rel_err(m.photon_variance, photon_number_variance(cfg)) < 1e-8);
}

TEST_CASE("oracle QFI discrepancy shrinks with the cutoff") {
  const auto q = qfim_mixed(kDesk);
  double prev = 1e300;
  for (const int cutoff : {30, 40, 50}) {
    const fock::FockWorkspace ws(cutoff, kDesk.alpha(), kDesk.r());
    const auto psi = ws.output_state(kDesk.phi(), kDesk.theta());
    const auto dpsi = ws.derivative_state_theta(kDesk.phi(), kDesk.theta());
    const double oracle = fock::sld_qfi(fock::reduce_density(psi),
                                        fock::reduced_derivative(psi, dpsi));
    const double err = rel_err(q.theta_theta, oracle);
    CHECK(err < 1e-3);
    CHECK(err <= prev + 1e-12);  // within the double-precision floor
    prev = err;
  }
}

TEST_CASE("workspace dimension validation") {
  CHECK_THROWS_AS(fock::FockWorkspace(1, Cd{0, 0}, 0.0), std::invalid_argument);
}

TEST_SUITE_END();
