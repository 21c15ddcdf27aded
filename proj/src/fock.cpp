#include "sqmzi/fock.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqmzi/errors.hpp"

namespace sqmzi::fock {

namespace {

using Cd = std::complex<double>;
constexpr Cd kI{0.0, 1.0};

Eigen::MatrixXcd ladder(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

/// exp(A) for anti-Hermitian A, via the eigendecomposition of iA; exactly
/// unitary up to eigensolver precision.
Eigen::MatrixXcd anti_hermitian_exp(const Eigen::MatrixXcd& a) {
  const Eigen::MatrixXcd h = kI * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd phases =
      (-kI * es.eigenvalues().array()).exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

struct SldWorkspace {
  Eigen::VectorXd p;
  Eigen::MatrixXcd drho_eig;  // drho rotated into the eigenbasis of rho
};

SldWorkspace to_eigenbasis(const SingleModeDensity& rho,
                           const Eigen::MatrixXcd& drho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
  SldWorkspace w;
  w.p = es.eigenvalues();
  w.drho_eig = es.eigenvectors().adjoint() * drho * es.eigenvectors();
  return w;
}

double sld_sum(const SldWorkspace& w, double eps_cut) {
  const int n = static_cast<int>(w.p.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double denom = w.p(i) + w.p(j);
      if (denom <= eps_cut) continue;
      total += 2.0 * std::norm(w.drho_eig(i, j)) / denom;
    }
  }
  return total;
}

double sld_cross_sum(const SldWorkspace& wk, const SldWorkspace& wl,
                     double eps_cut) {
  const int n = static_cast<int>(wk.p.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double denom = wk.p(i) + wk.p(j);
      if (denom <= eps_cut) continue;
      total += 2.0 *
               std::real(wk.drho_eig(i, j) * std::conj(wl.drho_eig(i, j))) /
               denom;
    }
  }
  return total;
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < 1e-12) return 0.0;
  return std::abs(a - b) / scale;
}

constexpr double kEpsCut = 1e-12;
constexpr double kSensitivityRel = 1e-4;

}  // namespace

int default_cutoff(std::complex<double> alpha, double r) {
  const double amag = std::abs(alpha);
  const double sh = std::sinh(r);
  return static_cast<int>(
      std::ceil(amag * amag + 6.0 * amag + 10.0 * sh * sh + 15.0));
}

double tail_mass(const TwoModeState& state) {
  const Eigen::MatrixXcd& m = state.amplitudes();
  const int d = state.dim();
  double top = 0.0;
  for (int k = std::max(0, d - 2); k < d; ++k) {
    top += m.row(k).squaredNorm();
    top += m.col(k).squaredNorm();
  }
  return std::max(0.0, 1.0 - state.norm_sq()) + top;
}

FockWorkspace::FockWorkspace(int dim, std::complex<double> alpha, double r)
    : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("FockWorkspace: dim must be >= 2");
  if (!(r >= 0.0)) throw std::invalid_argument("FockWorkspace: r must be >= 0");

  const Eigen::MatrixXcd a = ladder(dim);
  const Eigen::MatrixXcd adag = a.adjoint();

  if (alpha == Cd{0.0, 0.0}) {
    displace_ = Eigen::MatrixXcd::Identity(dim, dim);
  } else {
    displace_ = anti_hermitian_exp(alpha * adag - std::conj(alpha) * a);
  }
  if (r == 0.0) {
    squeeze_ = Eigen::MatrixXcd::Identity(dim, dim);
  } else {
    squeeze_ = anti_hermitian_exp(0.5 * r * (a * a - adag * adag));
  }

  // Balanced-beam-splitter generator (pi/4)(a^dag b - a b^dag) conserves
  // n_a + n_b; exponentiate per total-number block. Block N covers
  // k = n_a in [max(0, N-dim+1), min(N, dim-1)].
  bs_blocks_.reserve(2 * dim - 1);
  for (int total = 0; total <= 2 * (dim - 1); ++total) {
    const int k_lo = std::max(0, total - (dim - 1));
    const int k_hi = std::min(total, dim - 1);
    const int size = k_hi - k_lo + 1;
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i + 1 < size; ++i) {
      const int k = k_lo + i;
      const double g =
          std::numbers::pi / 4.0 * std::sqrt(double(k + 1) * double(total - k));
      gen(i + 1, i) = g;
      gen(i, i + 1) = -g;
    }
    bs_blocks_.push_back(anti_hermitian_exp(gen.cast<Cd>()).real());
  }
}

void FockWorkspace::apply_beam_splitter(Eigen::MatrixXcd& amp,
                                        bool adjoint) const {
  for (int total = 0; total <= 2 * (dim_ - 1); ++total) {
    const Eigen::MatrixXd& block = bs_blocks_[total];
    const int size = static_cast<int>(block.rows());
    const int k_lo = std::max(0, total - (dim_ - 1));
    Eigen::VectorXcd v(size);
    for (int i = 0; i < size; ++i) v(i) = amp(k_lo + i, total - (k_lo + i));
    const Eigen::VectorXcd w =
        adjoint ? (block.transpose() * v).eval() : (block * v).eval();
    for (int i = 0; i < size; ++i) amp(k_lo + i, total - (k_lo + i)) = w(i);
  }
}

TwoModeState FockWorkspace::pipeline(double phi, double theta,
                                     DerivativeKind kind) const {
  Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(dim_, dim_);
  amp(0, 0) = 1.0;
  amp = displace_ * amp;                 // mode a (row index)
  amp = amp * squeeze_.transpose();      // mode b (column index)
  apply_beam_splitter(amp, /*adjoint=*/false);

  const double theta_a = (phi + theta) / 2.0;
  const double theta_b = (phi - theta) / 2.0;
  Eigen::VectorXcd phase_a(dim_), phase_b(dim_);
  for (int n = 0; n < dim_; ++n) {
    phase_a(n) = std::polar(1.0, theta_a * n);
    phase_b(n) = std::polar(1.0, theta_b * n);
  }
  amp = phase_a.asDiagonal() * amp * phase_b.asDiagonal();

  if (kind != DerivativeKind::None) {
    const double sign = kind == DerivativeKind::Theta ? -1.0 : 1.0;
    for (int na = 0; na < dim_; ++na)
      for (int nb = 0; nb < dim_; ++nb)
        amp(na, nb) *= 0.5 * kI * (double(na) + sign * double(nb));
  }

  apply_beam_splitter(amp, /*adjoint=*/true);
  return TwoModeState(std::move(amp));
}

TwoModeState FockWorkspace::output_state(double phi, double theta) const {
  return pipeline(phi, theta, DerivativeKind::None);
}

TwoModeState FockWorkspace::derivative_state_theta(double phi,
                                                   double theta) const {
  return pipeline(phi, theta, DerivativeKind::Theta);
}

TwoModeState FockWorkspace::derivative_state_phi(double phi,
                                                 double theta) const {
  return pipeline(phi, theta, DerivativeKind::Phi);
}

TwoModeState build_output_state(const InterferometerConfig& cfg, int cutoff) {
  return FockWorkspace(cutoff, cfg.alpha(), cfg.r())
      .output_state(cfg.phi(), cfg.theta());
}

TwoModeState derivative_state_theta(const InterferometerConfig& cfg,
                                    int cutoff) {
  return FockWorkspace(cutoff, cfg.alpha(), cfg.r())
      .derivative_state_theta(cfg.phi(), cfg.theta());
}

TwoModeState derivative_state_phi(const InterferometerConfig& cfg,
                                  int cutoff) {
  return FockWorkspace(cutoff, cfg.alpha(), cfg.r())
      .derivative_state_phi(cfg.phi(), cfg.theta());
}

SingleModeDensity reduce_density(const TwoModeState& state) {
  const Eigen::MatrixXcd& m = state.amplitudes();
  return SingleModeDensity(m.transpose() * m.conjugate());
}

Eigen::MatrixXcd reduced_derivative(const TwoModeState& psi,
                                    const TwoModeState& dpsi) {
  const Eigen::MatrixXcd& m = psi.amplitudes();
  const Eigen::MatrixXcd& dm = dpsi.amplitudes();
  return dm.transpose() * m.conjugate() + m.transpose() * dm.conjugate();
}

double sld_qfi(const SingleModeDensity& rho, const Eigen::MatrixXcd& drho) {
  const SldWorkspace w = to_eigenbasis(rho, drho);
  const double primary = sld_sum(w, kEpsCut);
  const double check = sld_sum(w, kEpsCut / 10.0);
  if (relative_gap(primary, check) > kSensitivityRel)
    throw IllConditioned("sld_qfi: eps_cut sensitivity check failed");
  return primary;
}

double sld_qfi_cross(const SingleModeDensity& rho,
                     const Eigen::MatrixXcd& drho_k,
                     const Eigen::MatrixXcd& drho_l) {
  const SldWorkspace wk = to_eigenbasis(rho, drho_k);
  const SldWorkspace wl = to_eigenbasis(rho, drho_l);
  const double primary = sld_cross_sum(wk, wl, kEpsCut);
  const double check = sld_cross_sum(wk, wl, kEpsCut / 10.0);
  if (relative_gap(primary, check) > kSensitivityRel)
    throw IllConditioned("sld_qfi_cross: eps_cut sensitivity check failed");
  return primary;
}

double classical_fisher_number(const InterferometerConfig& cfg, int cutoff) {
  const FockWorkspace ws(cutoff, cfg.alpha(), cfg.r());
  const TwoModeState psi = ws.output_state(cfg.phi(), cfg.theta());
  const TwoModeState dpsi = ws.derivative_state_theta(cfg.phi(), cfg.theta());
  const SingleModeDensity rho = reduce_density(psi);
  const Eigen::MatrixXcd drho = reduced_derivative(psi, dpsi);

  const auto fisher = [&](double eps_p) {
    double total = 0.0;
    for (int n = 0; n < cutoff; ++n) {
      const double p = rho.matrix()(n, n).real();
      if (p <= eps_p) continue;
      const double dp = drho(n, n).real();
      total += dp * dp / p;
    }
    return total;
  };

  const double primary = fisher(kEpsCut);
  const double check = fisher(kEpsCut / 10.0);
  if (relative_gap(primary, check) > kSensitivityRel)
    throw IllConditioned(
        "classical_fisher_number: eps_p sensitivity check failed");
  return primary;
}

double pure_two_mode_qfi(const TwoModeState& psi, const TwoModeState& dpsi) {
  const Cd overlap =
      psi.amplitudes().conjugate().cwiseProduct(dpsi.amplitudes()).sum();
  const double dd = dpsi.amplitudes().squaredNorm();
  return 4.0 * (dd - std::norm(overlap));
}

ModeMoments mode_moments(const SingleModeDensity& rho) {
  const int d = rho.dim();
  const Eigen::MatrixXcd b = ladder(d);
  const Eigen::MatrixXcd number = b.adjoint() * b;
  const Eigen::MatrixXcd& r = rho.matrix();

  ModeMoments out;
  out.mean_field = (r * b).trace();
  out.mean_photons = (r * number).trace().real();
  out.photon_variance =
      (r * number * number).trace().real() - out.mean_photons * out.mean_photons;
  out.normal_moment = out.mean_photons - std::norm(out.mean_field);
  out.anomalous_moment = (r * b * b).trace() - out.mean_field * out.mean_field;
  out.purity = (r * r).trace().real();
  return out;
}

}  // namespace sqmzi::fock
