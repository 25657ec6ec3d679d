#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "gimag/error.hpp"

namespace gimag {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

/// Numerical tolerances shared by the state, channel and measure modules.
struct Tolerances {
  double psd = 1e-9;         // eigenvalues of V + i*Omega (and the CP matrix)
  double real = 1e-10;       // zero-tests in the realness / class patterns
  double symmetry = 1e-12;   // max |V - V^T|, relative to max(1, max|V|)
};

/// Block-diagonal symplectic form Omega = diag(w, ..., w), w = [[0,1],[-1,0]].
class SymplecticForm {
 public:
  explicit SymplecticForm(int modes);

  int modes() const { return modes_; }
  const Mat& matrix() const { return omega_; }

 private:
  int modes_;
  Mat omega_;
};

SymplecticForm symplectic_form(int modes);

/// An N-mode Gaussian state described by its mean X (ordering q1,p1,...,qN,pN
/// with q = a + a^dagger, p = -i(a - a^dagger)) and covariance matrix V.
///
/// Instances only come out of validate_state (directly or through the
/// operations below), so every GaussianState satisfies the uncertainty
/// relation V + i*Omega >= -eps_psd.
class GaussianState {
 public:
  int modes() const { return static_cast<int>(mean_.size() / 2); }
  const Vec& mean() const { return mean_; }
  const Mat& cov() const { return cov_; }

  /// Minimum eigenvalue of the Hermitian matrix V + i*Omega.
  double uncertainty_margin() const { return margin_; }
  /// True when the state was accepted only thanks to the eps_psd slack.
  bool near_boundary() const { return margin_ < 0.0; }

 private:
  GaussianState(Vec mean, Mat cov, double margin)
      : mean_(std::move(mean)), cov_(std::move(cov)), margin_(margin) {}

  friend GaussianState validate_state(const Vec&, const Mat&, const Tolerances&);

  Vec mean_;
  Mat cov_;
  double margin_;
};

/// Checks dimensions, symmetry, the uncertainty relation and positivity.
/// The covariance is symmetrized as (V + V^T)/2 before the spectral checks.
/// Throws gimag::Error naming the violated invariant.
GaussianState validate_state(const Vec& mean, const Mat& cov,
                             const Tolerances& tol = {});

/// Theorem-1 test: all p-means vanish and every (q_l, p_m) covariance vanishes.
bool is_real(const GaussianState& state, const Tolerances& tol = {});

/// Fock-basis complex conjugate: X'_l = (-1)^(l+1) X_l, V'_lm = (-1)^(l+m) V_lm.
GaussianState conjugate(const GaussianState& state);

/// The real Gaussian state with mean (X + X')/2 and covariance (V + V')/2.
GaussianState induced_real(const GaussianState& state);

GaussianState thermal(double nbar);
GaussianState coherent(std::complex<double> alpha);
GaussianState squeezed(std::complex<double> zeta);

/// Deterministic random state V = S diag(nu_l I2) S^T, S = exp(Omega H),
/// nu_l ~ U[1, 2 max_nbar + 1], H symmetric with N(0, 0.3) entries,
/// mean entries ~ U[-2, 2].
GaussianState random_state(int modes, double max_nbar, std::uint64_t seed);

/// <a_l^dagger a_l> = (V_qq + V_pp)/4 - 1/2 + (X_q^2 + X_p^2)/4 for mode l (0-based).
double mean_photon_number(const GaussianState& state, int mode);

/// Minimum eigenvalue of the Hermitian matrix A + iB (A symmetric, B antisymmetric).
double min_eigenvalue_hermitian(const Mat& re, const Mat& im);

/// Random symplectic matrix exp(Omega H) for a seeded symmetric H.
Mat random_symplectic(int modes, std::uint64_t seed, double sigma = 0.3);

}  // namespace gimag
