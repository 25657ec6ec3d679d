#include "gimag/gaussian_state.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

namespace gimag {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::asymmetric: return "matrix not symmetric";
    case Errc::uncertainty_violated: return "uncertainty relation violated";
    case Errc::not_positive_definite: return "covariance not positive definite";
    case Errc::cp_violated: return "complete positivity violated";
    case Errc::unsupported: return "unsupported";
    case Errc::insufficient_cutoff: return "insufficient Fock cutoff";
    case Errc::non_convergence: return "numerical non-convergence";
  }
  return "unknown";
}

SymplecticForm::SymplecticForm(int modes) : modes_(modes) {
  if (modes < 1) {
    throw Error(Errc::invalid_argument,
                fmt::format("symplectic form needs modes >= 1, got {}", modes));
  }
  omega_ = Mat::Zero(2 * modes, 2 * modes);
  for (int l = 0; l < modes; ++l) {
    omega_(2 * l, 2 * l + 1) = 1.0;
    omega_(2 * l + 1, 2 * l) = -1.0;
  }
}

SymplecticForm symplectic_form(int modes) { return SymplecticForm(modes); }

double min_eigenvalue_hermitian(const Mat& re, const Mat& im) {
  CMat h(re.rows(), re.cols());
  h.real() = re;
  h.imag() = im;
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

GaussianState validate_state(const Vec& mean, const Mat& cov, const Tolerances& tol) {
  const auto dim = mean.size();
  if (dim == 0 || dim % 2 != 0) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("mean length must be 2N with N >= 1, got {}", dim));
  }
  if (cov.rows() != dim || cov.cols() != dim) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("covariance must be {0}x{0}, got {1}x{2}", dim,
                            cov.rows(), cov.cols()));
  }
  if (!mean.allFinite() || !cov.allFinite()) {
    throw Error(Errc::invalid_argument, "state contains non-finite entries");
  }
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.symmetry * scale) {
    throw Error(Errc::asymmetric,
                fmt::format("covariance not symmetric: max |V - V^T| = {:.3e}", asym),
                asym);
  }
  Mat v = 0.5 * (cov + cov.transpose());

  const int modes = static_cast<int>(dim / 2);
  const SymplecticForm omega(modes);
  const double margin = min_eigenvalue_hermitian(v, omega.matrix());
  if (margin < -tol.psd) {
    throw Error(Errc::uncertainty_violated,
                fmt::format("uncertainty relation violated: min eig(V + i Omega) = {:.6g}",
                            margin),
                margin);
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(v, Eigen::EigenvaluesOnly);
  const double vmin = es.eigenvalues().minCoeff();
  if (!(vmin > 0.0)) {
    throw Error(Errc::not_positive_definite,
                fmt::format("covariance not positive definite: min eig(V) = {:.6g}", vmin),
                vmin);
  }
  return GaussianState(mean, std::move(v), margin);
}

bool is_real(const GaussianState& state, const Tolerances& tol) {
  const int n = state.modes();
  for (int l = 0; l < n; ++l) {
    if (std::abs(state.mean()(2 * l + 1)) > tol.real) return false;
    for (int m = 0; m < n; ++m) {
      if (std::abs(state.cov()(2 * l, 2 * m + 1)) > tol.real) return false;
    }
  }
  return true;
}

namespace {

// (-1)^(l+1) with 1-based l is +1 on q entries and -1 on p entries.
Vec parity_signs(Eigen::Index dim) {
  Vec s(dim);
  for (Eigen::Index i = 0; i < dim; ++i) s(i) = (i % 2 == 0) ? 1.0 : -1.0;
  return s;
}

// Conjugation and averaging never lower the uncertainty margin, so a state
// accepted under a relaxed eps_psd must stay accepted.
Tolerances inherited(const GaussianState& state) {
  Tolerances tol;
  tol.psd = std::max(tol.psd, -state.uncertainty_margin() + 1e-12);
  return tol;
}

}  // namespace

GaussianState conjugate(const GaussianState& state) {
  const Vec s = parity_signs(state.mean().size());
  Vec mean = state.mean().cwiseProduct(s);
  Mat cov = s.asDiagonal() * state.cov() * s.asDiagonal();
  return validate_state(mean, cov, inherited(state));
}

GaussianState induced_real(const GaussianState& state) {
  const Vec s = parity_signs(state.mean().size());
  const Vec& x = state.mean();
  const Mat& v = state.cov();
  Vec mean = 0.5 * (x + x.cwiseProduct(s));
  Mat cov = 0.5 * (v + s.asDiagonal() * v * s.asDiagonal());
  return validate_state(mean, cov, inherited(state));
}

GaussianState thermal(double nbar) {
  if (!(nbar >= 0.0)) {
    throw Error(Errc::invalid_argument,
                fmt::format("thermal state needs nbar >= 0, got {}", nbar));
  }
  return validate_state(Vec::Zero(2), (2.0 * nbar + 1.0) * Mat::Identity(2, 2));
}

GaussianState coherent(std::complex<double> alpha) {
  Vec mean(2);
  mean << 2.0 * alpha.real(), 2.0 * alpha.imag();
  return validate_state(mean, Mat::Identity(2, 2));
}

GaussianState squeezed(std::complex<double> zeta) {
  const double r2 = 2.0 * std::abs(zeta);
  const double theta = std::arg(zeta);
  const double ch = std::cosh(r2);
  const double sh = std::sinh(r2);
  Mat v(2, 2);
  v << ch + std::cos(theta) * sh, std::sin(theta) * sh,
       std::sin(theta) * sh, ch - std::cos(theta) * sh;
  return validate_state(Vec::Zero(2), v);
}

namespace {

Mat random_symplectic_from(int modes, std::mt19937_64& rng, double sigma) {
  const int dim = 2 * modes;
  std::normal_distribution<double> gauss(0.0, sigma);
  Mat h(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      h(i, j) = gauss(rng);
      h(j, i) = h(i, j);
    }
  }
  const Mat generator = SymplecticForm(modes).matrix() * h;
  return generator.exp();
}

}  // namespace

Mat random_symplectic(int modes, std::uint64_t seed, double sigma) {
  if (modes < 1) throw Error(Errc::invalid_argument, "random_symplectic needs modes >= 1");
  std::mt19937_64 rng(seed);
  return random_symplectic_from(modes, rng, sigma);
}

GaussianState random_state(int modes, double max_nbar, std::uint64_t seed) {
  if (modes < 1) throw Error(Errc::invalid_argument, "random_state needs modes >= 1");
  if (!(max_nbar > 0.0)) {
    throw Error(Errc::invalid_argument, "random_state needs max_nbar > 0");
  }
  std::mt19937_64 rng(seed);
  const Mat s = random_symplectic_from(modes, rng, 0.3);
  std::uniform_real_distribution<double> nu_dist(1.0, 2.0 * max_nbar + 1.0);
  std::uniform_real_distribution<double> mean_dist(-2.0, 2.0);
  Vec nu(2 * modes);
  for (int l = 0; l < modes; ++l) nu(2 * l) = nu(2 * l + 1) = nu_dist(rng);
  Vec mean(2 * modes);
  for (int i = 0; i < 2 * modes; ++i) mean(i) = mean_dist(rng);
  Mat cov = s * nu.asDiagonal() * s.transpose();
  return validate_state(mean, 0.5 * (cov + cov.transpose()));
}

double mean_photon_number(const GaussianState& state, int mode) {
  if (mode < 0 || mode >= state.modes()) {
    throw Error(Errc::invalid_argument,
                fmt::format("mode {} out of range for a {}-mode state", mode, state.modes()));
  }
  const int q = 2 * mode, p = q + 1;
  const Mat& v = state.cov();
  const Vec& x = state.mean();
  return 0.25 * (v(q, q) + v(p, p)) - 0.5 + 0.25 * (x(q) * x(q) + x(p) * x(p));
}

}  // namespace gimag
