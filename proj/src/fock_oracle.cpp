#include "gimag/fock_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <fmt/format.h>

#include "gimag/kernels/laguerre.hpp"
#include "gimag/quadrature.hpp"

namespace gimag {

namespace {

using cd = std::complex<double>;

// |chi| below exp(-kChiExponent) is dropped from the quadrature.
constexpr double kChiExponent = 46.0;

constexpr int kMaxCutoffOneMode = 64;
constexpr int kMaxCutoffTwoMode = 24;

// L_k^(alpha)(x) by the forward three-term recurrence.
double laguerre(int k, int alpha, double x) {
  double lprev = 1.0;
  if (k == 0) return lprev;
  double lcur = 1.0 + alpha - x;
  for (int i = 1; i < k; ++i) {
    const double lnext = ((2.0 * i + 1.0 + alpha - x) * lcur - (i + alpha) * lprev) / (i + 1.0);
    lprev = lcur;
    lcur = lnext;
  }
  return lcur;
}

std::vector<double> log_factorials(int count) {
  std::vector<double> lf(count);
  for (int i = 0; i < count; ++i) lf[i] = std::lgamma(i + 1.0);
  return lf;
}

void require_modes(const GaussianState& state) {
  if (state.modes() > 2) {
    throw Error(Errc::unsupported,
                fmt::format("the Fock oracle supports 1 or 2 modes, got {}", state.modes()));
  }
}

struct Integrand {
  Mat quad;   // Omega V Omega^T
  Vec phase;  // Omega X
};

Integrand make_integrand(const GaussianState& state) {
  const Mat omega = SymplecticForm(state.modes()).matrix();
  return {omega * state.cov() * omega.transpose(), omega * state.mean()};
}

CMat one_mode_pass(const Integrand& f, int cutoff, double half_width, int nodes) {
  const GaussLegendre rule = gauss_legendre(nodes, half_width);
  std::vector<double> mu_re, mu_im, c_re, c_im;
  const std::size_t reserve = static_cast<std::size_t>(nodes) * nodes;
  mu_re.reserve(reserve);
  mu_im.reserve(reserve);
  c_re.reserve(reserve);
  c_im.reserve(reserve);

  const double m11 = f.quad(0, 0), m12 = f.quad(0, 1), m22 = f.quad(1, 1);
  for (int i = 0; i < nodes; ++i) {
    const double x1 = rule.nodes[i];
    for (int j = 0; j < nodes; ++j) {
      const double x2 = rule.nodes[j];
      const double expo = 0.5 * (m11 * x1 * x1 + 2.0 * m12 * x1 * x2 + m22 * x2 * x2);
      if (expo > kChiExponent) continue;
      const double r2 = x1 * x1 + x2 * x2;
      const double mag = rule.weights[i] * rule.weights[j] * std::exp(-expo - 0.5 * r2) /
                         std::numbers::pi;
      const double ph = -(f.phase(0) * x1 + f.phase(1) * x2);
      // D(-lambda) with lambda = xi1 + i xi2.
      mu_re.push_back(-x1);
      mu_im.push_back(-x2);
      c_re.push_back(mag * std::cos(ph));
      c_im.push_back(mag * std::sin(ph));
    }
  }

  const std::size_t tri = kernels::tri_size(cutoff);
  std::vector<double> acc_re(tri, 0.0), acc_im(tri, 0.0);
  kernels::accumulate_laguerre({mu_re, mu_im, c_re, c_im}, cutoff, acc_re, acc_im);

  const std::vector<double> lf = log_factorials(cutoff);
  CMat rho(cutoff, cutoff);
  for (int m = 0; m < cutoff; ++m) {
    for (int k = 0; k + m < cutoff; ++k) {
      const std::size_t t = kernels::tri_index(cutoff, m, k);
      const double scale = std::exp(0.5 * (lf[k] - lf[k + m]));
      const cd value(acc_re[t] * scale, acc_im[t] * scale);
      rho(k + m, k) = value;
      rho(k, k + m) = std::conj(value);
    }
  }
  for (int k = 0; k < cutoff; ++k) rho(k, k) = rho(k, k).real();
  return rho;
}

// <j|D(lambda)|k> * exp(|lambda|^2 / 2), i.e. without the Gaussian damping.
CMat displacement_polynomial(cd lambda, int cutoff, const std::vector<double>& lf) {
  const double x = std::norm(lambda);
  CMat out(cutoff, cutoff);
  cd lam_pow(1.0, 0.0);       // lambda^m
  cd neg_conj_pow(1.0, 0.0);  // (-conj(lambda))^m
  for (int m = 0; m < cutoff; ++m) {
    double lprev = 1.0, lcur = 1.0 + m - x;
    for (int k = 0; k + m < cutoff; ++k) {
      double lk;
      if (k == 0) {
        lk = lprev;
      } else if (k == 1) {
        lk = lcur;
      } else {
        const double lnext = ((2.0 * (k - 1) + 1.0 + m - x) * lcur - (k - 1 + m) * lprev) / k;
        lprev = lcur;
        lcur = lnext;
        lk = lcur;
      }
      const double base = std::exp(0.5 * (lf[k] - lf[k + m])) * lk;
      out(k + m, k) = base * lam_pow;
      if (m > 0) out(k, k + m) = base * neg_conj_pow;
    }
    lam_pow *= lambda;
    neg_conj_pow *= -std::conj(lambda);
  }
  return out;
}

// Two modes: each mode gets its own 2D Gauss-Hermite grid in coordinates that
// whiten that mode's diagonal block of (Omega V Omega^T + I); the cross-mode
// block stays in the weights. The double sum over grid points then factors
// into two GEMMs against a per-mode displacement table.
CMat two_mode_pass(const Integrand& f, int cutoff, int nodes) {
  const QuadratureRule rule = gauss_hermite(nodes);
  const int pts = nodes * nodes;
  const int d2 = cutoff * cutoff;
  const std::vector<double> lf = log_factorials(cutoff);
  const Mat full = f.quad + Mat::Identity(4, 4);

  // xi_l = A_l eta_l with A_l^T B_l A_l = I for the diagonal block B_l.
  std::array<Eigen::Matrix2d, 2> a;
  std::array<double, 2> jac;
  for (int l = 0; l < 2; ++l) {
    const Eigen::Matrix2d b = full.block<2, 2>(2 * l, 2 * l);
    const Eigen::Matrix2d c = Eigen::LLT<Eigen::Matrix2d>(b).matrixL();
    a[l] = c.transpose().inverse();
    jac[l] = std::abs(a[l].determinant());
  }

  std::array<std::vector<double>, 2> x1, x2, w, ph;
  std::array<CMat, 2> table;
  for (int l = 0; l < 2; ++l) {
    x1[l].resize(pts);
    x2[l].resize(pts);
    w[l].resize(pts);
    ph[l].resize(pts);
    table[l].resize(pts, d2);
    for (int i = 0; i < nodes; ++i) {
      for (int j = 0; j < nodes; ++j) {
        const int p = i * nodes + j;
        const Eigen::Vector2d xi = a[l] * Eigen::Vector2d(rule.nodes[i], rule.nodes[j]);
        x1[l][p] = xi(0);
        x2[l][p] = xi(1);
        w[l][p] = rule.weights[i] * rule.weights[j] * jac[l];
        ph[l][p] = f.phase(2 * l) * xi(0) + f.phase(2 * l + 1) * xi(1);
        const CMat dm = displacement_polynomial(cd(-xi(0), -xi(1)), cutoff, lf);
        for (int r = 0; r < cutoff; ++r) {
          for (int c = 0; c < cutoff; ++c) table[l](p, r * cutoff + c) = dm(r, c);
        }
      }
    }
  }

  const Eigen::Matrix2d cross = f.quad.block<2, 2>(0, 2);
  const double norm = 1.0 / (std::numbers::pi * std::numbers::pi);
  CMat result = CMat::Zero(d2, d2);
  constexpr int kBlock = 256;
  CMat weights_block;
  for (int p0 = 0; p0 < pts; p0 += kBlock) {
    const int rows = std::min(kBlock, pts - p0);
    weights_block.resize(rows, pts);
    for (int r = 0; r < rows; ++r) {
      const int p = p0 + r;
      // u = cross^T xi_1, so xi_1^T cross xi_2 = u . xi_2
      const double u1 = cross(0, 0) * x1[0][p] + cross(1, 0) * x2[0][p];
      const double u2 = cross(0, 1) * x1[0][p] + cross(1, 1) * x2[0][p];
      for (int q = 0; q < pts; ++q) {
        const double expo = u1 * x1[1][q] + u2 * x2[1][q];
        const double mag = norm * w[0][p] * w[1][q] * std::exp(-expo);
        const double phase = -(ph[0][p] + ph[1][q]);
        weights_block(r, q) = cd(mag * std::cos(phase), mag * std::sin(phase));
      }
    }
    const CMat partial = weights_block * table[1];
    result.noalias() += table[0].middleRows(p0, rows).transpose() * partial;
  }

  CMat rho(d2, d2);
  for (int j1 = 0; j1 < cutoff; ++j1) {
    for (int k1 = 0; k1 < cutoff; ++k1) {
      for (int j2 = 0; j2 < cutoff; ++j2) {
        for (int k2 = 0; k2 < cutoff; ++k2) {
          rho(j1 * cutoff + j2, k1 * cutoff + k2) = result(j1 * cutoff + k1, j2 * cutoff + k2);
        }
      }
    }
  }
  return 0.5 * (rho + rho.adjoint());
}

void clamp_psd(CMat& rho) {
  Eigen::SelfAdjointEigenSolver<CMat> es(rho);
  Vec ev = es.eigenvalues();
  const double lowest = ev.minCoeff();
  if (lowest < -1e-8) {
    throw Error(Errc::non_convergence,
                fmt::format("Fock matrix has eigenvalue {:.3e} below -1e-8", lowest), lowest);
  }
  if (lowest >= 0.0) return;
  ev = ev.cwiseMax(0.0);
  rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

std::complex<double> characteristic_function(const GaussianState& state, const Vec& xi) {
  if (xi.size() != state.mean().size()) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("xi has length {}, state needs {}", xi.size(), state.mean().size()));
  }
  const Integrand f = make_integrand(state);
  const double expo = -0.5 * xi.dot(f.quad * xi);
  const double ph = -f.phase.dot(xi);
  return std::exp(expo) * cd(std::cos(ph), std::sin(ph));
}

std::complex<double> displacement_element(int j, int k, std::complex<double> lambda) {
  if (j < 0 || k < 0) {
    throw Error(Errc::invalid_argument,
                fmt::format("Fock indices must be non-negative, got ({}, {})", j, k));
  }
  const double x = std::norm(lambda);
  const double r = std::sqrt(x);
  const int lo = std::min(j, k);
  const int m = std::abs(j - k);
  const double mag = std::exp(0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + m + 1.0)) - 0.5 * x) *
                     std::pow(r, m) * laguerre(lo, m, x);
  // j >= k: lambda^m; j < k: (-conj(lambda))^m.
  const double phi = std::arg(lambda);
  const double angle = (j >= k) ? m * phi : m * (std::numbers::pi - phi);
  return mag * cd(std::cos(angle), std::sin(angle));
}

CMat displacement_matrix(std::complex<double> lambda, int cutoff) {
  if (cutoff < 1) throw Error(Errc::invalid_argument, "cutoff must be >= 1");
  return std::exp(-0.5 * std::norm(lambda)) *
         displacement_polynomial(lambda, cutoff, log_factorials(cutoff));
}

int default_cutoff(const GaussianState& state) {
  require_modes(state);
  double nbar_max = 0.0;
  for (int l = 0; l < state.modes(); ++l) nbar_max = std::max(nbar_max, mean_photon_number(state, l));
  const int cap = state.modes() == 1 ? kMaxCutoffOneMode : kMaxCutoffTwoMode;
  return std::clamp(static_cast<int>(std::ceil(24.0 * (nbar_max + 1.0))), 2, cap);
}

double quadrature_half_width(const GaussianState& state) {
  Eigen::SelfAdjointEigenSolver<Mat> es(state.cov(), Eigen::EigenvaluesOnly);
  return std::sqrt(2.0 * kChiExponent / es.eigenvalues().minCoeff());
}

FockMatrix density_matrix(const GaussianState& state, const OracleOptions& opts) {
  require_modes(state);
  const bool two = state.modes() == 2;
  FockMatrix fm;
  fm.modes = state.modes();
  fm.cutoff = opts.cutoff > 0 ? opts.cutoff : default_cutoff(state);
  fm.half_width = two ? 0.0 : quadrature_half_width(state);
  const int start =
      opts.initial_nodes > 0 ? opts.initial_nodes : (two ? std::max(16, fm.cutoff + 6) : 120);
  const int limit = opts.max_nodes > 0 ? opts.max_nodes : (two ? 80 : 960);

  const Integrand f = make_integrand(state);
  const auto pass = [&](int nodes) {
    return two ? two_mode_pass(f, fm.cutoff, nodes)
               : one_mode_pass(f, fm.cutoff, fm.half_width, nodes);
  };

  int nodes = start;
  CMat current = pass(nodes);
  for (;;) {
    const int next = two ? nodes + 8 : 2 * nodes;
    if (next > limit) {
      throw Error(Errc::non_convergence,
                  fmt::format("quadrature did not converge to {:.1e} within {} nodes per axis "
                              "(last change {:.3e})",
                              opts.convergence, limit, fm.residual),
                  fm.residual);
    }
    CMat refined = pass(next);
    fm.residual = (refined - current).cwiseAbs().maxCoeff();
    current = std::move(refined);
    nodes = next;
    if (fm.residual <= opts.convergence) break;
  }
  fm.nodes_per_axis = nodes;

  fm.trace_deficit = 1.0 - current.trace().real();
  if (fm.trace_deficit > opts.trace_tolerance) {
    throw Error(Errc::insufficient_cutoff,
                fmt::format("trace deficit {:.3e} at cutoff {} exceeds {:.1e}", fm.trace_deficit,
                            fm.cutoff, opts.trace_tolerance),
                fm.trace_deficit);
  }
  if (fm.trace_deficit < -std::max(opts.convergence, 1e-9) * current.rows()) {
    throw Error(Errc::non_convergence,
                fmt::format("Fock matrix trace exceeds one by {:.3e}", -fm.trace_deficit),
                fm.trace_deficit);
  }
  clamp_psd(current);
  fm.data = std::move(current);
  return fm;
}

Moments moments_from_fock(const FockMatrix& fm, double trace_tolerance) {
  if (fm.modes < 1 || fm.modes > 2) {
    throw Error(Errc::unsupported, "moments_from_fock supports 1 or 2 modes");
  }
  const int dcut = fm.cutoff;
  if (fm.trace_deficit > trace_tolerance) {
    throw Error(Errc::insufficient_cutoff,
                fmt::format("trace deficit {:.3e} exceeds {:.1e}", fm.trace_deficit,
                            trace_tolerance),
                fm.trace_deficit);
  }
  CMat lower = CMat::Zero(dcut, dcut);
  for (int n = 1; n < dcut; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  const CMat id = CMat::Identity(dcut, dcut);

  std::vector<CMat> a;
  if (fm.modes == 1) {
    a.push_back(lower);
  } else {
    a.push_back(Eigen::kroneckerProduct(lower, id));
    a.push_back(Eigen::kroneckerProduct(id, lower));
  }

  // Population on the top Fock level of any mode signals truncation error.
  double top = 0.0;
  for (Eigen::Index r = 0; r < fm.data.rows(); ++r) {
    const bool edge = fm.modes == 1 ? (r == dcut - 1)
                                    : (r / dcut == dcut - 1 || r % dcut == dcut - 1);
    if (edge) top += fm.data(r, r).real();
  }
  if (top > trace_tolerance) {
    throw Error(Errc::insufficient_cutoff,
                fmt::format("top Fock level holds population {:.3e} at cutoff {}", top, dcut),
                top);
  }

  const auto expect = [&](const CMat& op) { return fm.data.cwiseProduct(op.transpose()).sum(); };

  const int n = fm.modes;
  Moments out{Vec(2 * n), Mat(2 * n, 2 * n)};
  std::vector<cd> first(n);
  for (int l = 0; l < n; ++l) {
    first[l] = expect(a[l]);
    out.mean(2 * l) = 2.0 * first[l].real();
    out.mean(2 * l + 1) = 2.0 * first[l].imag();
  }
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < n; ++m) {
      const cd aa = expect(a[l] * a[m]);
      const cd ada = expect(a[l].adjoint() * a[m]);
      const double delta = (l == m) ? 1.0 : 0.0;
      const double xq_l = out.mean(2 * l), xp_l = out.mean(2 * l + 1);
      const double xq_m = out.mean(2 * m), xp_m = out.mean(2 * m + 1);
      out.cov(2 * l, 2 * m) = 2.0 * aa.real() + 2.0 * ada.real() + delta - xq_l * xq_m;
      out.cov(2 * l + 1, 2 * m + 1) = -2.0 * aa.real() + 2.0 * ada.real() + delta - xp_l * xp_m;
      const double qp = 2.0 * aa.imag() + 2.0 * ada.imag() - xq_l * xp_m;
      out.cov(2 * l, 2 * m + 1) = qp;
      out.cov(2 * m + 1, 2 * l) = qp;
    }
  }
  return out;
}

double uhlmann_fidelity(const FockMatrix& a, const FockMatrix& b) {
  if (a.data.rows() != b.data.rows() || a.modes != b.modes || a.cutoff != b.cutoff) {
    throw Error(Errc::dimension_mismatch, "Fock matrices differ in modes or cutoff");
  }
  // F is symmetric, so take sqrt of whichever matrix has the smaller numerical
  // support and drop its noise-floor eigenvalues; each would otherwise add
  // sqrt(noise) to the sum.
  Eigen::SelfAdjointEigenSolver<CMat> ea(a.data);
  Eigen::SelfAdjointEigenSolver<CMat> eb(b.data);
  const auto support_of = [](const Vec& p) {
    const double keep = 1e-14 * std::max(1.0, p.maxCoeff());
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (p(i) > keep) idx.push_back(i);
    }
    return idx;
  };
  std::vector<Eigen::Index> sa = support_of(ea.eigenvalues());
  std::vector<Eigen::Index> sb = support_of(eb.eigenvalues());
  const bool swap = sb.size() < sa.size();
  const Eigen::SelfAdjointEigenSolver<CMat>& es = swap ? eb : ea;
  const std::vector<Eigen::Index>& support = swap ? sb : sa;
  const CMat& other = swap ? a.data : b.data;
  if (support.empty()) return 0.0;

  const Vec& p = es.eigenvalues();
  CMat half(other.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    half.col(static_cast<Eigen::Index>(c)) =
        es.eigenvectors().col(support[c]) * std::sqrt(p(support[c]));
  }
  const CMat inner = half.adjoint() * other * half;
  Eigen::SelfAdjointEigenSolver<CMat> ei(0.5 * (inner + inner.adjoint()),
                                         Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (Eigen::Index i = 0; i < ei.eigenvalues().size(); ++i) {
    f += std::sqrt(std::max(0.0, ei.eigenvalues()(i)));
  }
  return f;
}

double max_imaginary(const FockMatrix& fm) { return fm.data.imag().cwiseAbs().maxCoeff(); }

bool verify_realness(const FockMatrix& fm, double tol) { return max_imaginary(fm) <= tol; }

double verify_conjugation(const GaussianState& state, const OracleOptions& opts) {
  OracleOptions shared = opts;
  if (shared.cutoff <= 0) shared.cutoff = default_cutoff(state);
  const FockMatrix direct = density_matrix(state, shared);
  const FockMatrix conj = density_matrix(conjugate(state), shared);
  return (conj.data - direct.data.conjugate()).cwiseAbs().maxCoeff();
}

}  // namespace gimag
