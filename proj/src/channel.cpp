#include "gimag/channel.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

namespace gimag {

const char* to_string(RealChannelClass c) {
  switch (c) {
    case RealChannelClass::NotReal: return "NotReal";
    case RealChannelClass::CompletelyReal: return "CompletelyReal";
    case RealChannelClass::CovariantReal: return "CovariantReal";
    case RealChannelClass::CovariantAndCompletelyReal: return "CovariantAndCompletelyReal";
  }
  return "Unknown";
}

namespace {

double cp_min_eigenvalue(const Mat& t, const Mat& n, const Mat& omega) {
  return min_eigenvalue_hermitian(n, omega - t * omega * t.transpose());
}

}  // namespace

GaussianChannel validate_channel(const Vec& d, const Mat& T, const Mat& N,
                                 const Tolerances& tol) {
  const auto dim = d.size();
  if (dim == 0 || dim % 2 != 0) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("displacement length must be 2N with N >= 1, got {}", dim));
  }
  if (T.rows() != dim || T.cols() != dim || N.rows() != dim || N.cols() != dim) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("T and N must be {0}x{0} (got {1}x{2} and {3}x{4})", dim,
                            T.rows(), T.cols(), N.rows(), N.cols()));
  }
  if (!d.allFinite() || !T.allFinite() || !N.allFinite()) {
    throw Error(Errc::invalid_argument, "channel contains non-finite entries");
  }
  const double scale = std::max(1.0, N.cwiseAbs().maxCoeff());
  const double asym = (N - N.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.symmetry * scale) {
    throw Error(Errc::asymmetric,
                fmt::format("noise matrix not symmetric: max |N - N^T| = {:.3e}", asym),
                asym);
  }
  Mat nsym = 0.5 * (N + N.transpose());
  const SymplecticForm omega(static_cast<int>(dim / 2));
  const double margin = cp_min_eigenvalue(T, nsym, omega.matrix());
  if (margin < -tol.psd) {
    throw Error(Errc::cp_violated,
                fmt::format("complete positivity violated: min eig(N + i Omega - i T Omega T^T) = {:.6g}",
                            margin),
                margin);
  }
  return GaussianChannel(d, T, std::move(nsym), margin);
}

GaussianState apply(const GaussianChannel& channel, const GaussianState& state,
                    const Tolerances& tol) {
  if (channel.modes() != state.modes()) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("channel acts on {} modes, state has {}", channel.modes(),
                            state.modes()));
  }
  Vec mean = channel.T() * state.mean() + channel.d();
  Mat cov = channel.T() * state.cov() * channel.T().transpose() + channel.N();
  Tolerances relaxed = tol;
  relaxed.psd = std::max(tol.psd, -std::min(state.uncertainty_margin(), 0.0) -
                                      std::min(channel.cp_margin(), 0.0) + 1e-12);
  return validate_state(mean, 0.5 * (cov + cov.transpose()), relaxed);
}

GaussianChannel compose(const GaussianChannel& second, const GaussianChannel& first,
                        const Tolerances& tol) {
  if (second.modes() != first.modes()) {
    throw Error(Errc::dimension_mismatch, "cannot compose channels on different mode counts");
  }
  const Mat& t2 = second.T();
  Mat n = t2 * first.N() * t2.transpose() + second.N();
  Tolerances relaxed = tol;
  relaxed.psd = std::max(tol.psd, -std::min(first.cp_margin(), 0.0) -
                                      std::min(second.cp_margin(), 0.0) + 1e-12);
  return validate_channel(t2 * first.d() + second.d(), t2 * first.T(),
                          0.5 * (n + n.transpose()), relaxed);
}

RealChannelClass RealnessReport::classification() const {
  if (!displacement_ok || !noise_ok) return RealChannelClass::NotReal;
  if (completely_ok && covariant_ok) return RealChannelClass::CovariantAndCompletelyReal;
  if (completely_ok) return RealChannelClass::CompletelyReal;
  if (covariant_ok) return RealChannelClass::CovariantReal;
  return RealChannelClass::NotReal;
}

RealnessReport inspect_realness(const GaussianChannel& channel, const Tolerances& tol) {
  RealnessReport report;
  const int n = channel.modes();
  const auto check = [&](double value, const char* name, int row, int col, bool& ok,
                         std::vector<PatternViolation>& out) {
    if (std::abs(value) > tol.real) {
      ok = false;
      out.push_back({col > 0 ? fmt::format("{}({},{})", name, row, col)
                             : fmt::format("{}({})", name, row),
                     value});
    }
  };
  // Indices below are 1-based: q_l sits at 2l-1, p_l at 2l.
  for (int l = 1; l <= n; ++l) {
    check(channel.d()(2 * l - 1), "d", 2 * l, 0, report.displacement_ok,
          report.displacement_violations);
  }
  for (int l = 1; l <= n; ++l) {
    for (int m = 1; m <= n; ++m) {
      check(channel.N()(2 * l - 2, 2 * m - 1), "N", 2 * l - 1, 2 * m, report.noise_ok,
            report.noise_violations);
    }
  }
  const Mat& t = channel.T();
  for (int l = 1; l <= n; ++l) {
    for (int m = 1; m <= n; ++m) {
      check(t(2 * l - 1, 2 * m - 2), "T", 2 * l, 2 * m - 1, report.completely_ok,
            report.completely_violations);
      check(t(2 * l - 1, 2 * m - 1), "T", 2 * l, 2 * m, report.completely_ok,
            report.completely_violations);
      check(t(2 * l - 2, 2 * m - 1), "T", 2 * l - 1, 2 * m, report.covariant_ok,
            report.covariant_violations);
      check(t(2 * m - 1, 2 * l - 2), "T", 2 * m, 2 * l - 1, report.covariant_ok,
            report.covariant_violations);
    }
  }
  return report;
}

RealChannelClass classify_real(const GaussianChannel& channel, const Tolerances& tol) {
  return inspect_realness(channel, tol).classification();
}

GaussianChannel random_real_channel(int modes, RealChannelClass kind, std::uint64_t seed) {
  if (kind == RealChannelClass::NotReal) {
    throw Error(Errc::invalid_argument, "random_real_channel cannot draw a NotReal channel");
  }
  if (modes < 1) throw Error(Errc::invalid_argument, "random_real_channel needs modes >= 1");
  const int dim = 2 * modes;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);

  Mat t = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const bool p_row = (i % 2 == 1);
      const bool p_col = (j % 2 == 1);
      bool allowed = true;
      switch (kind) {
        case RealChannelClass::CompletelyReal: allowed = !p_row; break;
        case RealChannelClass::CovariantReal: allowed = (p_row == p_col); break;
        case RealChannelClass::CovariantAndCompletelyReal: allowed = !p_row && !p_col; break;
        case RealChannelClass::NotReal: break;
      }
      const double x = entry(rng);
      if (allowed) t(i, j) = x;
    }
  }

  // Noise candidate: PSD Gram matrix with the (q, p) cross block removed.
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = 0.5 * entry(rng);
  }
  Mat n = g * g.transpose();
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if ((i % 2) != (j % 2)) n(i, j) = 0.0;
    }
  }

  Vec d = Vec::Zero(dim);
  for (int l = 0; l < modes; ++l) d(2 * l) = 2.0 * entry(rng);

  // Shifting N by lambda*I shifts the CP spectrum by exactly lambda.
  const SymplecticForm omega(modes);
  const double mu = cp_min_eigenvalue(t, n, omega.matrix());
  const double lambda = std::max(0.0, -mu) + 1e-6;
  n.diagonal().array() += lambda;
  return validate_channel(d, t, n);
}

}  // namespace gimag
