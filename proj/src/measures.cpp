#include "gimag/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <fmt/format.h>

#include "gimag/fock_oracle.hpp"

namespace gimag {

const char* to_string(MeasureMethod m) {
  return m == MeasureMethod::ClosedForm ? "closed_form" : "oracle";
}

namespace {

// Pure states put Lambda exactly at zero; rounding can push it slightly below.
double clamp_lambda(double lambda) { return lambda < 0.0 ? 0.0 : lambda; }

double det2(const Mat& v) { return v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0); }

// det V - 1, snapped to 0 when it is indistinguishable from rounding noise. The
// mixedness terms enter the fidelity through a square root, so an unsnapped
// 1e-16 would show up as a 1e-8 error for pure states.
double purity_gap(const Mat& v) {
  const double gap = det2(v) - 1.0;
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(v(0, 0) * v(1, 1)) + v(0, 1) * v(0, 1) + 1.0);
  return std::abs(gap) <= noise ? 0.0 : gap;
}

void require_one_mode(const GaussianState& s, const char* what) {
  if (s.modes() != 1) {
    throw Error(Errc::unsupported,
                fmt::format("{} is only available in closed form for one mode (got {})", what,
                            s.modes()));
  }
}

// M and F(rho, rho*) from the one-mode closed form.
double closed_fidelity_conj(const GaussianState& s) {
  const Mat& v = s.cov();
  const double x2 = s.mean()(1);
  const double gap = purity_gap(v);
  const double lambda = clamp_lambda(0.25 * gap * gap);
  const double num = std::exp(-x2 * x2 / (2.0 * v(1, 1)));
  return num / std::sqrt(std::sqrt(v(0, 0) * v(1, 1) + lambda) - std::sqrt(lambda));
}

double closed_fidelity_bar(const GaussianState& s) {
  const Mat& v = s.cov();
  const double x2 = s.mean()(1);
  const double v11 = v(0, 0), v22 = v(1, 1), v12 = v(0, 1);
  const double lambda = clamp_lambda(0.25 * purity_gap(v) * (v11 * v22 - 1.0));
  const double num = std::exp(-v11 * x2 * x2 / (2.0 * (4.0 * v11 * v22 - v12 * v12)));
  return num /
         std::sqrt(std::sqrt(v11 * v22 - 0.25 * v12 * v12 + lambda) - std::sqrt(lambda));
}

struct OracleFidelities {
  double conj;
  double bar;
};

OracleFidelities oracle_fidelities(const GaussianState& s, const MeasureOptions& opts) {
  if (s.modes() > 2) {
    throw Error(Errc::unsupported,
                fmt::format("oracle fallback supports at most 2 modes (got {})", s.modes()));
  }
  OracleOptions o;
  o.cutoff = opts.cutoff > 0 ? opts.cutoff : default_cutoff(s);
  const FockMatrix rho = density_matrix(s, o);
  const FockMatrix rho_conj = density_matrix(conjugate(s), o);
  const FockMatrix rho_bar = density_matrix(induced_real(s), o);
  return {uhlmann_fidelity(rho, rho_conj), uhlmann_fidelity(rho, rho_bar)};
}

bool use_oracle(const GaussianState& s, const MeasureOptions& opts, const char* what) {
  if (opts.force_oracle && s.modes() <= 2) return true;
  if (s.modes() == 1) return false;
  if (!opts.oracle_fallback) require_one_mode(s, what);
  return true;
}

double as_measure(double fidelity) { return std::clamp(1.0 - fidelity, 0.0, 1.0); }

}  // namespace

double fidelity_one_mode(const GaussianState& a, const GaussianState& b) {
  require_one_mode(a, "fidelity");
  require_one_mode(b, "fidelity");
  const Mat& v = a.cov();
  const Mat& w = b.cov();
  const Mat sum = v + w;
  Eigen::LLT<Mat> llt(sum);
  if (llt.info() != Eigen::Success) {
    throw Error(Errc::invalid_argument, "V + W is not positive definite");
  }
  const Vec diff = a.mean() - b.mean();
  const double quad = diff.dot(llt.solve(diff));
  // det((V + i Omega)/2) = (det V - 1)/4 for one mode.
  const double lambda = clamp_lambda(0.25 * purity_gap(v) * purity_gap(w));
  const double det_half = det2(0.5 * sum);
  return std::exp(-0.25 * quad) / std::sqrt(std::sqrt(det_half + lambda) - std::sqrt(lambda));
}

double measure_M(const GaussianState& state, const MeasureOptions& opts) {
  if (use_oracle(state, opts, "M")) return as_measure(oracle_fidelities(state, opts).conj);
  return as_measure(closed_fidelity_conj(state));
}

double measure_Mprime(const GaussianState& state, const MeasureOptions& opts) {
  if (use_oracle(state, opts, "M'")) return as_measure(oracle_fidelities(state, opts).bar);
  return as_measure(closed_fidelity_bar(state));
}

MeasureReport measure(const GaussianState& state, const MeasureOptions& opts) {
  MeasureReport report;
  if (use_oracle(state, opts, "measure")) {
    const OracleFidelities f = oracle_fidelities(state, opts);
    report.fidelity_conj = f.conj;
    report.fidelity_bar = f.bar;
    report.method = MeasureMethod::Oracle;
  } else {
    report.fidelity_conj = closed_fidelity_conj(state);
    report.fidelity_bar = closed_fidelity_bar(state);
    report.method = MeasureMethod::ClosedForm;
  }
  report.M = as_measure(report.fidelity_conj);
  report.Mprime = as_measure(report.fidelity_bar);
  return report;
}

std::pair<double, double> coherent_closed(std::complex<double> alpha) {
  const double y2 = alpha.imag() * alpha.imag();
  return {1.0 - std::exp(-2.0 * y2), 1.0 - std::exp(-0.5 * y2)};
}

std::pair<double, double> squeezed_closed(std::complex<double> zeta) {
  const double s = std::sin(std::arg(zeta)) * std::sinh(2.0 * std::abs(zeta));
  const double s2 = s * s;
  return {1.0 - std::pow(1.0 + s2, -0.25), 1.0 - std::pow(1.0 + 0.75 * s2, -0.25)};
}

}  // namespace gimag
