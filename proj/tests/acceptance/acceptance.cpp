// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails or exceeds its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "cli.hpp"
#include "gimag/channel.hpp"
#include "gimag/fock_oracle.hpp"
#include "gimag/gaussian_state.hpp"
#include "gimag/measures.hpp"
#include "gimag/verify.hpp"

using namespace gimag;
using cd = std::complex<double>;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> body;
};

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double state_distance(const GaussianState& a, const GaussianState& b) {
  return std::max(max_abs(Vec(a.mean() - b.mean())), max_abs(Mat(a.cov() - b.cov())));
}

// Thermal states through the CLI measure command.
Outcome thermal_zero() {
  double worst = 0.0;
  bool ok = true;
  for (const char* nbar : {"0", "0.5", "1", "3"}) {
    std::ostringstream out, err;
    const char* argv[] = {"gimag", "measure", "--thermal", nbar};
    const int code = cli::run(4, argv, out, err);
    if (code != 0) return {false, fmt::format("exit {} for nbar={}: {}", code, nbar, err.str())};
    const auto j = nlohmann::json::parse(out.str());
    worst = std::max({worst, std::abs(j.at("M").get<double>()),
                      std::abs(j.at("Mprime").get<double>())});
  }
  ok = worst <= 1e-12;
  return {ok, fmt::format("max |M|,|M'| = {:.3e}", worst)};
}

Outcome coherent_curve() {
  double worst = 0.0;
  bool monotone = true;
  for (double re : {0.0, 3.0}) {
    double prev_m = -1.0, prev_mp = -1.0;
    for (int i = 0; i <= 40; ++i) {
      const cd alpha(re, 2.0 * i / 40.0);
      const MeasureReport r = measure(coherent(alpha));
      const auto [m, mp] = coherent_closed(alpha);
      const auto [m0, mp0] = coherent_closed(cd(0.0, alpha.imag()));
      worst = std::max({worst, std::abs(r.M - m), std::abs(r.Mprime - mp),
                        std::abs(r.M - m0), std::abs(r.Mprime - mp0)});
      monotone = monotone && r.M >= prev_m && r.Mprime >= prev_mp;
      prev_m = r.M;
      prev_mp = r.Mprime;
    }
  }
  return {worst <= 1e-12 && monotone,
          fmt::format("max deviation {:.3e}, nondecreasing={}", worst, monotone)};
}

Outcome squeezed_grid() {
  double worst = 0.0;
  bool ordered = true;
  for (int a = 0; a < 20; ++a) {
    const double r = a / 19.0;
    for (int b = 0; b < 20; ++b) {
      const double theta = std::numbers::pi * b / 19.0;
      const cd zeta = std::polar(r, theta);
      const MeasureReport rep = measure(squeezed(zeta));
      const auto [m, mp] = squeezed_closed(zeta);
      worst = std::max({worst, std::abs(rep.M - m), std::abs(rep.Mprime - mp)});
      if (std::abs(std::sin(theta) * std::sinh(2.0 * r)) > 1e-12) {
        ordered = ordered && rep.M > rep.Mprime && rep.Mprime > 0.0;
      }
    }
  }
  return {worst <= 1e-12 && ordered,
          fmt::format("max deviation {:.3e}, M > M' > 0 off-axis={}", worst, ordered)};
}

Outcome realness_oracle() {
  double worst_real = 0.0;
  double weakest_perturbed = 1e300;
  int max_cutoff = 0;
  for (int i = 0; i < 30; ++i) {
    const GaussianState base = induced_real(random_oracle_state(trial_seed(2024, 1, i)));
    const FockMatrix fr = density_matrix(base);
    worst_real = std::max(worst_real, max_imaginary(fr));
    max_cutoff = std::max(max_cutoff, fr.cutoff);

    // Even trials break the mean condition, odd trials the covariance one.
    Vec mean = base.mean();
    Mat cov = base.cov();
    GaussianState perturbed = base;
    bool done = false;
    if (i % 2 == 1) {
      cov(0, 1) += 0.1;
      cov(1, 0) += 0.1;
      try {
        perturbed = validate_state(mean, cov);
        done = true;
      } catch (const Error&) {
      }
    }
    if (!done) {
      mean(1) += 0.1;
      perturbed = validate_state(mean, base.cov());
    }
    const FockMatrix fp = density_matrix(perturbed);
    weakest_perturbed = std::min(weakest_perturbed, max_imaginary(fp));
    max_cutoff = std::max(max_cutoff, fp.cutoff);
  }
  const bool ok = worst_real <= 1e-7 && weakest_perturbed >= 1e-3 && max_cutoff <= 64;
  return {ok, fmt::format("real max|Im| {:.3e}, perturbed min max|Im| {:.3e}, cutoff <= {}",
                          worst_real, weakest_perturbed, max_cutoff)};
}

Outcome conjugation_oracle() {
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    worst = std::max(worst, verify_conjugation(random_oracle_state(trial_seed(2024, 2, i))));
  }
  return {worst <= 1e-7, fmt::format("max deviation {:.3e}", worst)};
}

Outcome fidelity_cross() {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const GaussianState a = random_oracle_state(trial_seed(2024, 60, i));
    const GaussianState b = random_oracle_state(trial_seed(2024, 61, i));
    OracleOptions opts;
    opts.cutoff = std::max(default_cutoff(a), default_cutoff(b));
    const double f = uhlmann_fidelity(density_matrix(a, opts), density_matrix(b, opts));
    worst = std::max(worst, std::abs(fidelity_one_mode(a, b) - f));
  }
  double worst_coherent = 0.0;
  const cd pairs[][2] = {{{0.0, 0.0}, {1.0, 0.0}},
                         {{0.3, -0.2}, {-0.5, 0.7}},
                         {{1.0, 1.0}, {1.0, -1.0}},
                         {{0.0, 1.0}, {0.0, -1.0}},
                         {{2.0, 0.5}, {1.5, 0.5}}};
  for (const auto& p : pairs) {
    const double expect = std::exp(-0.5 * std::norm(p[0] - p[1]));
    worst_coherent =
        std::max(worst_coherent, std::abs(fidelity_one_mode(coherent(p[0]), coherent(p[1])) - expect));
  }
  return {worst <= 1e-6 && worst_coherent <= 1e-8,
          fmt::format("closed vs Uhlmann {:.3e}, coherent pairs {:.3e}", worst, worst_coherent)};
}

Outcome real_channel_suite() {
  constexpr RealChannelClass kinds[] = {RealChannelClass::CompletelyReal,
                                        RealChannelClass::CovariantReal,
                                        RealChannelClass::CovariantAndCompletelyReal};
  double worst_increase = -1e300;
  double worst_commute = 0.0;
  bool real_out = true;
  bool classified = true;
  for (std::size_t c = 0; c < 3; ++c) {
    const RealChannelClass kind = kinds[c];
    for (int i = 0; i < 1000; ++i) {
      // Monotonicity on one mode, where both measures have closed forms.
      const GaussianChannel phi1 = random_real_channel(1, kind, trial_seed(7, 10 + c, i));
      const GaussianState rho1 = random_state(1, 2.0, trial_seed(7, 20 + c, i));
      const MeasureReport before = measure(rho1);
      const MeasureReport after = measure(apply(phi1, rho1));
      worst_increase =
          std::max({worst_increase, after.M - before.M, after.Mprime - before.Mprime});

      // Structural properties on 1 to 3 modes.
      const int modes = 1 + i % 3;
      const GaussianChannel phi = random_real_channel(modes, kind, trial_seed(7, 30 + c, i));
      const GaussianState rho = random_state(modes, 1.0, trial_seed(7, 40 + c, i));
      const GaussianState out = apply(phi, rho);
      classified = classified && classify_real(phi) == kind;
      if (kind != RealChannelClass::CovariantReal) real_out = real_out && is_real(out);
      if (kind != RealChannelClass::CompletelyReal) {
        worst_commute = std::max(
            {worst_commute, state_distance(conjugate(out), apply(phi, conjugate(rho))),
             state_distance(induced_real(out), apply(phi, induced_real(rho)))});
      }
    }
  }
  const bool ok = worst_increase <= 1e-9 && worst_commute <= 1e-10 && real_out && classified;
  return {ok, fmt::format("max increase {:.3e}, commutation {:.3e}, is_real={}, class={}",
                          worst_increase, worst_commute, real_out, classified)};
}

Outcome conjugation_invariance() {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const GaussianState s = random_state(1, 2.0, trial_seed(8, 1, i));
    const MeasureReport a = measure(s);
    const MeasureReport b = measure(conjugate(s));
    worst = std::max({worst, std::abs(a.M - b.M), std::abs(a.Mprime - b.Mprime)});
  }
  return {worst <= 1e-12, fmt::format("max deviation {:.3e}", worst)};
}

Outcome real_part_not_gaussian() {
  const GaussianState s = coherent(cd(0.0, 1.0));
  OracleOptions opts;
  opts.cutoff = std::max(default_cutoff(s), default_cutoff(induced_real(s)));
  const FockMatrix f = density_matrix(s, opts);
  const FockMatrix fc = density_matrix(conjugate(s), opts);
  const FockMatrix fbar = density_matrix(induced_real(s), opts);
  const CMat avg = 0.5 * (f.data + f.data.conjugate());
  const double dist = (avg - fbar.data).cwiseAbs().maxCoeff();
  const double avg_trace_dev = std::abs(avg.trace().real() - 1.0);
  const double bar_trace_dev = std::abs(fbar.data.trace().real() - 1.0);
  // Fock(rho*) from the conjugated moments must agree with the entrywise conjugate.
  const double conj_dev = (fc.data - f.data.conjugate()).cwiseAbs().maxCoeff();
  const bool ok = dist > 0.01 && avg_trace_dev <= 1e-8 && bar_trace_dev <= 1e-8 && conj_dev <= 1e-7;
  return {ok, fmt::format("distance {:.4f}, trace deviations {:.2e} / {:.2e}", dist,
                          avg_trace_dev, bar_trace_dev)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "thermal states have zero imaginarity", 1.0, thermal_zero},
      {2, "coherent family curve", 1.0, coherent_curve},
      {3, "squeezed family grid", 2.0, squeezed_grid},
      {4, "real states have real Fock matrices", 120.0, realness_oracle},
      {5, "conjugation in the Fock basis", 120.0, conjugation_oracle},
      {6, "fidelity cross-validation", 300.0, fidelity_cross},
      {7, "real channel properties", 30.0, real_channel_suite},
      {8, "conjugation invariance of M and M'", 5.0, conjugation_invariance},
      {9, "real part of a coherent state is not Gaussian", 10.0, real_part_not_gaussian},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s (%s; %.2f s of %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), o.detail.c_str(), secs, c.budget_s,
                in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
