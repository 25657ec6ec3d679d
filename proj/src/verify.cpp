#include "gimag/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "gimag/channel.hpp"
#include "gimag/fock_oracle.hpp"
#include "gimag/gaussian_state.hpp"
#include "gimag/measures.hpp"

namespace gimag {

namespace {

constexpr std::array<std::string_view, 5> kSuites = {"theorem1", "theorem2", "theorem4",
                                                     "monotonicity", "oracle"};

constexpr std::array<RealChannelClass, 3> kRealClasses = {
    RealChannelClass::CompletelyReal, RealChannelClass::CovariantReal,
    RealChannelClass::CovariantAndCompletelyReal};


std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double state_distance(const GaussianState& a, const GaussianState& b) {
  return std::max(max_abs(Vec(a.mean() - b.mean())), max_abs(Mat(a.cov() - b.cov())));
}

SuiteResult suite_theorem1(std::uint64_t seed, int trials) {
  SuiteResult r{"theorem1", trials, 0, 0.0, 1e-7, "max |Im rho_jk| of real states"};
  double weakest_perturbed = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    const GaussianState base =
        induced_real(random_oracle_state(trial_seed(seed, 1, i)));
    const double im_real = max_imaginary(density_matrix(base));

    Vec mean = base.mean();
    Mat cov = base.cov();
    bool perturbed_cov = false;
    if (i % 2 == 1) {
      cov(0, 1) += 0.1;
      cov(1, 0) += 0.1;
      perturbed_cov = true;
    }
    GaussianState perturbed = base;
    try {
      perturbed = validate_state(mean, cov);
    } catch (const Error&) {
      perturbed_cov = false;
    }
    if (!perturbed_cov) {
      mean(1) += 0.1;
      perturbed = validate_state(mean, base.cov());
    }
    const double im_perturbed = max_imaginary(density_matrix(perturbed));

    r.worst = std::max(r.worst, im_real);
    weakest_perturbed = std::min(weakest_perturbed, im_perturbed);
    if (im_real <= 1e-7 && im_perturbed >= 1e-3 && is_real(base) && !is_real(perturbed)) {
      ++r.passed;
    }
  }
  r.metric += fmt::format("; min max|Im| of perturbed states = {:.3e}", weakest_perturbed);
  return r;
}

SuiteResult suite_theorem2(std::uint64_t seed, int trials) {
  SuiteResult r{"theorem2", trials, 0, 0.0, 1e-7,
                "max |Fock(conj(s)) - conj(Fock(s))|"};
  for (int i = 0; i < trials; ++i) {
    const GaussianState s = random_oracle_state(trial_seed(seed, 2, i));
    const double dev = verify_conjugation(s);
    r.worst = std::max(r.worst, dev);
    if (dev <= 1e-7) ++r.passed;
  }
  return r;
}

SuiteResult suite_theorem4(std::uint64_t seed, int trials) {
  SuiteResult r{"theorem4", trials, 0, 0.0, 1e-10,
                "max (X, V) deviation in phi(rho)* = phi(rho*) and phi(rho_bar) = bar(phi(rho))"};
  for (int i = 0; i < trials; ++i) {
    bool ok = true;
    const int modes = 1 + i % 3;
    for (std::size_t c = 0; c < kRealClasses.size(); ++c) {
      const RealChannelClass kind = kRealClasses[c];
      const GaussianChannel phi = random_real_channel(modes, kind, trial_seed(seed, 40 + c, i));
      const GaussianState rho = random_state(modes, 1.0, trial_seed(seed, 43 + c, i));
      const GaussianState out = apply(phi, rho);
      ok = ok && classify_real(phi) == kind;

      const GaussianState real_in = induced_real(rho);
      ok = ok && is_real(apply(phi, real_in));

      if (kind != RealChannelClass::CovariantReal) ok = ok && is_real(out);
      if (kind != RealChannelClass::CompletelyReal) {
        const double d1 = state_distance(conjugate(out), apply(phi, conjugate(rho)));
        const double d2 = state_distance(induced_real(out), apply(phi, real_in));
        r.worst = std::max({r.worst, d1, d2});
        ok = ok && d1 <= 1e-10 && d2 <= 1e-10;
      }
    }
    if (ok) ++r.passed;
  }
  return r;
}

SuiteResult suite_monotonicity(std::uint64_t seed, int trials) {
  SuiteResult r{"monotonicity", trials, 0, -std::numeric_limits<double>::infinity(), 1e-9,
                "max change of M or M' under a real channel"};
  for (int i = 0; i < trials; ++i) {
    bool ok = true;
    for (std::size_t c = 0; c < kRealClasses.size(); ++c) {
      const GaussianChannel phi =
          random_real_channel(1, kRealClasses[c], trial_seed(seed, 50 + c, i));
      const GaussianState rho = random_state(1, 2.0, trial_seed(seed, 53 + c, i));
      const MeasureReport before = measure(rho);
      const MeasureReport after = measure(apply(phi, rho));
      const double inc = std::max(after.M - before.M, after.Mprime - before.Mprime);
      r.worst = std::max(r.worst, inc);
      ok = ok && inc <= 1e-9;
    }
    if (ok) ++r.passed;
  }
  return r;
}

SuiteResult suite_oracle(std::uint64_t seed, int trials) {
  SuiteResult r{"oracle", trials, 0, 0.0, 1e-6,
                "max of |F_closed - F_uhlmann| and moment round-trip error"};
  for (int i = 0; i < trials; ++i) {
    const GaussianState a = random_oracle_state(trial_seed(seed, 60, i));
    const GaussianState b = random_oracle_state(trial_seed(seed, 61, i));
    OracleOptions opts;
    opts.cutoff = std::max(default_cutoff(a), default_cutoff(b));
    const FockMatrix fa = density_matrix(a, opts);
    const FockMatrix fb = density_matrix(b, opts);
    const double dev_f = std::abs(fidelity_one_mode(a, b) - uhlmann_fidelity(fa, fb));
    // The moment round trip is held to 1e-6 only once truncation is negligible.
    OracleOptions wide;
    wide.cutoff = 96;
    const FockMatrix fw = density_matrix(a, wide);
    const Moments mom = moments_from_fock(fw, 1e-9);
    const double dev_m = std::max(max_abs(Vec(mom.mean - a.mean())), max_abs(Mat(mom.cov - a.cov())));
    const double dev = std::max(dev_f, dev_m);
    r.worst = std::max(r.worst, dev);
    if (dev <= 1e-6) ++r.passed;
  }
  return r;
}

}  // namespace

bool VerifyReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

bool is_known_suite(std::string_view suite) {
  return suite == "all" || std::find(kSuites.begin(), kSuites.end(), suite) != kSuites.end();
}

GaussianState random_oracle_state(std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    GaussianState s = random_state(1, 0.5, attempt == 0 ? seed : trial_seed(seed, 99, attempt));
    if (mean_photon_number(s, 0) <= kOracleMaxPhotons) return s;
  }
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix(splitmix(splitmix(seed) ^ stream) ^ index);
}

VerifyReport run_verify(std::string_view suite, std::uint64_t seed, int trials) {
  if (!is_known_suite(suite)) {
    throw Error(Errc::invalid_argument, fmt::format("unknown suite \"{}\"", suite));
  }
  if (trials < 1) throw Error(Errc::invalid_argument, "trials must be >= 1");
  VerifyReport report;
  const auto want = [&](std::string_view name) { return suite == "all" || suite == name; };
  if (want("theorem1")) report.suites.push_back(suite_theorem1(seed, trials));
  if (want("theorem2")) report.suites.push_back(suite_theorem2(seed, trials));
  if (want("theorem4")) report.suites.push_back(suite_theorem4(seed, trials));
  if (want("monotonicity")) report.suites.push_back(suite_monotonicity(seed, trials));
  if (want("oracle")) report.suites.push_back(suite_oracle(seed, trials));

  report.min_m_minus_mprime = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    const MeasureReport m = measure(random_state(1, 2.0, trial_seed(seed, 70, i)));
    report.min_m_minus_mprime = std::min(report.min_m_minus_mprime, m.M - m.Mprime);
  }
  report.exploratory_samples = trials;
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::string out;
  for (const SuiteResult& s : report.suites) {
    out += fmt::format("{:<13} {:>5}/{:<5} {}  worst={:.3e} (bound {:.0e})  [{}]\n", s.name,
                       s.passed, s.trials, s.ok() ? "PASS" : "FAIL", s.worst, s.threshold,
                       s.metric);
  }
  out += fmt::format("exploratory   min(M - M') over {} random one-mode states = {:.6e}\n",
                     report.exploratory_samples, report.min_m_minus_mprime);
  out += fmt::format("overall       {}\n", report.ok() ? "PASS" : "FAIL");
  return out;
}

}  // namespace gimag
