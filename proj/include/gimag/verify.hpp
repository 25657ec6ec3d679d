#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gimag/gaussian_state.hpp"

namespace gimag {

/// Outcome of one property suite.
struct SuiteResult {
  std::string name;
  int trials = 0;
  int passed = 0;
  double worst = 0.0;       // largest deviation seen (suite-specific metric)
  double threshold = 0.0;   // the bound `worst` is held to
  std::string metric;

  bool ok() const { return passed == trials; }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  // Exploratory only: whether M >= M' always holds is an open question.
  double min_m_minus_mprime = 0.0;
  int exploratory_samples = 0;

  bool ok() const;
};

/// Suite names: all, theorem1, theorem2, theorem4, monotonicity, oracle.
bool is_known_suite(std::string_view suite);

/// Runs the named suite(s). Deterministic in (suite, seed, trials).
VerifyReport run_verify(std::string_view suite, std::uint64_t seed, int trials);

/// Human-readable summary; contains no timing data so reruns are byte-identical.
std::string format_report(const VerifyReport& report);

/// Mean photon number bound for states drawn by random_oracle_state; keeps the
/// truncation error at the default one-mode cutoff far below the trace tolerance.
inline constexpr double kOracleMaxPhotons = 1.5;

/// random_state(1, 0.5, .) redrawn until the mean photon number is at most
/// kOracleMaxPhotons. Deterministic in seed.
GaussianState random_oracle_state(std::uint64_t seed);

/// Derives an independent per-trial seed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace gimag
