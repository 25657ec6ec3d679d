#pragma once

#include <utility>

#include "gimag/gaussian_state.hpp"

namespace gimag {

enum class MeasureMethod { ClosedForm, Oracle };

const char* to_string(MeasureMethod m);

/// Both imaginarity measures of a state together with the fidelities they
/// derive from: M = 1 - F(rho, rho*), Mprime = 1 - F(rho, rho_bar).
struct MeasureReport {
  double M = 0.0;
  double Mprime = 0.0;
  double fidelity_conj = 1.0;
  double fidelity_bar = 1.0;
  MeasureMethod method = MeasureMethod::ClosedForm;
};

/// Faithfulness threshold: M <= eps_measure counts as zero.
inline constexpr double eps_measure = 1e-9;

/// Closed-form fidelity between two one-mode Gaussian states.
double fidelity_one_mode(const GaussianState& a, const GaussianState& b);

struct MeasureOptions {
  bool oracle_fallback = false;  // allow the Fock oracle for two-mode states
  bool force_oracle = false;     // use the oracle even for one mode (cross-checks)
  int cutoff = 0;                // oracle cutoff per mode, 0 = heuristic
};

/// One-mode states use the closed forms; two-mode states need oracle_fallback.
MeasureReport measure(const GaussianState& state, const MeasureOptions& opts = {});

/// M = 1 - F(rho, rho*).
double measure_M(const GaussianState& state, const MeasureOptions& opts = {});
/// M' = 1 - F(rho, rho_bar).
double measure_Mprime(const GaussianState& state, const MeasureOptions& opts = {});

/// Family closed forms for coherent and squeezed states, returned as (M, M').
std::pair<double, double> coherent_closed(std::complex<double> alpha);
std::pair<double, double> squeezed_closed(std::complex<double> zeta);

}  // namespace gimag
