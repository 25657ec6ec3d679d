#pragma once

// Brute-force verification layer: Fock-basis density matrices obtained by
// numerically inverting the characteristic function of a Gaussian state.
// Independent of the closed forms in measures.hpp; one or two modes only.

#include <complex>
#include <utility>

#include "gimag/gaussian_state.hpp"

namespace gimag {

/// Truncated density matrix. Two-mode matrices use the basis index
/// j1 * cutoff + j2.
struct FockMatrix {
  int modes = 1;
  int cutoff = 0;
  CMat data;
  double trace_deficit = 0.0;  // 1 - tr(data)

  // Quadrature diagnostics.
  int nodes_per_axis = 0;
  double half_width = 0.0;
  double residual = 0.0;  // max |entry change| in the last refinement
};

struct OracleOptions {
  int cutoff = 0;                   // per mode; 0 = heuristic
  double trace_tolerance = 1e-8;    // max trace deficit before "insufficient cutoff"
  double convergence = 1e-10;       // max entry change between refinements
  int initial_nodes = 0;            // per axis; 0 = 120 (one mode) or 40 (two modes)
  int max_nodes = 0;                // per axis; 0 = 960 (one mode) or 80 (two modes)
};

/// chi(xi) = exp[-1/2 xi^T (Omega V Omega^T) xi - i (Omega X)^T xi].
std::complex<double> characteristic_function(const GaussianState& state, const Vec& xi);

/// <j| D(lambda) |k> via the associated-Laguerre closed form.
std::complex<double> displacement_element(int j, int k, std::complex<double> lambda);

/// All <j| D(lambda) |k> with j, k < cutoff.
CMat displacement_matrix(std::complex<double> lambda, int cutoff);

/// Cutoff heuristic: ceil(24 (nbar_max + 1)) capped at 64 (one mode) or 14 (two modes).
int default_cutoff(const GaussianState& state);

/// Half-width L of the square integration box per axis.
double quadrature_half_width(const GaussianState& state);

FockMatrix density_matrix(const GaussianState& state, const OracleOptions& opts = {});

struct Moments {
  Vec mean;
  Mat cov;
};

/// Reconstructs (X, V) from ladder-operator moments of a Fock matrix.
Moments moments_from_fock(const FockMatrix& fm, double trace_tolerance = 1e-8);

/// tr sqrt( sqrt(a) b sqrt(a) ).
double uhlmann_fidelity(const FockMatrix& a, const FockMatrix& b);

/// max |Im rho_jk| <= tol.
bool verify_realness(const FockMatrix& fm, double tol);
double max_imaginary(const FockMatrix& fm);

/// max_jk |Fock(conjugate(state))_jk - conj(Fock(state)_jk)|.
double verify_conjugation(const GaussianState& state, const OracleOptions& opts = {});

}  // namespace gimag
