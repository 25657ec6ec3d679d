#pragma once

// Hot loop of the Fock-basis inversion: for a batch of quadrature nodes with
// complex displacement argument mu_n and complex weight c_n, accumulate
//
//   acc(m, k) += sum_n c_n * mu_n^m * L_k^(m)(|mu_n|^2)     for m + k < cutoff
//
// into a triangular (m, k) table. Multiplying entry (m, k) by sqrt(k!/(k+m)!)
// gives the sum over nodes of c_n <k+m| D(mu_n) |k> exp(|mu_n|^2 / 2).
//
// Every ISA variant evaluates the same recurrence; the scalar variant is the
// reference the others are tested against.

#include <cstddef>
#include <span>

namespace gimag::kernels {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);

struct NodeBatch {
  std::span<const double> mu_re;
  std::span<const double> mu_im;
  std::span<const double> c_re;
  std::span<const double> c_im;

  std::size_t size() const { return mu_re.size(); }
};

inline std::size_t tri_size(int cutoff) {
  return static_cast<std::size_t>(cutoff) * (cutoff + 1) / 2;
}

inline std::size_t tri_index(int cutoff, int m, int k) {
  return static_cast<std::size_t>(m) * cutoff - static_cast<std::size_t>(m) * (m - 1) / 2 + k;
}

void accumulate_laguerre_scalar(const NodeBatch& nodes, int cutoff, std::span<double> acc_re,
                                std::span<double> acc_im);

void accumulate_laguerre_avx2(const NodeBatch& nodes, int cutoff, std::span<double> acc_re,
                              std::span<double> acc_im);

/// True when the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa);

/// Best available variant; GI_SIMD=scalar in the environment forces scalar.
Isa active_isa();

void accumulate_laguerre(const NodeBatch& nodes, int cutoff, std::span<double> acc_re,
                         std::span<double> acc_im, Isa isa = active_isa());

}  // namespace gimag::kernels
