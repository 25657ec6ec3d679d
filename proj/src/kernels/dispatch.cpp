#include "gimag/kernels/laguerre.hpp"

#include <cstdlib>
#include <string_view>

namespace gimag::kernels {

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("GI_SIMD"); env && std::string_view(env) == "scalar") {
      return Isa::scalar;
    }
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  }();
  return chosen;
}

void accumulate_laguerre(const NodeBatch& nodes, int cutoff, std::span<double> acc_re,
                         std::span<double> acc_im, Isa isa) {
  switch (isa) {
    case Isa::avx2:
      accumulate_laguerre_avx2(nodes, cutoff, acc_re, acc_im);
      return;
    case Isa::scalar:
      accumulate_laguerre_scalar(nodes, cutoff, acc_re, acc_im);
      return;
  }
}

}  // namespace gimag::kernels
