#include "gimag/kernels/laguerre.hpp"

#include <vector>

#include "gimag/error.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define GIMAG_HAVE_AVX2_KERNEL 1
#include <immintrin.h>
#else
#define GIMAG_HAVE_AVX2_KERNEL 0
#endif

namespace gimag::kernels {

#if GIMAG_HAVE_AVX2_KERNEL

namespace {

// Four nodes per lane group. acc_lane holds one partial sum per lane so the
// final reduction order is fixed.
__attribute__((target("avx2,fma"))) void accumulate_block(
    const double* mu_re, const double* mu_im, const double* c_re, const double* c_im,
    int cutoff, const double* inv, double* lane_re, double* lane_im) {
  const __m256d mr = _mm256_loadu_pd(mu_re);
  const __m256d mi = _mm256_loadu_pd(mu_im);
  const __m256d x = _mm256_fmadd_pd(mr, mr, _mm256_mul_pd(mi, mi));
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d gr = _mm256_loadu_pd(c_re);
  __m256d gi = _mm256_loadu_pd(c_im);

  for (int m = 0; m < cutoff; ++m) {
    const int len = cutoff - m;
    double* are = lane_re + 4 * tri_index(cutoff, m, 0);
    double* aim = lane_im + 4 * tri_index(cutoff, m, 0);

    __m256d lprev = one;
    _mm256_storeu_pd(are, _mm256_add_pd(_mm256_loadu_pd(are), gr));
    _mm256_storeu_pd(aim, _mm256_add_pd(_mm256_loadu_pd(aim), gi));
    if (len > 1) {
      __m256d lcur = _mm256_sub_pd(_mm256_set1_pd(1.0 + m), x);
      _mm256_storeu_pd(are + 4, _mm256_fmadd_pd(gr, lcur, _mm256_loadu_pd(are + 4)));
      _mm256_storeu_pd(aim + 4, _mm256_fmadd_pd(gi, lcur, _mm256_loadu_pd(aim + 4)));
      for (int k = 1; k + 1 < len; ++k) {
        const __m256d a = _mm256_sub_pd(_mm256_set1_pd(2.0 * k + 1.0 + m), x);
        const __m256d b = _mm256_set1_pd(static_cast<double>(k + m));
        const __m256d t = _mm256_fmsub_pd(a, lcur, _mm256_mul_pd(b, lprev));
        const __m256d lnext = _mm256_mul_pd(t, _mm256_set1_pd(inv[k + 1]));
        lprev = lcur;
        lcur = lnext;
        double* pr = are + 4 * (k + 1);
        double* pi = aim + 4 * (k + 1);
        _mm256_storeu_pd(pr, _mm256_fmadd_pd(gr, lcur, _mm256_loadu_pd(pr)));
        _mm256_storeu_pd(pi, _mm256_fmadd_pd(gi, lcur, _mm256_loadu_pd(pi)));
      }
    }
    const __m256d tr = _mm256_fmsub_pd(gr, mr, _mm256_mul_pd(gi, mi));
    gi = _mm256_fmadd_pd(gr, mi, _mm256_mul_pd(gi, mr));
    gr = tr;
  }
}

}  // namespace

void accumulate_laguerre_avx2(const NodeBatch& nodes, int cutoff, std::span<double> acc_re,
                              std::span<double> acc_im) {
  const std::size_t tri = tri_size(cutoff);
  if (cutoff < 1 || acc_re.size() < tri || acc_im.size() < tri) {
    throw Error(Errc::dimension_mismatch, "accumulator smaller than the cutoff triangle");
  }
  if (!isa_available(Isa::avx2)) {
    throw Error(Errc::unsupported, "AVX2 kernel requested on a CPU without AVX2/FMA");
  }
  std::vector<double> inv(cutoff + 1, 0.0);
  for (int k = 1; k <= cutoff; ++k) inv[k] = 1.0 / k;
  std::vector<double> lane_re(4 * tri, 0.0);
  std::vector<double> lane_im(4 * tri, 0.0);

  const std::size_t count = nodes.size();
  const std::size_t full = count - count % 4;
  for (std::size_t n = 0; n < full; n += 4) {
    accumulate_block(&nodes.mu_re[n], &nodes.mu_im[n], &nodes.c_re[n], &nodes.c_im[n], cutoff,
                     inv.data(), lane_re.data(), lane_im.data());
  }
  if (full < count) {
    // Zero-weight padding lanes contribute exactly zero.
    double pad[4][4] = {};
    for (std::size_t n = full; n < count; ++n) {
      pad[0][n - full] = nodes.mu_re[n];
      pad[1][n - full] = nodes.mu_im[n];
      pad[2][n - full] = nodes.c_re[n];
      pad[3][n - full] = nodes.c_im[n];
    }
    accumulate_block(pad[0], pad[1], pad[2], pad[3], cutoff, inv.data(), lane_re.data(),
                     lane_im.data());
  }
  for (std::size_t t = 0; t < tri; ++t) {
    const double* r = &lane_re[4 * t];
    const double* i = &lane_im[4 * t];
    acc_re[t] += (r[0] + r[1]) + (r[2] + r[3]);
    acc_im[t] += (i[0] + i[1]) + (i[2] + i[3]);
  }
}

#else

void accumulate_laguerre_avx2(const NodeBatch&, int, std::span<double>, std::span<double>) {
  throw Error(Errc::unsupported, "AVX2 kernel not compiled for this architecture");
}

#endif

}  // namespace gimag::kernels
