#include "gimag/kernels/laguerre.hpp"

#include <vector>

#include "gimag/error.hpp"

namespace gimag::kernels {

void accumulate_laguerre_scalar(const NodeBatch& nodes, int cutoff, std::span<double> acc_re,
                                std::span<double> acc_im) {
  if (cutoff < 1 || acc_re.size() < tri_size(cutoff) || acc_im.size() < tri_size(cutoff)) {
    throw Error(Errc::dimension_mismatch, "accumulator smaller than the cutoff triangle");
  }
  std::vector<double> inv(cutoff + 1);
  for (int k = 1; k <= cutoff; ++k) inv[k] = 1.0 / k;

  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const double mr = nodes.mu_re[n];
    const double mi = nodes.mu_im[n];
    const double x = mr * mr + mi * mi;
    double gr = nodes.c_re[n];
    double gi = nodes.c_im[n];
    for (int m = 0; m < cutoff; ++m) {
      const int len = cutoff - m;
      double* are = acc_re.data() + tri_index(cutoff, m, 0);
      double* aim = acc_im.data() + tri_index(cutoff, m, 0);
      double lprev = 1.0;
      are[0] += gr * lprev;
      aim[0] += gi * lprev;
      if (len > 1) {
        double lcur = 1.0 + m - x;
        are[1] += gr * lcur;
        aim[1] += gi * lcur;
        for (int k = 1; k + 1 < len; ++k) {
          const double lnext = ((2.0 * k + 1.0 + m - x) * lcur - (k + m) * lprev) * inv[k + 1];
          lprev = lcur;
          lcur = lnext;
          are[k + 1] += gr * lcur;
          aim[k + 1] += gi * lcur;
        }
      }
      const double tr = gr * mr - gi * mi;
      gi = gr * mi + gi * mr;
      gr = tr;
    }
  }
}

}  // namespace gimag::kernels
