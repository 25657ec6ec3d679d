#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gimag/gaussian_state.hpp"

namespace gimag {

/// Real-channel classes: completely real channels have vanishing p-rows in T,
/// covariant real channels keep q and p blocks of T separate.
enum class RealChannelClass {
  NotReal,
  CompletelyReal,
  CovariantReal,
  CovariantAndCompletelyReal,
};

const char* to_string(RealChannelClass c);

/// Gaussian channel acting as X -> T X + d, V -> T V T^T + N.
class GaussianChannel {
 public:
  int modes() const { return static_cast<int>(d_.size() / 2); }
  const Vec& d() const { return d_; }
  const Mat& T() const { return t_; }
  const Mat& N() const { return n_; }

  /// Minimum eigenvalue of N + i*Omega - i*T Omega T^T.
  double cp_margin() const { return margin_; }

 private:
  GaussianChannel(Vec d, Mat t, Mat n, double margin)
      : d_(std::move(d)), t_(std::move(t)), n_(std::move(n)), margin_(margin) {}

  friend GaussianChannel validate_channel(const Vec&, const Mat&, const Mat&,
                                          const Tolerances&);

  Vec d_;
  Mat t_;
  Mat n_;
  double margin_;
};

GaussianChannel validate_channel(const Vec& d, const Mat& T, const Mat& N,
                                 const Tolerances& tol = {});

/// Throws Errc::dimension_mismatch when the mode counts differ.
GaussianState apply(const GaussianChannel& channel, const GaussianState& state,
                    const Tolerances& tol = {});

/// The channel "first, then second": T = T2 T1, d = T2 d1 + d2, N = T2 N1 T2^T + N2.
GaussianChannel compose(const GaussianChannel& second, const GaussianChannel& first,
                        const Tolerances& tol = {});

/// One failed zero-test, 1-based indices as in the (q1,p1,...) ordering.
struct PatternViolation {
  std::string entry;  // e.g. "T(2,1)"
  double value;
};

/// Outcome of every realness condition on a channel.
struct RealnessReport {
  bool displacement_ok = true;   // d_{2l} = 0
  bool noise_ok = true;          // N_{2l-1,2m} = 0
  bool completely_ok = true;     // T_{2l,2m-1} = T_{2l,2m} = 0
  bool covariant_ok = true;      // T_{2l-1,2m} = T_{2m,2l-1} = 0
  std::vector<PatternViolation> displacement_violations;
  std::vector<PatternViolation> noise_violations;
  std::vector<PatternViolation> completely_violations;
  std::vector<PatternViolation> covariant_violations;

  RealChannelClass classification() const;
};

RealnessReport inspect_realness(const GaussianChannel& channel, const Tolerances& tol = {});

RealChannelClass classify_real(const GaussianChannel& channel, const Tolerances& tol = {});

/// Deterministic random channel whose classify_real equals `kind`.
/// Throws Errc::invalid_argument for kind == NotReal.
GaussianChannel random_real_channel(int modes, RealChannelClass kind, std::uint64_t seed);

}  // namespace gimag
