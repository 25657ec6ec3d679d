#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gimag/fock_oracle.hpp"
#include "gimag/kernels/laguerre.hpp"

using namespace gimag;
using namespace gimag::kernels;

namespace {

struct Batch {
  std::vector<double> mr, mi, cr, ci;
  NodeBatch view() const { return {mr, mi, cr, ci}; }
};

Batch random_batch(std::size_t n, std::uint64_t seed, double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  Batch b;
  for (std::size_t i = 0; i < n; ++i) {
    b.mr.push_back(u(rng));
    b.mi.push_back(u(rng));
    const double damp = std::exp(-0.5 * (b.mr.back() * b.mr.back() + b.mi.back() * b.mi.back()));
    b.cr.push_back(c(rng) * damp);
    b.ci.push_back(c(rng) * damp);
  }
  return b;
}

}  // namespace

TEST_CASE("triangular layout") {
  const int d = 7;
  std::size_t expect = 0;
  for (int m = 0; m < d; ++m) {
    for (int k = 0; k + m < d; ++k) REQUIRE(tri_index(d, m, k) == expect++);
  }
  CHECK(expect == tri_size(d));
}

TEST_CASE("scalar kernel matches per-element displacement matrices") {
  const Batch b = random_batch(37, 1, 3.0);
  const int d = 12;
  std::vector<double> re(tri_size(d), 0.0), im(tri_size(d), 0.0);
  accumulate_laguerre_scalar(b.view(), d, re, im);

  // Brute force: sum_n c_n <k+m|D(mu_n)|k> e^{|mu_n|^2/2} sqrt((k+m)!/k!).
  std::vector<std::complex<double>> ref(tri_size(d));
  for (std::size_t n = 0; n < b.mr.size(); ++n) {
    const std::complex<double> mu(b.mr[n], b.mi[n]);
    const std::complex<double> c(b.cr[n], b.ci[n]);
    for (int m = 0; m < d; ++m) {
      for (int k = 0; k + m < d; ++k) {
        const double undo = std::exp(0.5 * std::norm(mu) +
                                     0.5 * (std::lgamma(k + m + 1.0) - std::lgamma(k + 1.0)));
        ref[tri_index(d, m, k)] += c * displacement_element(k + m, k, mu) * undo;
      }
    }
  }
  for (std::size_t t = 0; t < ref.size(); ++t) {
    const double scale = std::max(1.0, std::abs(ref[t]));
    INFO("entry " << t);
    REQUIRE(std::abs(re[t] - ref[t].real()) <= 1e-10 * scale);
    REQUIRE(std::abs(im[t] - ref[t].imag()) <= 1e-10 * scale);
  }
}

TEST_CASE("SIMD kernel matches the scalar reference") {
  if (!isa_available(Isa::avx2)) SKIP("AVX2 not available on this CPU");
  // Sizes around the 4-lane width exercise the padded tail.
  for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 63u, 1001u}) {
    for (int d : {1, 2, 5, 32, 64}) {
      const Batch b = random_batch(n, 100 + n + d, 4.0);
      std::vector<double> sr(tri_size(d), 0.0), si(tri_size(d), 0.0);
      std::vector<double> vr(tri_size(d), 0.0), vi(tri_size(d), 0.0);
      accumulate_laguerre_scalar(b.view(), d, sr, si);
      accumulate_laguerre_avx2(b.view(), d, vr, vi);
      double scale = 1.0;
      for (std::size_t t = 0; t < sr.size(); ++t) {
        scale = std::max({scale, std::abs(sr[t]), std::abs(si[t])});
      }
      for (std::size_t t = 0; t < sr.size(); ++t) {
        INFO("n " << n << " cutoff " << d << " entry " << t);
        REQUIRE(std::abs(sr[t] - vr[t]) <= 1e-12 * scale);
        REQUIRE(std::abs(si[t] - vi[t]) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("kernels accumulate rather than overwrite") {
  const Batch b = random_batch(9, 5, 2.0);
  const int d = 6;
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    if (!isa_available(isa)) continue;
    std::vector<double> once(tri_size(d), 0.0), oi(tri_size(d), 0.0);
    std::vector<double> twice(tri_size(d), 0.0), ti(tri_size(d), 0.0);
    accumulate_laguerre(b.view(), d, once, oi, isa);
    accumulate_laguerre(b.view(), d, twice, ti, isa);
    accumulate_laguerre(b.view(), d, twice, ti, isa);
    for (std::size_t t = 0; t < once.size(); ++t) {
      REQUIRE(std::abs(twice[t] - 2.0 * once[t]) <= 1e-12 * std::max(1.0, std::abs(once[t])));
    }
  }
}

TEST_CASE("kernel rejects short accumulators") {
  const Batch b = random_batch(4, 1, 1.0);
  std::vector<double> re(3), im(3);
  CHECK_THROWS_AS(accumulate_laguerre_scalar(b.view(), 4, re, im), Error);
  CHECK(std::string(to_string(Isa::scalar)) == "scalar");
  CHECK(isa_available(Isa::scalar));
}
