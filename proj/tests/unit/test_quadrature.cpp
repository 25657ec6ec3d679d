#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "gimag/quadrature.hpp"

using namespace gimag;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double integrate(const QuadratureRule& r, auto&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}

}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  for (int n : {1, 2, 3, 7, 20, 121}) {
    const QuadratureRule r = gauss_legendre(n);
    REQUIRE(static_cast<int>(r.nodes.size()) == n);
    for (int k = 0; k <= 2 * n - 1 && k <= 40; ++k) {
      const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      INFO("n " << n << " degree " << k);
      REQUIRE_THAT(integrate(r, [k](double x) { return std::pow(x, k); }), WithinAbs(exact, 1e-13));
    }
  }
}

TEST_CASE("Gauss-Legendre nodes are sorted and symmetric") {
  const QuadratureRule r = gauss_legendre(64, 3.0);
  for (int i = 0; i < 64; ++i) {
    CHECK_THAT(r.nodes[i], WithinAbs(-r.nodes[63 - i], 1e-14));
    CHECK(r.weights[i] > 0.0);
    if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
  }
  CHECK(r.nodes.back() < 3.0);
  CHECK_THAT(integrate(r, [](double) { return 1.0; }), WithinAbs(6.0, 1e-13));
  CHECK_THROWS_AS(gauss_legendre(0), std::exception);
}

TEST_CASE("Gauss-Legendre on a wide interval resolves a Gaussian") {
  const QuadratureRule r = gauss_legendre(120, 9.6);
  CHECK_THAT(integrate(r, [](double x) { return std::exp(-x * x); }),
             WithinAbs(std::sqrt(std::numbers::pi), 1e-14));
}

TEST_CASE("Gauss-Hermite moments of the standard normal weight") {
  const double norm = std::sqrt(2.0 * std::numbers::pi);
  for (int n : {1, 2, 5, 16, 40, 80}) {
    const QuadratureRule r = gauss_hermite(n);
    INFO("n " << n);
    // E[t^(2k)] = (2k-1)!! is exact up to degree 2n-1.
    double dfact = 1.0;
    for (int k = 0; 2 * k <= 2 * n - 1 && k <= 12; ++k) {
      if (k > 0) dfact *= 2 * k - 1;
      REQUIRE_THAT(integrate(r, [k](double t) { return std::pow(t, 2 * k); }) / norm,
                   WithinRel(dfact, 1e-12));
    }
  }
  const QuadratureRule r = gauss_hermite(30);
  CHECK_THAT(integrate(r, [](double t) { return std::cos(1.5 * t); }) / norm,
             WithinAbs(std::exp(-1.125), 1e-14));
}
