#pragma once

#include <vector>

namespace gimag {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

using GaussLegendre = QuadratureRule;

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
GaussLegendre gauss_legendre(int n);

/// The same rule mapped to [-half_width, half_width].
GaussLegendre gauss_legendre(int n, double half_width);

/// n-point Gauss-Hermite rule for the weight exp(-t^2/2) on the real line.
QuadratureRule gauss_hermite(int n);

}  // namespace gimag
