#pragma once

#include <vector>

namespace nvsim {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Nodes ascending; for odd n the
/// middle node is exactly zero.
QuadratureRule gauss_legendre(int n);

}  // namespace nvsim
