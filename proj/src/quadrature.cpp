#include "nvsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <numbers>

#include "nvsim/error.hpp"

namespace nvsim {
namespace {

// Returns (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) fail(ErrorKind::QuadratureUnderflow, "Gauss-Legendre order must be >= 1");
  if (n == 1) return {{0.0}, {2.0}};

  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    if (n % 2 == 1 && 2 * i + 1 == n) {
      x = 0.0;
    } else {
      for (int it = 0; it < 100; ++it) {
        const auto [p, dp] = legendre(n, x);
        const double step = p / dp;
        x -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
      }
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace nvsim
