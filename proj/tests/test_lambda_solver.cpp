#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "nvsim/error.hpp"
#include "nvsim/lambda_solver.hpp"
#include "nvsim/rng.hpp"

namespace nvsim {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

LambdaParams quiet() {
  LambdaParams p;
  p.omega_p = p.omega_c = 0;
  p.delta_p = p.delta_c = 0;
  p.gamma_opt = p.gamma_deph_opt = p.gamma_s = p.gamma_pop = 0;
  return p;
}

// Draws with every rate bounded away from zero so relaxation is fast
// enough to integrate to the steady state.
LambdaParams random_params(SplitMix64& rng) {
  LambdaParams p;
  p.omega_p = rng.uniform(0.5, 10);
  p.omega_c = rng.uniform(0.5, 10);
  p.delta_p = rng.uniform(-5, 5);
  p.delta_c = rng.uniform(-5, 5);
  p.gamma_opt = rng.uniform(1, 10);
  p.branch_1 = rng.uniform(0.05, 0.95);
  p.branch_2 = 1 - p.branch_1;
  p.gamma_deph_opt = rng.uniform(0, 5);
  p.gamma_s = rng.uniform(0.5, 3);
  p.gamma_pop = rng.uniform(0.5, 2);
  return p;
}

// Wider draws for the cheap properties.
LambdaParams wide_params(SplitMix64& rng) {
  LambdaParams p;
  p.omega_p = rng.uniform(0.01, 200);
  p.omega_c = rng.uniform(0.01, 200);
  p.delta_p = rng.uniform(-300, 300);
  p.delta_c = rng.uniform(-300, 300);
  p.gamma_opt = rng.uniform(0.1, 50);
  p.branch_1 = rng.uniform(0, 1);
  p.branch_2 = 1 - p.branch_1;
  p.gamma_deph_opt = rng.uniform(0, 50);
  p.gamma_s = rng.uniform(0, 5);
  p.gamma_pop = rng.uniform(1e-4, 1);
  return p;
}

TEST(Liouvillian, ZeroWhenNothingActs) {
  EXPECT_EQ(build_liouvillian(quiet()).cwiseAbs().maxCoeff(), 0);
}

TEST(Liouvillian, PopulationRowsConserveTrace) {
  SplitMix64 rng(21);
  for (int n = 0; n < 100; ++n) {
    const auto l = build_liouvillian(wide_params(rng));
    for (int col = 0; col < 9; ++col) {
      const auto sum = l(0, col) + l(4, col) + l(8, col);
      EXPECT_LT(std::abs(sum), 1e-12 * std::max(1.0, l.cwiseAbs().maxCoeff()));
    }
  }
}

TEST(Liouvillian, RelabelingSymmetryPreservesSpectrum) {
  SplitMix64 rng(22);
  for (int n = 0; n < 20; ++n) {
    const LambdaParams p = random_params(rng);
    LambdaParams q = p;
    std::swap(q.omega_p, q.omega_c);
    std::swap(q.branch_1, q.branch_2);
    std::swap(q.delta_p, q.delta_c);

    const Eigen::ComplexEigenSolver<Liouvillian<double>> ep(build_liouvillian(p), false);
    const Eigen::ComplexEigenSolver<Liouvillian<double>> eq(build_liouvillian(q), false);
    std::vector<std::complex<double>> b(eq.eigenvalues().data(),
                                        eq.eigenvalues().data() + 9);
    // Greedy nearest matching of the two multisets.
    for (int i = 0; i < 9; ++i) {
      const auto a = ep.eigenvalues()(i);
      auto best = std::min_element(b.begin(), b.end(), [&](auto x, auto y) {
        return std::abs(x - a) < std::abs(y - a);
      });
      EXPECT_LT(std::abs(*best - a), 1e-8 * std::max(1.0, std::abs(a)));
      b.erase(best);
    }
  }
}

TEST(SteadyState, EmptyFieldsEqualizeGround) {
  LambdaParams p = quiet();
  p.gamma_opt = 13;
  p.gamma_pop = 0.01;
  const auto rho = steady_state(p);
  Matrix3c<double> expect = Matrix3c<double>::Zero();
  expect(0, 0) = expect(1, 1) = 0.5;
  EXPECT_LT((rho.rho - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SteadyState, DarkStateAtTwoPhotonResonance) {
  LambdaParams p;
  p.omega_p = 3;
  p.omega_c = 40;
  p.delta_p = p.delta_c = 7;
  p.gamma_s = p.gamma_pop = 0;
  const auto rho = steady_state(p);
  Vector3c<double> dark(p.omega_c, -p.omega_p, 0);
  const auto expect = DensityMatrix::pure(dark);
  EXPECT_LT((rho.rho - expect.rho).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(std::abs(rho(2, 2)), 1e-10);
  EXPECT_LT(std::abs(rho(2, 0).imag()), 1e-10);
}

TEST(SteadyState, MatchesLongTimeEvolution) {
  SplitMix64 rng(23);
  for (int n = 0; n < 100; ++n) {
    const LambdaParams p = random_params(rng);
    const double min_rate = std::min({p.gamma_opt, p.gamma_s, p.gamma_pop});
    const double dt = 0.05 / (kTwoPi * p.max_rate());
    const auto late = time_evolve(p, DensityMatrix::ground_1(), 50 / min_rate, dt);
    const auto ss = steady_state(p);
    EXPECT_LT((late.rho - ss.rho).cwiseAbs().maxCoeff(), 1e-6) << "draw " << n;
  }
}

TEST(SteadyState, TraceHermiticityPositivity) {
  SplitMix64 rng(24);
  for (int n = 0; n < 1000; ++n) {
    const auto rho = steady_state(wide_params(rng));
    EXPECT_LT(std::abs(rho.trace() - 1), 1e-10);
    EXPECT_LT(rho.hermiticity_error(), 1e-12);
    EXPECT_GT(rho.min_eigenvalue(), -1e-8);
  }
}

TEST(SteadyState, DecoupledLevelIsSingular) {
  // Closed two-level atom: |2> is untouched and any population there stays.
  LambdaParams p;
  p.omega_c = 0;
  p.branch_1 = 1;
  p.branch_2 = 0;
  p.gamma_pop = 0;
  try {
    steady_state(p);
    FAIL() << "expected SingularSystem";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularSystem);
  }
}

TEST(TimeEvolve, ZeroTimeAndZeroGenerator) {
  const auto rho0 = DensityMatrix::pure(Vector3c<double>(1, {0, 1}, 0.5));
  EXPECT_EQ(time_evolve(LambdaParams{}, rho0, 0.0, 1e-5).rho, rho0.rho);
  const auto still = time_evolve(quiet(), rho0, 3.0, 1e-2);
  EXPECT_LT((still.rho - rho0.rho).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TimeEvolve, PureDecayLaw) {
  LambdaParams p = quiet();
  p.gamma_opt = 13;
  DensityMatrix rho0;
  rho0.rho(2, 2) = 1;
  const double t = 1 / p.gamma_opt;
  const auto rho = time_evolve(p, rho0, t, 0.005 / (kTwoPi * p.gamma_opt));
  const double expect = std::exp(-kTwoPi * p.gamma_opt * t);
  EXPECT_NEAR(rho(2, 2).real(), expect, 1e-8 * expect);
  EXPECT_NEAR(rho(0, 0).real(), 0.5 * (1 - expect), 1e-8);
}

TEST(TimeEvolve, StepGuard) {
  LambdaParams p;
  try {
    time_evolve(p, DensityMatrix::ground_1(), 1.0, 1e-3);
    FAIL() << "expected StepTooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StepTooLarge);
  }
}

TEST(ProbeAbsorption, TwoLevelNormalizationAnchor) {
  // All population in |1>, no pumping channel: the weak-probe two-level atom.
  LambdaParams p;
  p.omega_c = 0;
  p.omega_p = 1e-3;
  p.branch_1 = 1;
  p.branch_2 = 0;
  p.gamma_pop = 0;
  const auto rho = time_evolve(p, DensityMatrix::ground_1(), 1.0,
                               0.05 / (kTwoPi * p.max_rate()));
  EXPECT_NEAR(probe_absorption(p, rho), 1.0, 1e-6);
}

TEST(ProbeAbsorption, TwoLevelLorentzian) {
  LambdaParams p;
  p.omega_c = 0;
  p.omega_p = 1e-3;
  p.branch_1 = 1;
  p.branch_2 = 0;
  p.gamma_pop = 0;
  const double g = p.optical_coherence_rate();
  for (double d : {-40.0, -10.0, 5.0, 25.0}) {
    p.delta_p = d;
    const auto rho = time_evolve(p, DensityMatrix::ground_1(), 1.0,
                                 0.05 / (kTwoPi * p.max_rate()));
    EXPECT_NEAR(probe_absorption(p, rho), g * g / (g * g + d * d), 1e-6) << d;
  }
}

TEST(ProbeAbsorption, DarkStateIsTransparent) {
  SplitMix64 rng(25);
  for (int n = 0; n < 200; ++n) {
    LambdaParams p = wide_params(rng);
    p.delta_c = p.delta_p;
    p.gamma_s = p.gamma_pop = 0;
    EXPECT_LT(std::abs(probe_absorption(p)), 1e-9) << n;
  }
}

TEST(ProbeAbsorption, WeakProbeMatchesAnalyticScan) {
  LambdaParams p;
  p.omega_p = 0.01 * p.gamma_opt;
  p.omega_c = 160;
  p.delta_p = 0;
  for (int i = 0; i <= 200; ++i) {
    const double delta = -200 + 2.0 * i;
    p.delta_c = p.delta_p - delta;
    const double numeric = probe_absorption(p);
    const double analytic = weak_probe_absorption(p, delta);
    EXPECT_NEAR(numeric, analytic, 0.01 * analytic) << delta;
  }
}

TEST(WeakProbe, Limits) {
  LambdaParams p;
  p.omega_c = 0;
  EXPECT_NEAR(weak_probe_absorption(p, 0.0), 1.0, 1e-15);
  p.omega_c = 160;
  p.gamma_s = 0;
  p.gamma_pop = 0;
  EXPECT_EQ(weak_probe_absorption(p, 0.0), 0.0);
}

TEST(WeakProbe, ResonantValue) {
  LambdaParams p;
  p.omega_c = 160;
  p.gamma_s = 0.5;
  p.gamma_pop = 0;
  p.gamma_opt = 13;
  p.gamma_deph_opt = 18.5;  // 13 / 2 + 18.5 = 25
  const double expect = 0.5 * 25 / (0.5 * 25 + 160.0 * 160 / 4);
  EXPECT_NEAR(weak_probe_absorption(p, 0.0), expect, 1e-15);
  EXPECT_NEAR(expect, 1.950e-3, 1e-6);

  p.omega_p = 0.01;
  EXPECT_NEAR(probe_absorption(p), expect, 0.01 * expect);
}

TEST(WeakProbe, PowerBroadening) {
  // Width of the transparency window 1 - A(delta), at 10 coupling strengths.
  LambdaParams p;
  double last = 0;
  for (double omega_c : {2.0, 4.0, 8.0, 12.0, 20.0, 35.0, 50.0, 80.0, 120.0, 160.0}) {
    p.omega_c = omega_c;
    const double peak = 1 - weak_probe_absorption(p, 0.0);
    double lo = 0, hi = 4000;  // bisect the half-maximum crossing
    for (int it = 0; it < 200; ++it) {
      const double mid = (lo + hi) / 2;
      if (1 - weak_probe_absorption(p, mid) > peak / 2)
        lo = mid;
      else
        hi = mid;
    }
    const double width = lo + hi;
    EXPECT_GE(width, last) << omega_c;
    last = width;
  }
}

TEST(LambdaParams, Validation) {
  LambdaParams p;
  p.branch_1 = 0.7;
  EXPECT_THROW(p.validate(), Error);
  p = LambdaParams{};
  p.gamma_s = -1;
  EXPECT_THROW(p.validate(), Error);
}

TEST(LambdaSolver, LongDoubleInstantiation) {
  BasicLambdaParams<long double> p;
  p.delta_c = p.delta_p = 3;
  p.gamma_s = p.gamma_pop = 0;
  EXPECT_LT(std::abs(probe_absorption(p)), 1e-12L);
}

}  // namespace
}  // namespace nvsim
