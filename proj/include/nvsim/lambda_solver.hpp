#pragma once

// Master equation for one driven Lambda atom.
//
// Levels: |1> = S=0 ground, |2> = S=-1 ground, |3> = optical excited state.
// The probe (Rabi omega_p) drives 1-3, the coupling (omega_c) drives 2-3.
// Frequencies are cyclic (Omega/2pi) in MHz, times in microseconds; every
// rate enters the equations multiplied by 2pi.
//
// Density matrices are vectorized row-major: element (i, j) sits at 3*i + j.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "nvsim/error.hpp"
#include "nvsim/spin_levels.hpp"

namespace nvsim {

template <typename Scalar>
struct BasicLambdaParams {
  Scalar omega_p = Scalar(0.5);    // probe Rabi frequency, MHz
  Scalar omega_c = Scalar(160);    // coupling Rabi frequency, MHz
  Scalar delta_p = Scalar(0);      // probe one-photon detuning, MHz
  Scalar delta_c = Scalar(0);      // coupling one-photon detuning, MHz
  Scalar gamma_opt = Scalar(13);   // excited-state population decay, MHz
  Scalar branch_1 = Scalar(0.5);
  Scalar branch_2 = Scalar(0.5);
  Scalar gamma_deph_opt = Scalar(18.5);  // extra optical coherence damping, MHz
  Scalar gamma_s = Scalar(1.0);          // ground coherence dephasing, MHz
  Scalar gamma_pop = Scalar(0.001);      // ground population exchange, MHz

  void validate() const {
    require(omega_p >= 0, "omega_p", "must be >= 0");
    require(omega_c >= 0, "omega_c", "must be >= 0");
    require(gamma_opt >= 0, "gamma_opt", "must be >= 0");
    require(gamma_deph_opt >= 0, "gamma_deph_opt", "must be >= 0");
    require(gamma_s >= 0, "gamma_s", "must be >= 0");
    require(gamma_pop >= 0, "gamma_pop", "must be >= 0");
    require(branch_1 >= 0 && branch_2 >= 0, "branch_1/branch_2", "must be >= 0");
    require(std::abs(branch_1 + branch_2 - 1) <= Scalar(1e-12), "branch_1/branch_2",
            "must sum to 1");
  }

  /// Damping rate of the optical coherences rho13 and rho23.
  Scalar optical_coherence_rate() const { return gamma_opt / 2 + gamma_deph_opt; }

  /// Largest frequency scale in the problem, used by the integrator guard.
  Scalar max_rate() const {
    return std::max({gamma_opt, gamma_deph_opt, gamma_s, gamma_pop, omega_p, omega_c,
                     std::abs(delta_p), std::abs(delta_c), std::abs(delta_p - delta_c)});
  }
};

using LambdaParams = BasicLambdaParams<double>;

template <typename Scalar>
struct BasicDensityMatrix {
  Matrix3c<Scalar> rho = Matrix3c<Scalar>::Zero();

  std::complex<Scalar> operator()(int i, int j) const { return rho(i, j); }

  static BasicDensityMatrix pure(const Vector3c<Scalar>& psi) {
    const Vector3c<Scalar> unit = psi.normalized();
    return {unit * unit.adjoint()};
  }

  static BasicDensityMatrix ground_1() {
    BasicDensityMatrix d;
    d.rho(0, 0) = 1;
    return d;
  }

  Scalar trace() const { return rho.trace().real(); }

  Scalar hermiticity_error() const {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  }

  Scalar min_eigenvalue() const {
    const Eigen::SelfAdjointEigenSolver<Matrix3c<Scalar>> solver(
        (rho + rho.adjoint()) / Scalar(2), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
  }
};

using DensityMatrix = BasicDensityMatrix<double>;

template <typename Scalar>
using Liouvillian = Eigen::Matrix<std::complex<Scalar>, 9, 9>;
template <typename Scalar>
using Vector9c = Eigen::Matrix<std::complex<Scalar>, 9, 1>;

template <typename Scalar>
Vector9c<Scalar> vectorize(const BasicDensityMatrix<Scalar>& d) {
  Vector9c<Scalar> v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v(3 * i + j) = d.rho(i, j);
  return v;
}

template <typename Scalar>
BasicDensityMatrix<Scalar> unvectorize(const Vector9c<Scalar>& v) {
  BasicDensityMatrix<Scalar> d;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d.rho(i, j) = v(3 * i + j);
  d.rho = (d.rho + d.rho.adjoint().eval()) / Scalar(2);
  return d;
}

/// Rotating-frame Hamiltonian in MHz.
template <typename Scalar>
Matrix3c<Scalar> lambda_hamiltonian(const BasicLambdaParams<Scalar>& p) {
  Matrix3c<Scalar> h = Matrix3c<Scalar>::Zero();
  h(1, 1) = -(p.delta_p - p.delta_c);
  h(2, 2) = -p.delta_p;
  h(2, 0) = h(0, 2) = p.omega_p / 2;
  h(2, 1) = h(1, 2) = p.omega_c / 2;
  return h;
}

namespace detail {

// Adds the dissipator of the jump operator |to><from| at `rate` (already
// multiplied by 2pi).
template <typename Scalar>
void add_jump(Liouvillian<Scalar>& l, int to, int from, Scalar rate) {
  if (rate == 0) return;
  l(3 * to + to, 3 * from + from) += rate;
  for (int k = 0; k < 3; ++k) {
    l(3 * from + k, 3 * from + k) -= rate / 2;
    l(3 * k + from, 3 * k + from) -= rate / 2;
  }
}

template <typename Scalar>
void add_coherence_damping(Liouvillian<Scalar>& l, int i, int j, Scalar rate) {
  l(3 * i + j, 3 * i + j) -= rate;
  l(3 * j + i, 3 * j + i) -= rate;
}

}  // namespace detail

/// d vec(rho)/dt = L vec(rho), in 1/us.
///
/// Dissipation: spontaneous decay 3->1 and 3->2 split by the branching
/// fractions, symmetric ground population exchange, extra damping of the
/// optical coherences and of the ground coherence.
template <typename Scalar>
Liouvillian<Scalar> build_liouvillian(const BasicLambdaParams<Scalar>& p) {
  using C = std::complex<Scalar>;
  constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  const Matrix3c<Scalar> h = lambda_hamiltonian(p);
  const C minus_i_two_pi(0, -two_pi);

  Liouvillian<Scalar> l = Liouvillian<Scalar>::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int row = 3 * i + j;
      for (int k = 0; k < 3; ++k) {
        l(row, 3 * k + j) += minus_i_two_pi * h(i, k);
        l(row, 3 * i + k) -= minus_i_two_pi * h(k, j);
      }
    }
  }
  detail::add_jump(l, 0, 2, two_pi * p.branch_1 * p.gamma_opt);
  detail::add_jump(l, 1, 2, two_pi * p.branch_2 * p.gamma_opt);
  detail::add_jump(l, 0, 1, two_pi * p.gamma_pop);
  detail::add_jump(l, 1, 0, two_pi * p.gamma_pop);
  detail::add_coherence_damping(l, 0, 2, two_pi * p.gamma_deph_opt);
  detail::add_coherence_damping(l, 1, 2, two_pi * p.gamma_deph_opt);
  detail::add_coherence_damping(l, 0, 1, two_pi * p.gamma_s);
  return l;
}

enum class GroundCoherence { Free, Suppressed };

/// Stationary state with the rho11 equation replaced by the trace condition.
///
/// With GroundCoherence::Suppressed, rho12 is clamped to zero: the same atom
/// and fields without the two-photon coherence, used as the absorption
/// background that Raman interference is measured against.
template <typename Scalar>
BasicDensityMatrix<Scalar> steady_state(
    const BasicLambdaParams<Scalar>& p,
    GroundCoherence coherence = GroundCoherence::Free) {
  Liouvillian<Scalar> a = build_liouvillian(p);
  Vector9c<Scalar> rhs = Vector9c<Scalar>::Zero();
  if (coherence == GroundCoherence::Suppressed) {
    for (int k : {1, 3}) {
      a.row(k).setZero();
      a.col(k).setZero();
      a(k, k) = 1;
    }
  }
  const Scalar scale = std::max(a.cwiseAbs().maxCoeff(), Scalar(1));
  a.row(0).setZero();
  a(0, 0) = a(0, 4) = a(0, 8) = 1;
  rhs(0) = 1;

  const Eigen::PartialPivLU<Liouvillian<Scalar>> lu(a);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (pivots.minCoeff() <= Scalar(1e-12) * scale)
    fail(ErrorKind::SingularSystem,
         "steady state is not unique for these parameters");
  return unvectorize<Scalar>(lu.solve(rhs));
}

/// Fixed-step classical RK4 integration of the master equation.
template <typename Scalar>
BasicDensityMatrix<Scalar> time_evolve(const BasicLambdaParams<Scalar>& p,
                                       const BasicDensityMatrix<Scalar>& rho0,
                                       Scalar t_final, Scalar dt) {
  constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  require(dt > 0, "dt", "must be > 0");
  require(t_final >= 0, "t_final", "must be >= 0");
  if (dt * two_pi * p.max_rate() >= Scalar(0.1))
    fail(ErrorKind::StepTooLarge, "dt exceeds the RK4 stability guard");
  if (t_final == 0) return rho0;

  const Liouvillian<Scalar> l = build_liouvillian(p);
  const auto steps = static_cast<long long>(std::ceil(t_final / dt));
  const Scalar h = t_final / Scalar(steps);
  Vector9c<Scalar> v = vectorize(rho0);
  for (long long n = 0; n < steps; ++n) {
    const Vector9c<Scalar> k1 = l * v;
    const Vector9c<Scalar> k2 = l * (v + (h / 2) * k1);
    const Vector9c<Scalar> k3 = l * (v + (h / 2) * k2);
    const Vector9c<Scalar> k4 = l * (v + h * k3);
    v += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    v = vectorize(unvectorize(v));
  }
  return unvectorize(v);
}

/// Probe absorption read from a given state, normalized so a weakly probed
/// two-level atom on resonance with all population in |1> gives 1.
template <typename Scalar>
Scalar probe_absorption(const BasicLambdaParams<Scalar>& p,
                        const BasicDensityMatrix<Scalar>& rho) {
  require(p.omega_p > 0, "omega_p", "probe absorption needs omega_p > 0");
  return -rho(2, 0).imag() * 2 * p.optical_coherence_rate() / p.omega_p;
}

template <typename Scalar>
Scalar probe_absorption(const BasicLambdaParams<Scalar>& p) {
  return probe_absorption(p, steady_state(p));
}

/// Absorption of the same atom with the ground coherence suppressed.
template <typename Scalar>
Scalar background_absorption(const BasicLambdaParams<Scalar>& p) {
  return probe_absorption(p, steady_state(p, GroundCoherence::Suppressed));
}

/// First-order (weak probe, all population in |1>) absorption at two-photon
/// detuning raman_detuning, probe detuning p.delta_p. No linear solve.
///
/// The ground coherence decays at gamma_s + gamma_pop: the population
/// exchange jumps damp rho12 as well.
template <typename Scalar>
Scalar weak_probe_absorption(const BasicLambdaParams<Scalar>& p, Scalar raman_detuning) {
  using C = std::complex<Scalar>;
  require(p.omega_c >= 0, "omega_c", "must be >= 0");
  const Scalar gamma = p.optical_coherence_rate();
  const Scalar gamma_12 = p.gamma_s + p.gamma_pop;
  const C optical(gamma, -p.delta_p);
  if (p.omega_c == 0) return (C(0, gamma) / optical).imag();
  const C ground(gamma_12, -raman_detuning);
  if (std::abs(ground) == 0) return Scalar(0);
  const C denominator = optical + (p.omega_c * p.omega_c / 4) / ground;
  return (C(0, gamma) / denominator).imag();
}

}  // namespace nvsim
