#pragma once

// Ground-state spin triplet of the N-V center versus applied magnetic field.
//
// Basis ordering is {m=+1, m=0, m=-1} everywhere. Energies are in MHz, the
// field in gauss, the field angle in degrees from the (111) axis.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "nvsim/error.hpp"

namespace nvsim {

template <typename Scalar>
using Matrix3c = Eigen::Matrix<std::complex<Scalar>, 3, 3>;
template <typename Scalar>
using Vector3c = Eigen::Matrix<std::complex<Scalar>, 3, 1>;

template <typename Scalar>
struct BasicSpinSystemParams {
  Scalar zfs_D = Scalar(2870);   // MHz
  Scalar gyro = Scalar(2.8);     // MHz/G
  Scalar field_B = Scalar(0);    // G
  Scalar angle_theta = Scalar(0);  // degrees
  Scalar mix_eps = Scalar(10);   // MHz, m=0 <-> m=-1 coupling

  void validate() const {
    require(zfs_D > 0, "zfs_D", "must be > 0");
    require(gyro > 0, "gyro", "must be > 0");
    require(field_B >= 0, "field_B", "must be >= 0");
    require(angle_theta >= 0 && angle_theta < 90, "angle_theta",
            "must lie in [0, 90)");
    require(mix_eps >= 0, "mix_eps", "must be >= 0");
  }

  BasicSpinSystemParams with_field(Scalar b) const {
    auto copy = *this;
    copy.field_B = b;
    return copy;
  }
};

using SpinSystemParams = BasicSpinSystemParams<double>;

template <typename Scalar>
struct BasicLevelSet {
  Eigen::Matrix<Scalar, 3, 1> energies;  // ascending
  Matrix3c<Scalar> vectors;              // column k pairs with energies(k)
};

using LevelSet = BasicLevelSet<double>;

/// H = D Sz^2 + gyro B (cos(theta) Sz + sin(theta) Sx) + eps (|0><-1| + h.c.)
///
/// The Zeeman sign puts m=-1 on the descending branch, so it meets m=0 at
/// B = D / gyro where eps opens the anticrossing.
template <typename Scalar>
Matrix3c<Scalar> build_spin_hamiltonian(const BasicSpinSystemParams<Scalar>& p) {
  using C = std::complex<Scalar>;
  const Scalar theta = p.angle_theta * std::numbers::pi_v<Scalar> / Scalar(180);
  const Scalar bz = p.gyro * p.field_B * std::cos(theta);
  const Scalar bx = p.gyro * p.field_B * std::sin(theta) / std::sqrt(Scalar(2));

  Matrix3c<Scalar> h = Matrix3c<Scalar>::Zero();
  h(0, 0) = C(p.zfs_D + bz);
  h(2, 2) = C(p.zfs_D - bz);
  h(0, 1) = h(1, 0) = C(bx);
  h(1, 2) = h(2, 1) = C(bx + p.mix_eps);
  return h;
}

/// Eigenvectors are phase-fixed so that their largest-magnitude component is
/// real and positive.
template <typename Scalar>
BasicLevelSet<Scalar> ground_levels(const BasicSpinSystemParams<Scalar>& p) {
  const Eigen::SelfAdjointEigenSolver<Matrix3c<Scalar>> solver(
      build_spin_hamiltonian(p));
  BasicLevelSet<Scalar> levels{solver.eigenvalues(), solver.eigenvectors()};
  for (int k = 0; k < 3; ++k) {
    auto column = levels.vectors.col(k);
    Eigen::Index largest = 0;
    column.cwiseAbs().maxCoeff(&largest);
    const auto pivot = column(largest);
    column *= std::conj(pivot) / std::abs(pivot);
    column(largest) = std::abs(column(largest));
  }
  return levels;
}

/// Spacing of the two lowest levels, the S=0 / S=-1 Raman transition near
/// the anticrossing.
template <typename Scalar>
Scalar raman_splitting(const BasicSpinSystemParams<Scalar>& p) {
  const auto levels = ground_levels(p);
  return levels.energies(1) - levels.energies(0);
}

/// 4 |c0|^2 |c-1|^2 for the lowest eigenstate: 1 for an equal m=0 / m=-1
/// superposition, 0 for a pure sublevel.
template <typename Scalar>
Scalar mixing_fraction(const BasicSpinSystemParams<Scalar>& p) {
  const auto levels = ground_levels(p);
  const Scalar c0 = std::norm(levels.vectors(1, 0));
  const Scalar cm1 = std::norm(levels.vectors(2, 0));
  return std::min(Scalar(1), Scalar(4) * c0 * cm1);
}

/// Field inside [lo, hi] at which raman_splitting equals target.
///
/// The splitting is V-shaped around the anticrossing, so the bracket may hold
/// two roots with no end-to-end sign change. The bracket is scanned on a
/// fixed grid for the first (lowest-field) sign change, then bisected.
template <typename Scalar>
Scalar field_for_splitting(const BasicSpinSystemParams<Scalar>& p, Scalar target,
                           Scalar lo, Scalar hi) {
  require(lo >= 0 && hi > lo, "bracket", "needs 0 <= lo < hi");
  constexpr int kScanIntervals = 1000;
  constexpr int kMaxBisections = 200;
  const auto residual = [&](Scalar b) {
    return raman_splitting(p.with_field(b)) - target;
  };

  Scalar a = lo;
  Scalar fa = residual(a);
  if (fa == 0) return a;
  for (int i = 1; i <= kScanIntervals; ++i) {
    const Scalar b = (i == kScanIntervals)
                         ? hi
                         : lo + (hi - lo) * Scalar(i) / Scalar(kScanIntervals);
    const Scalar fb = residual(b);
    if (fb == 0) return b;
    if ((fa < 0) != (fb < 0)) {
      Scalar left = a, right = b, f_left = fa;
      for (int it = 0; it < kMaxBisections; ++it) {
        const Scalar mid = left + (right - left) / 2;
        if (mid <= left || mid >= right) break;
        const Scalar f_mid = residual(mid);
        if (f_mid == 0) return mid;
        if ((f_left < 0) == (f_mid < 0)) {
          left = mid;
          f_left = f_mid;
        } else {
          right = mid;
        }
      }
      return std::abs(residual(left)) <= std::abs(residual(right)) ? left : right;
    }
    a = b;
    fa = fb;
  }
  fail(ErrorKind::NoRoot, "splitting never reaches " + std::to_string(target) +
                              " MHz inside the field bracket");
}

}  // namespace nvsim
