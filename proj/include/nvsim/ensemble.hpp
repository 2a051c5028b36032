#pragma once

// Inhomogeneous ensemble of Lambda atoms.
//
// Two distributions are averaged over. The optical detuning Delta shifts
// probe and coupling one-photon detunings together; the 750 GHz Gaussian is
// flat on the scale of the dynamics, so it is integrated with Gauss-Legendre
// over a finite window. The spin offset s shifts the two-photon detuning and
// follows a Gaussian of FWHM spin_inhom_fwhm.
//
// The resonant class depends on the scan detuning delta and the spin offset
// only through x = delta + s. The spin average is therefore carried out on a
// fixed uniform grid x_j = j * h of absolute two-photon detunings, weighted
// by the Gaussian centred on delta, and the optical average at each x_j is
// computed once and shared by every scan point.

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "nvsim/lambda_solver.hpp"

namespace nvsim {

struct EnsembleSpec {
  double opt_inhom_fwhm = 750e3;  // MHz
  double opt_window = 2000;       // MHz, half-width
  int opt_points = 801;
  double spin_inhom_fwhm = 5;     // MHz
  int spin_points = 341;
  double w_resonant = 0.25;
  double w_background = 0.75;
  double od_background = 0.3;

  /// Half-width of the spin grid in standard deviations.
  static constexpr double kSpinCutoffSigmas = 4.0;
  /// Grid used when spin_inhom_fwhm is 0: each scan point is its own node.
  static constexpr double kZeroWidthStep = 1e-9;

  void validate() const;
  double spin_sigma() const;
  /// Spacing of the two-photon detuning grid.
  double spin_step() const;
};

struct IntensityCalibration {
  double i_ref = 280;      // W/cm^2
  double omega_ref = 160;  // MHz at i_ref
  /// Rabi frequency of the R2 (probe, 1-3) transition relative to R1 at
  /// equal intensity.
  double r2_dipole_ratio = 0.8017837257372732;  // sqrt(36 / 56)

  void validate() const;
};

struct Lineshape {
  std::string axis_label = "delta_MHz";
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
  void validate() const;
};

/// Omega = omega_ref * sqrt(i / i_ref).
double intensity_to_rabi(const IntensityCalibration& cal, double intensity);

/// Optical average of the resonant class at a fixed two-photon detuning.
struct NodeResponse {
  double absorption = 0;   // probe_absorption
  double background = 0;   // background_absorption
  std::complex<double> rho12{};
};

enum class Observables {
  Absorption,  // absorption and its coherence-free background
  Coherence,   // rho12 only; omega_p may be zero
};

/// Cache of optical averages on the two-photon detuning grid for one
/// (spec, base) pair. Not thread-safe; parallelism is internal.
class ResonantClass {
 public:
  ResonantClass(const EnsembleSpec& spec, const LambdaParams& base,
                Observables observables, int workers = 1);

  /// Spin-weighted A_res(delta): absorption over its background.
  double absorption_ratio(double delta);
  /// Spin-weighted ensemble mean of rho12.
  std::complex<double> mean_coherence(double delta);

  /// Computes every grid node needed for the given scan points up front.
  void prepare(const std::vector<double>& deltas);

  std::size_t cached_nodes() const { return cache_.size(); }

 private:
  struct Weighted {
    long index;
    double weight;
  };
  std::vector<Weighted> spin_weights(double delta) const;
  void compute(const std::vector<long>& missing);
  NodeResponse solve_node(long index, std::size_t optical_node) const;

  EnsembleSpec spec_;
  LambdaParams base_;
  Observables observables_;
  int workers_;
  double step_;
  std::vector<double> optical_detunings_;
  std::vector<double> optical_weights_;
  std::map<long, NodeResponse> cache_;
};

/// w_background * 1 + w_resonant * A_res(delta). Background orientation
/// classes are two-level absorbers with unit normalized absorption.
double averaged_absorption(const EnsembleSpec& spec, const LambdaParams& base,
                           double delta, int workers = 1);

/// Fractional transparency 1 - averaged_absorption on n_points evenly spaced
/// detunings in [delta_lo, delta_hi].
Lineshape eit_lineshape(const EnsembleSpec& spec, const LambdaParams& base,
                        double delta_lo, double delta_hi, int n_points,
                        int workers = 1);

/// Absorption and transparency columns together, sharing one cache.
struct EitScan {
  std::vector<double> delta;
  std::vector<double> absorption;
};
EitScan eit_scan(const EnsembleSpec& spec, const LambdaParams& base, double delta_lo,
                 double delta_hi, int n_points, int workers = 1);

/// Beer-Lambert with base-10 optical density: 10^(-od_background * absorption).
double transmission(const EnsembleSpec& spec, double absorption);

/// 1 - probe_absorption / background_absorption for one correctly oriented
/// atom on one- and two-photon resonance.
double single_center_transparency(const LambdaParams& base);

std::vector<double> linspace(double lo, double hi, int n);

}  // namespace nvsim
