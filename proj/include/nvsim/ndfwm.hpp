#pragma once

// Nondegenerate four-wave mixing: the probe P diffracts off the ground-state
// coherence grating written by the Raman beams R1 and R2.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nvsim/ensemble.hpp"

namespace nvsim {

struct BeamGeometry {
  double wavelength = 637;    // nm
  double theta_r1_r2 = 3.5;   // degrees, in-plane angle between R1 and R2
  double theta_p_oop = 3.5;   // degrees, probe tilt out of the plane
  double sample_length = 1;   // mm

  void validate() const;
};

/// Acousto-optic downshifts from the dye-laser frequency, MHz.
struct FrequencyPlan {
  double shift_r1 = 400;
  double shift_r2 = 280;
  double shift_p = 420;

  void validate() const;
  /// Offset of P from R1, applied as a common one-photon shift of the
  /// resonant-class solve.
  double probe_offset() const { return shift_p - shift_r1; }
};

struct PhaseMatch {
  Eigen::Vector3d k_diffracted;  // rad/mm
  double delta_k = 0;            // |K_D| - 2 pi nu_D / c, rad/mm
};

/// K_D = K_R2 - K_R1 + K_P. R1 runs along z, R2 is tilted in the x-z plane,
/// P in the y-z plane.
PhaseMatch diffracted_wavevector(const BeamGeometry& g, const FrequencyPlan& f);

/// sinc^2(delta_k L / 2).
double phase_match_factor(double delta_k, double length);

/// R1 - R2 difference frequency at scan centre, MHz.
double raman_center_frequency(const FrequencyPlan& f);

struct NdfwmResult {
  Lineshape lineshape;  // efficiency versus Raman detuning
  double peak_efficiency = 0;
  double fwhm = 0;      // MHz; 0 when the lineshape vanishes identically
  double delta_k = 0;
  double pm_factor = 0;
};

/// Ensemble-averaged rho12 of the resonant class at Raman detuning delta,
/// with the probe offset of the frequency plan applied.
std::complex<double> grating_amplitude(const EnsembleSpec& spec, const LambdaParams& base,
                                       const FrequencyPlan& f, double delta,
                                       int workers = 1);

/// Efficiency eta0 * |<rho12>|^2 * pm_factor from a grating amplitude.
double diffraction_efficiency(std::complex<double> grating, double eta0, double pm_factor);

/// eta0 that puts the delta = 0 efficiency at target.
double calibrate_eta0(const EnsembleSpec& spec, const LambdaParams& base,
                      const BeamGeometry& g, const FrequencyPlan& f,
                      double target = 0.005, int workers = 1);

NdfwmResult ndfwm_lineshape(const EnsembleSpec& spec, const LambdaParams& base,
                            const BeamGeometry& g, const FrequencyPlan& f,
                            double delta_lo, double delta_hi, int n_points, double eta0,
                            int workers = 1);

}  // namespace nvsim
