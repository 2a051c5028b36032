#pragma once

// Simulated Raman-beam saturation sweeps of the NDFWM signal.

#include <span>
#include <string_view>
#include <vector>

#include "nvsim/fitting.hpp"
#include "nvsim/ndfwm.hpp"

namespace nvsim {

enum class SweepBeam { R1, R2, P };

/// "Signal amplitude" convention: field (sqrt of efficiency) or efficiency.
enum class AmplitudeConvention { Field, Efficiency };

/// Beam intensities in W/cm^2.
struct BeamIntensities {
  double r1 = 1.2;
  double r2 = 1.6;
  double p = 5.6;

  void validate() const;
};

struct NdfwmSetup {
  BeamGeometry geometry;
  FrequencyPlan plan;
  double eta0 = 0;
};

/// R1 drives the coupling (2-3) transition, R2 the probe (1-3) transition.
LambdaParams with_beam_rabi(const LambdaParams& base, const IntensityCalibration& cal,
                            const BeamIntensities& beams);

/// Peak (delta = 0) NDFWM amplitude for each intensity of the swept beam, the
/// other beams held at `beams`. P only reads the grating out, so its sweep
/// is flat in this model.
std::vector<SaturationPoint> simulate_saturation_sweep(
    const EnsembleSpec& spec, const LambdaParams& base, const IntensityCalibration& cal,
    const BeamIntensities& beams, const NdfwmSetup& setup, SweepBeam sweep,
    std::span<const double> intensities,
    AmplitudeConvention convention = AmplitudeConvention::Field, int workers = 1);

SweepBeam parse_sweep_beam(std::string_view name);
std::string_view to_string(SweepBeam beam);

}  // namespace nvsim
