#include "nvsim/saturation.hpp"

#include <cmath>
#include <string>

#include "nvsim/error.hpp"

namespace nvsim {

void BeamIntensities::validate() const {
  require(r1 >= 0, "r1", "must be >= 0");
  require(r2 >= 0, "r2", "must be >= 0");
  require(p >= 0, "p", "must be >= 0");
}

LambdaParams with_beam_rabi(const LambdaParams& base, const IntensityCalibration& cal,
                            const BeamIntensities& beams) {
  beams.validate();
  LambdaParams p = base;
  p.omega_c = intensity_to_rabi(cal, beams.r1);
  p.omega_p = cal.r2_dipole_ratio * intensity_to_rabi(cal, beams.r2);
  return p;
}

std::vector<SaturationPoint> simulate_saturation_sweep(
    const EnsembleSpec& spec, const LambdaParams& base, const IntensityCalibration& cal,
    const BeamIntensities& beams, const NdfwmSetup& setup, SweepBeam sweep,
    std::span<const double> intensities, AmplitudeConvention convention, int workers) {
  for (std::size_t i = 0; i < intensities.size(); ++i) {
    require(intensities[i] > 0, "intensities", "must be positive");
    if (i > 0) require(intensities[i] > intensities[i - 1], "intensities",
                       "must be ascending");
  }
  const double pm = phase_match_factor(
      diffracted_wavevector(setup.geometry, setup.plan).delta_k,
      setup.geometry.sample_length);

  std::vector<SaturationPoint> out;
  out.reserve(intensities.size());
  for (double intensity : intensities) {
    BeamIntensities swept = beams;
    switch (sweep) {
      case SweepBeam::R1: swept.r1 = intensity; break;
      case SweepBeam::R2: swept.r2 = intensity; break;
      case SweepBeam::P: swept.p = intensity; break;
    }
    const auto grating = grating_amplitude(spec, with_beam_rabi(base, cal, swept),
                                           setup.plan, 0.0, workers);
    const double eff = diffraction_efficiency(grating, setup.eta0, pm);
    out.push_back({intensity, convention == AmplitudeConvention::Field ? std::sqrt(eff)
                                                                       : eff});
  }
  return out;
}

SweepBeam parse_sweep_beam(std::string_view name) {
  if (name == "R1") return SweepBeam::R1;
  if (name == "R2") return SweepBeam::R2;
  if (name == "P") return SweepBeam::P;
  fail(ErrorKind::InvariantViolation, "beam: expected R1, R2 or P, got " + std::string(name));
}

std::string_view to_string(SweepBeam beam) {
  switch (beam) {
    case SweepBeam::R1: return "R1";
    case SweepBeam::R2: return "R2";
    case SweepBeam::P: return "P";
  }
  return "?";
}

}  // namespace nvsim
