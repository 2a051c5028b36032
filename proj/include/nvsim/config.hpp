#pragma once

// Run configuration: a flat INI-style document.
//
//   # comment
//   workers = 4
//   [ensemble]
//   w_resonant = 0.25
//   w_background = 0.75
//
// Keys before the first section header set top-level fields. Unknown
// sections or keys are errors; omitted keys keep their defaults.

#include <string>
#include <string_view>
#include <vector>

#include "nvsim/ensemble.hpp"
#include "nvsim/fitting.hpp"
#include "nvsim/ndfwm.hpp"
#include "nvsim/saturation.hpp"
#include "nvsim/spin_levels.hpp"

namespace nvsim {

struct ScanRange {
  double start = -20;  // MHz
  double stop = 20;    // MHz
  int points = 81;
};

struct FieldScan {
  double b_start = 0;     // G
  double b_stop = 2000;   // G
  int b_points = 401;
};

struct NdfwmSettings {
  double eta0 = 0;  // <= 0: calibrate to target_efficiency at the configured beams
  double target_efficiency = 0.005;
};

struct SaturationSettings {
  SweepBeam beam = SweepBeam::R1;
  SaturationModel model = SaturationModel::Rational;
  AmplitudeConvention amplitude = AmplitudeConvention::Field;
  std::vector<double> intensities = {2,    3.1,  4.9,  7.7,  12,  18.9,
                                     29.6, 46.4, 72.8, 114,  179, 280};
};

struct GateEstimate {
  double rabi = 160;  // MHz
  double t2 = 10;     // us

  /// Rabi cycles per coherence time (MHz * us).
  double n_gates() const { return rabi * t2; }
};

struct RunConfig {
  SpinSystemParams spin;
  LambdaParams lambda;
  EnsembleSpec ensemble;
  IntensityCalibration calibration;
  BeamGeometry geometry;
  FrequencyPlan freq_plan;
  ScanRange scan;
  FieldScan levels;
  BeamIntensities beams;
  NdfwmSettings ndfwm;
  SaturationSettings saturation;
  GateEstimate gates;
  int workers = 1;
  std::string output_path;

  void validate() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// "section.key = value" for every physics and scan field, in a fixed order.
/// workers and output_path are execution settings and are not echoed, so
/// outputs do not depend on them.
std::vector<std::string> echo_config(const RunConfig& cfg);

/// Locale-independent %.9g.
std::string format_number(double value);

}  // namespace nvsim
