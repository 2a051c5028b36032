#pragma once

#include <span>
#include <vector>

#include "nvsim/ensemble.hpp"

namespace nvsim {

struct WidthResult {
  double fwhm = 0;    // MHz
  double peak_x = 0;  // MHz
  double peak_y = 0;
};

/// Full width at half maximum. Half-maximum crossings are linearly
/// interpolated between neighbouring samples; the peak is the largest sample.
WidthResult fwhm(const Lineshape& ls);

struct SaturationPoint {
  double intensity;  // W/cm^2
  double amplitude;
};

enum class SaturationModel {
  Rational,     // a_max * i / (i + i_sat)
  Exponential,  // a_max * (1 - exp(-i / i_sat))
};

struct SaturationFit {
  double a_max = 0;
  double i_sat = 0;  // W/cm^2
  double residual_rms = 0;
};

/// Least squares with a_max eliminated in closed form and i_sat found by
/// golden-section search on [min(i) / 10, max(i) * 10].
SaturationFit fit_saturation(std::span<const SaturationPoint> points,
                             SaturationModel model = SaturationModel::Rational);

double saturation_model(SaturationModel model, double a_max, double i_sat,
                        double intensity);

}  // namespace nvsim
