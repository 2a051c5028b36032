#include "nvsim/fitting.hpp"

#include <algorithm>
#include <cmath>

#include "nvsim/error.hpp"

namespace nvsim {
namespace {

double interpolate_crossing(double x0, double y0, double x1, double y1, double level) {
  if (y1 == y0) return x0;
  return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

struct ProfileResidual {
  double a_max;
  double sum_squares;
};

// For fixed i_sat the model is linear in a_max.
ProfileResidual profile(std::span<const SaturationPoint> points, SaturationModel model,
                        double i_sat) {
  double fa = 0, ff = 0;
  for (const auto& p : points) {
    const double f = saturation_model(model, 1.0, i_sat, p.intensity);
    fa += f * p.amplitude;
    ff += f * f;
  }
  const double a_max = fa / ff;
  double ss = 0;
  for (const auto& p : points) {
    const double r = p.amplitude - saturation_model(model, a_max, i_sat, p.intensity);
    ss += r * r;
  }
  return {a_max, ss};
}

}  // namespace

WidthResult fwhm(const Lineshape& ls) {
  ls.validate();
  const auto& x = ls.x;
  const auto& y = ls.y;
  const std::size_t n = y.size();
  if (n < 3) fail(ErrorKind::NoPeak, "lineshape needs at least 3 samples");

  const std::size_t peak =
      static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  if (peak == 0 || peak == n - 1 || !(y[peak] > y.front()) || !(y[peak] > y.back()))
    fail(ErrorKind::NoPeak, "maximum lies on the scan boundary");

  const double half = y[peak] / 2;
  std::size_t right = peak + 1;
  while (right < n && y[right] > half) ++right;
  std::size_t left = peak;
  while (left > 0 && y[left - 1] > half) --left;
  if (right == n || left == 0)
    fail(ErrorKind::NoCrossing, "lineshape never falls to half maximum");
  --left;

  const double x_right =
      interpolate_crossing(x[right - 1], y[right - 1], x[right], y[right], half);
  const double x_left =
      interpolate_crossing(x[left], y[left], x[left + 1], y[left + 1], half);
  return {x_right - x_left, x[peak], y[peak]};
}

double saturation_model(SaturationModel model, double a_max, double i_sat,
                        double intensity) {
  switch (model) {
    case SaturationModel::Rational:
      return a_max * intensity / (intensity + i_sat);
    case SaturationModel::Exponential:
      return a_max * -std::expm1(-intensity / i_sat);
  }
  return 0;
}

SaturationFit fit_saturation(std::span<const SaturationPoint> points,
                             SaturationModel model) {
  require(points.size() >= 4, "points", "saturation fit needs at least 4 points");
  double i_min = points[0].intensity, i_max = points[0].intensity;
  double a_min = points[0].amplitude, a_max = points[0].amplitude;
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(points[i].intensity > 0, "intensity", "must be > 0");
    for (std::size_t j = 0; j < i; ++j)
      require(points[j].intensity != points[i].intensity, "intensity",
              "must be distinct");
    i_min = std::min(i_min, points[i].intensity);
    i_max = std::max(i_max, points[i].intensity);
    a_min = std::min(a_min, points[i].amplitude);
    a_max = std::max(a_max, points[i].amplitude);
  }
  if (a_max - a_min <= 1e-12 * std::max(std::abs(a_max), std::abs(a_min)))
    fail(ErrorKind::DegenerateData, "all amplitudes are equal; i_sat is unidentifiable");

  constexpr double kInvPhi = 0.6180339887498949;
  constexpr double kRelTol = 1e-6;
  double lo = i_min / 10, hi = i_max * 10;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = profile(points, model, c).sum_squares;
  double fd = profile(points, model, d).sum_squares;
  while (hi - lo > kRelTol * (lo + hi) / 2) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = profile(points, model, c).sum_squares;
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = profile(points, model, d).sum_squares;
    }
  }
  const double i_sat = (lo + hi) / 2;
  const ProfileResidual best = profile(points, model, i_sat);
  return {best.a_max, i_sat,
          std::sqrt(best.sum_squares / static_cast<double>(points.size()))};
}

}  // namespace nvsim
