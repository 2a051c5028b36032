#include "nvsim/ndfwm.hpp"

#include <cmath>
#include <numbers>

#include "nvsim/error.hpp"
#include "nvsim/fitting.hpp"

namespace nvsim {
namespace {

constexpr double kSpeedOfLight = 2.99792458e8;  // m/s

// Optical wavenumber in rad/mm for a frequency in MHz.
double wavenumber(double frequency_mhz) {
  return 2 * std::numbers::pi * frequency_mhz * 1e6 / kSpeedOfLight * 1e-3;
}

double radians(double degrees) { return degrees * std::numbers::pi / 180; }

LambdaParams with_probe_offset(const LambdaParams& base, const FrequencyPlan& f) {
  LambdaParams p = base;
  p.delta_p += f.probe_offset();
  p.delta_c += f.probe_offset();
  return p;
}

}  // namespace

void BeamGeometry::validate() const {
  require(wavelength > 0, "wavelength", "must be > 0");
  require(theta_r1_r2 >= 0 && theta_r1_r2 < 90, "theta_r1_r2", "must lie in [0, 90)");
  require(theta_p_oop >= 0 && theta_p_oop < 90, "theta_p_oop", "must lie in [0, 90)");
  require(sample_length > 0, "sample_length", "must be > 0");
}

void FrequencyPlan::validate() const {
  require(shift_r1 > 0, "shift_r1", "must be > 0");
  require(shift_r2 > 0, "shift_r2", "must be > 0");
  require(shift_p > 0, "shift_p", "must be > 0");
}

PhaseMatch diffracted_wavevector(const BeamGeometry& g, const FrequencyPlan& f) {
  g.validate();
  f.validate();
  const double laser = kSpeedOfLight / (g.wavelength * 1e-9) * 1e-6;  // MHz
  const double nu_r1 = laser - f.shift_r1;
  const double nu_r2 = laser - f.shift_r2;
  const double nu_p = laser - f.shift_p;
  const double nu_d = nu_r2 - nu_r1 + nu_p;

  const double a = radians(g.theta_r1_r2);
  const double b = radians(g.theta_p_oop);
  const Eigen::Vector3d k_r1 = wavenumber(nu_r1) * Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d k_r2 =
      wavenumber(nu_r2) * Eigen::Vector3d(std::sin(a), 0, std::cos(a));
  const Eigen::Vector3d k_p =
      wavenumber(nu_p) * Eigen::Vector3d(0, std::sin(b), std::cos(b));

  PhaseMatch out;
  out.k_diffracted = k_r2 - k_r1 + k_p;
  out.delta_k = out.k_diffracted.norm() - wavenumber(nu_d);
  return out;
}

double phase_match_factor(double delta_k, double length) {
  require(length > 0, "sample_length", "must be > 0");
  const double arg = delta_k * length / 2;
  if (arg == 0) return 1.0;
  const double sinc = std::sin(arg) / arg;
  return sinc * sinc;
}

double raman_center_frequency(const FrequencyPlan& f) { return f.shift_r1 - f.shift_r2; }

std::complex<double> grating_amplitude(const EnsembleSpec& spec, const LambdaParams& base,
                                       const FrequencyPlan& f, double delta, int workers) {
  ResonantClass resonant(spec, with_probe_offset(base, f), Observables::Coherence,
                         workers);
  return resonant.mean_coherence(delta);
}

double diffraction_efficiency(std::complex<double> grating, double eta0,
                              double pm_factor) {
  return eta0 * std::norm(grating) * pm_factor;
}

double calibrate_eta0(const EnsembleSpec& spec, const LambdaParams& base,
                      const BeamGeometry& g, const FrequencyPlan& f, double target,
                      int workers) {
  require(target > 0, "target_efficiency", "must be > 0");
  const double pm = phase_match_factor(diffracted_wavevector(g, f).delta_k,
                                       g.sample_length);
  const double unit = diffraction_efficiency(grating_amplitude(spec, base, f, 0.0, workers),
                                             1.0, pm);
  if (!(unit > 0))
    fail(ErrorKind::SingularSystem, "no grating at the calibration point");
  return target / unit;
}

NdfwmResult ndfwm_lineshape(const EnsembleSpec& spec, const LambdaParams& base,
                            const BeamGeometry& g, const FrequencyPlan& f,
                            double delta_lo, double delta_hi, int n_points, double eta0,
                            int workers) {
  require(n_points >= 11, "points", "lineshapes need at least 11 points");
  require(delta_hi > delta_lo, "scan", "start must be below stop");
  require(eta0 >= 0, "eta0", "must be >= 0");

  NdfwmResult out;
  out.delta_k = diffracted_wavevector(g, f).delta_k;
  out.pm_factor = phase_match_factor(out.delta_k, g.sample_length);
  out.lineshape.x = linspace(delta_lo, delta_hi, n_points);

  ResonantClass resonant(spec, with_probe_offset(base, f), Observables::Coherence,
                         workers);
  resonant.prepare(out.lineshape.x);
  for (double delta : out.lineshape.x) {
    const double eff =
        diffraction_efficiency(resonant.mean_coherence(delta), eta0, out.pm_factor);
    out.lineshape.y.push_back(eff);
    out.peak_efficiency = std::max(out.peak_efficiency, eff);
  }
  if (out.peak_efficiency > 0) out.fwhm = fwhm(out.lineshape).fwhm;
  return out;
}

}  // namespace nvsim
