#include "nvsim/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nvsim/error.hpp"
#include "nvsim/parallel.hpp"
#include "nvsim/quadrature.hpp"

namespace nvsim {
namespace {

constexpr double kFwhmPerSigma = 2.3548200450309493;  // 2 sqrt(2 ln 2)

void require_quadrature_order(int points, const std::string& field) {
  if (points < 3 || points % 2 == 0)
    fail(ErrorKind::QuadratureUnderflow, field + " must be odd and >= 3");
}

}  // namespace

void EnsembleSpec::validate() const {
  require(opt_inhom_fwhm > 0, "opt_inhom_fwhm", "must be > 0");
  require(opt_window > 0, "opt_window", "must be > 0");
  require(spin_inhom_fwhm >= 0, "spin_inhom_fwhm", "must be >= 0");
  require(w_resonant >= 0 && w_background >= 0, "w_resonant/w_background",
          "must be >= 0");
  require(std::abs(w_resonant + w_background - 1) <= 1e-12, "w_resonant/w_background",
          "must sum to 1");
  require(od_background >= 0, "od_background", "must be >= 0");
  require_quadrature_order(opt_points, "opt_points");
  require_quadrature_order(spin_points, "spin_points");
}

double EnsembleSpec::spin_sigma() const { return spin_inhom_fwhm / kFwhmPerSigma; }

double EnsembleSpec::spin_step() const {
  if (spin_inhom_fwhm == 0) return kZeroWidthStep;
  return 2 * kSpinCutoffSigmas * spin_sigma() / (spin_points - 1);
}

void IntensityCalibration::validate() const {
  require(i_ref > 0, "i_ref", "must be > 0");
  require(omega_ref > 0, "omega_ref", "must be > 0");
  require(r2_dipole_ratio > 0, "r2_dipole_ratio", "must be > 0");
}

void Lineshape::validate() const {
  require(x.size() == y.size(), "lineshape", "x and y sizes differ");
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(std::isfinite(x[i]) && std::isfinite(y[i]), "lineshape",
            "samples must be finite");
    if (i > 0) require(x[i] > x[i - 1], "lineshape", "x must be strictly increasing");
  }
}

double intensity_to_rabi(const IntensityCalibration& cal, double intensity) {
  cal.validate();
  require(intensity >= 0, "intensity", "must be >= 0");
  if (intensity == cal.i_ref) return cal.omega_ref;
  return cal.omega_ref * std::sqrt(intensity / cal.i_ref);
}

std::vector<double> linspace(double lo, double hi, int n) {
  require(n >= 2, "points", "need at least 2");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = (i == n - 1) ? hi : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return out;
}

ResonantClass::ResonantClass(const EnsembleSpec& spec, const LambdaParams& base,
                             Observables observables, int workers)
    : spec_(spec), base_(base), observables_(observables), workers_(workers) {
  spec_.validate();
  base_.validate();
  if (observables_ == Observables::Absorption)
    require(base_.omega_p > 0, "omega_p", "absorption needs omega_p > 0");
  step_ = spec_.spin_step();

  const QuadratureRule rule = gauss_legendre(spec_.opt_points);
  const double sigma = spec_.opt_inhom_fwhm / kFwhmPerSigma;
  double total = 0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double detuning = spec_.opt_window * rule.nodes[k];
    const double weight =
        rule.weights[k] * std::exp(-detuning * detuning / (2 * sigma * sigma));
    optical_detunings_.push_back(detuning);
    optical_weights_.push_back(weight);
    total += weight;
  }
  for (double& w : optical_weights_) w /= total;
}

std::vector<ResonantClass::Weighted> ResonantClass::spin_weights(double delta) const {
  const double sigma = spec_.spin_sigma();
  if (sigma == 0) return {{std::lround(delta / step_), 1.0}};
  const double reach = EnsembleSpec::kSpinCutoffSigmas * sigma;
  // Nodes within reach of delta, with a tolerance so that scan points on the
  // grid keep both end nodes.
  const double slack = 1e-9 * step_;
  const long first = static_cast<long>(std::ceil((delta - reach - slack) / step_));
  const long last = static_cast<long>(std::floor((delta + reach + slack) / step_));
  if (last - first + 1 < 3)
    fail(ErrorKind::QuadratureUnderflow, "spin grid holds fewer than 3 nodes");

  std::vector<Weighted> out;
  out.reserve(static_cast<std::size_t>(last - first + 1));
  double total = 0;
  for (long j = first; j <= last; ++j) {
    const double s = j * step_ - delta;
    const double w = std::exp(-s * s / (2 * sigma * sigma));
    out.push_back({j, w});
    total += w;
  }
  for (auto& node : out) node.weight /= total;
  return out;
}

NodeResponse ResonantClass::solve_node(long index, std::size_t optical_node) const {
  LambdaParams p = base_;
  const double shift = optical_detunings_[optical_node];
  p.delta_p = base_.delta_p + shift + index * step_;
  p.delta_c = base_.delta_c + shift;

  NodeResponse r;
  const DensityMatrix rho = steady_state(p);
  r.rho12 = rho(0, 1);
  if (observables_ == Observables::Absorption) {
    r.absorption = probe_absorption(p, rho);
    r.background = background_absorption(p);
  }
  return r;
}

void ResonantClass::compute(const std::vector<long>& missing) {
  if (missing.empty()) return;
  const std::size_t per_node = optical_detunings_.size();
  std::vector<NodeResponse> raw(missing.size() * per_node);
  parallel_for(raw.size(), workers_, [&](std::size_t flat) {
    raw[flat] = solve_node(missing[flat / per_node], flat % per_node);
  });
  for (std::size_t m = 0; m < missing.size(); ++m) {
    NodeResponse sum;
    for (std::size_t k = 0; k < per_node; ++k) {
      const NodeResponse& r = raw[m * per_node + k];
      const double w = optical_weights_[k];
      sum.absorption += w * r.absorption;
      sum.background += w * r.background;
      sum.rho12 += w * r.rho12;
    }
    cache_.emplace(missing[m], sum);
  }
}

void ResonantClass::prepare(const std::vector<double>& deltas) {
  std::set<long> needed;
  for (double delta : deltas)
    for (const auto& node : spin_weights(delta))
      if (!cache_.contains(node.index)) needed.insert(node.index);
  compute(std::vector<long>(needed.begin(), needed.end()));
}

double ResonantClass::absorption_ratio(double delta) {
  require(observables_ == Observables::Absorption, "observables",
          "absorption was not requested");
  prepare({delta});
  double numerator = 0, denominator = 0;
  for (const auto& node : spin_weights(delta)) {
    const NodeResponse& r = cache_.at(node.index);
    numerator += node.weight * r.absorption;
    denominator += node.weight * r.background;
  }
  if (!(denominator > 0))
    fail(ErrorKind::SingularSystem, "background absorption vanished");
  return numerator / denominator;
}

std::complex<double> ResonantClass::mean_coherence(double delta) {
  prepare({delta});
  std::complex<double> sum{};
  for (const auto& node : spin_weights(delta))
    sum += node.weight * cache_.at(node.index).rho12;
  return sum;
}

double averaged_absorption(const EnsembleSpec& spec, const LambdaParams& base,
                           double delta, int workers) {
  spec.validate();
  if (spec.w_resonant == 0) return 1.0;
  ResonantClass resonant(spec, base, Observables::Absorption, workers);
  return spec.w_background + spec.w_resonant * resonant.absorption_ratio(delta);
}

EitScan eit_scan(const EnsembleSpec& spec, const LambdaParams& base, double delta_lo,
                 double delta_hi, int n_points, int workers) {
  require(n_points >= 11, "points", "lineshapes need at least 11 points");
  require(delta_hi > delta_lo, "scan", "start must be below stop");
  spec.validate();
  EitScan scan{linspace(delta_lo, delta_hi, n_points), {}};
  if (spec.w_resonant == 0) {
    scan.absorption.assign(scan.delta.size(), 1.0);
    return scan;
  }
  ResonantClass resonant(spec, base, Observables::Absorption, workers);
  resonant.prepare(scan.delta);
  for (double delta : scan.delta)
    scan.absorption.push_back(spec.w_background +
                              spec.w_resonant * resonant.absorption_ratio(delta));
  return scan;
}

Lineshape eit_lineshape(const EnsembleSpec& spec, const LambdaParams& base,
                        double delta_lo, double delta_hi, int n_points, int workers) {
  const EitScan scan = eit_scan(spec, base, delta_lo, delta_hi, n_points, workers);
  Lineshape out;
  out.x = scan.delta;
  for (double a : scan.absorption) out.y.push_back(1.0 - a);
  return out;
}

double transmission(const EnsembleSpec& spec, double absorption) {
  require(absorption >= 0, "absorption", "must be >= 0");
  return std::pow(10.0, -spec.od_background * absorption);
}

double single_center_transparency(const LambdaParams& base) {
  LambdaParams p = base;
  p.delta_p = 0;
  p.delta_c = 0;
  p.validate();
  const double background = background_absorption(p);
  if (!(background > 0))
    fail(ErrorKind::SingularSystem, "background absorption vanished");
  return 1.0 - probe_absorption(p) / background;
}

}  // namespace nvsim
