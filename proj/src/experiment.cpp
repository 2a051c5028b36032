#include "nvsim/experiment.hpp"

#include <sstream>

#include "nvsim/error.hpp"

namespace nvsim {
namespace {

class CsvWriter {
 public:
  CsvWriter(const RunConfig& cfg, Experiment kind) {
    out_ << "# nvsim " << to_string(kind) << "\n";
    for (const auto& line : echo_config(cfg)) out_ << "# " << line << "\n";
  }

  void meta(const std::string& key, double value) {
    out_ << "# result." << key << " = " << format_number(value) << "\n";
  }

  void header(std::initializer_list<std::string_view> columns) {
    bool first = true;
    for (auto c : columns) {
      out_ << (first ? "" : ",") << c;
      first = false;
    }
    out_ << "\n";
  }

  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      out_ << (first ? "" : ",") << format_number(v);
      first = false;
    }
    out_ << "\n";
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string run_levels(const RunConfig& cfg) {
  CsvWriter csv(cfg, Experiment::Levels);
  const double target = raman_center_frequency(cfg.freq_plan);
  try {
    csv.meta("raman_target_MHz", target);
    csv.meta("field_for_target_G", field_for_splitting(cfg.spin, target, cfg.levels.b_start,
                                                       cfg.levels.b_stop));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRoot) throw;
  }
  csv.header({"B_gauss", "E0_MHz", "E1_MHz", "E2_MHz", "mixing_fraction"});
  for (double b : linspace(cfg.levels.b_start, cfg.levels.b_stop, cfg.levels.b_points)) {
    const auto p = cfg.spin.with_field(b);
    const auto levels = ground_levels(p);
    csv.row({b, levels.energies(0), levels.energies(1), levels.energies(2),
             mixing_fraction(p)});
  }
  return csv.str();
}

std::string run_eit(const RunConfig& cfg) {
  CsvWriter csv(cfg, Experiment::Eit);
  const auto scan = eit_scan(cfg.ensemble, cfg.lambda, cfg.scan.start, cfg.scan.stop,
                             cfg.scan.points, cfg.workers);
  Lineshape ls{"delta_MHz", scan.delta, {}};
  for (double a : scan.absorption) ls.y.push_back(1 - a);
  try {
    const auto width = fwhm(ls);
    csv.meta("contrast", width.peak_y);
    csv.meta("fwhm_MHz", width.fwhm);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoPeak && e.kind() != ErrorKind::NoCrossing) throw;
  }
  csv.meta("single_center_transparency", single_center_transparency(cfg.lambda));
  csv.header({"delta_MHz", "absorption_norm", "transparency_frac", "transmission"});
  for (std::size_t i = 0; i < scan.delta.size(); ++i)
    csv.row({scan.delta[i], scan.absorption[i], 1 - scan.absorption[i],
             transmission(cfg.ensemble, scan.absorption[i])});
  return csv.str();
}

LambdaParams beam_params(const RunConfig& cfg) {
  return with_beam_rabi(cfg.lambda, cfg.calibration, cfg.beams);
}

double resolve_eta0(const RunConfig& cfg) {
  if (cfg.ndfwm.eta0 > 0) return cfg.ndfwm.eta0;
  return calibrate_eta0(cfg.ensemble, beam_params(cfg), cfg.geometry, cfg.freq_plan,
                        cfg.ndfwm.target_efficiency, cfg.workers);
}

std::string run_ndfwm(const RunConfig& cfg) {
  CsvWriter csv(cfg, Experiment::Ndfwm);
  const double eta0 = resolve_eta0(cfg);
  const auto result = ndfwm_lineshape(cfg.ensemble, beam_params(cfg), cfg.geometry,
                                      cfg.freq_plan, cfg.scan.start, cfg.scan.stop,
                                      cfg.scan.points, eta0, cfg.workers);
  csv.meta("eta0", eta0);
  csv.meta("delta_k", result.delta_k);
  csv.meta("pm_factor", result.pm_factor);
  csv.meta("peak_efficiency", result.peak_efficiency);
  csv.meta("fwhm_MHz", result.fwhm);
  csv.header({"delta_MHz", "efficiency"});
  for (std::size_t i = 0; i < result.lineshape.size(); ++i)
    csv.row({result.lineshape.x[i], result.lineshape.y[i]});
  return csv.str();
}

std::string run_saturation(const RunConfig& cfg) {
  CsvWriter csv(cfg, Experiment::Saturation);
  const NdfwmSetup setup{cfg.geometry, cfg.freq_plan, resolve_eta0(cfg)};
  const auto& s = cfg.saturation;
  const auto points =
      simulate_saturation_sweep(cfg.ensemble, cfg.lambda, cfg.calibration, cfg.beams, setup,
                                s.beam, s.intensities, s.amplitude, cfg.workers);
  const auto fit = fit_saturation(points, s.model);
  csv.meta("eta0", setup.eta0);
  csv.meta("a_max", fit.a_max);
  csv.meta("i_sat", fit.i_sat);
  csv.meta("residual_rms", fit.residual_rms);
  csv.header({"intensity_Wcm2", "amplitude"});
  for (const auto& p : points) csv.row({p.intensity, p.amplitude});
  return csv.str();
}

std::string run_gates(const RunConfig& cfg) {
  CsvWriter csv(cfg, Experiment::Gates);
  csv.header({"rabi_MHz", "t2_us", "n_gates"});
  csv.row({cfg.gates.rabi, cfg.gates.t2, cfg.gates.n_gates()});
  return csv.str();
}

}  // namespace

Experiment parse_experiment(std::string_view name) {
  if (name == "levels") return Experiment::Levels;
  if (name == "eit") return Experiment::Eit;
  if (name == "ndfwm") return Experiment::Ndfwm;
  if (name == "saturation") return Experiment::Saturation;
  if (name == "gates") return Experiment::Gates;
  fail(ErrorKind::ParseError, "unknown subcommand " + std::string(name));
}

std::string_view to_string(Experiment kind) {
  switch (kind) {
    case Experiment::Levels: return "levels";
    case Experiment::Eit: return "eit";
    case Experiment::Ndfwm: return "ndfwm";
    case Experiment::Saturation: return "saturation";
    case Experiment::Gates: return "gates";
  }
  return "?";
}

std::string run_experiment(const RunConfig& cfg, Experiment kind) {
  cfg.validate();
  switch (kind) {
    case Experiment::Levels: return run_levels(cfg);
    case Experiment::Eit: return run_eit(cfg);
    case Experiment::Ndfwm: return run_ndfwm(cfg);
    case Experiment::Saturation: return run_saturation(cfg);
    case Experiment::Gates: return run_gates(cfg);
  }
  return {};
}

}  // namespace nvsim
