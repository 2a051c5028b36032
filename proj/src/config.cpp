#include "nvsim/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "nvsim/error.hpp"

namespace nvsim {
namespace {

struct Field {
  std::string section;
  std::string key;
  std::function<void(std::string_view)> set;
  std::function<std::string()> get;

  std::string name() const { return section.empty() ? key : section + "." + key; }
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text) {
  text = trim(text);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument("expected a number, got '" + std::string(text) + "'");
  return value;
}

int parse_int(std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  return value;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t begin = 0;
  while (true) {
    const auto comma = text.find(',', begin);
    out.push_back(parse_double(text.substr(begin, comma - begin)));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return out;
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_number(values[i]);
  }
  return out;
}

template <typename Enum>
Enum parse_choice(std::string_view text,
                  std::initializer_list<std::pair<std::string_view, Enum>> choices) {
  text = trim(text);
  for (const auto& [name, value] : choices)
    if (text == name) return value;
  throw std::invalid_argument("unrecognized choice '" + std::string(text) + "'");
}

Field number(std::string section, std::string key, double& target) {
  return {std::move(section), std::move(key),
          [&target](std::string_view v) { target = parse_double(v); },
          [&target] { return format_number(target); }};
}

Field integer(std::string section, std::string key, int& target) {
  return {std::move(section), std::move(key),
          [&target](std::string_view v) { target = parse_int(v); },
          [&target] { return std::to_string(target); }};
}

std::vector<Field> fields(RunConfig& c) {
  auto& s = c.saturation;
  return {
      number("spin", "zfs_D", c.spin.zfs_D),
      number("spin", "gyro", c.spin.gyro),
      number("spin", "field_B", c.spin.field_B),
      number("spin", "angle_theta", c.spin.angle_theta),
      number("spin", "mix_eps", c.spin.mix_eps),
      number("lambda", "omega_p", c.lambda.omega_p),
      number("lambda", "omega_c", c.lambda.omega_c),
      number("lambda", "delta_p", c.lambda.delta_p),
      number("lambda", "delta_c", c.lambda.delta_c),
      number("lambda", "gamma_opt", c.lambda.gamma_opt),
      number("lambda", "branch_1", c.lambda.branch_1),
      number("lambda", "branch_2", c.lambda.branch_2),
      number("lambda", "gamma_deph_opt", c.lambda.gamma_deph_opt),
      number("lambda", "gamma_s", c.lambda.gamma_s),
      number("lambda", "gamma_pop", c.lambda.gamma_pop),
      number("ensemble", "opt_inhom_fwhm", c.ensemble.opt_inhom_fwhm),
      number("ensemble", "opt_window", c.ensemble.opt_window),
      integer("ensemble", "opt_points", c.ensemble.opt_points),
      number("ensemble", "spin_inhom_fwhm", c.ensemble.spin_inhom_fwhm),
      integer("ensemble", "spin_points", c.ensemble.spin_points),
      number("ensemble", "w_resonant", c.ensemble.w_resonant),
      number("ensemble", "w_background", c.ensemble.w_background),
      number("ensemble", "od_background", c.ensemble.od_background),
      number("calibration", "i_ref", c.calibration.i_ref),
      number("calibration", "omega_ref", c.calibration.omega_ref),
      number("calibration", "r2_dipole_ratio", c.calibration.r2_dipole_ratio),
      number("geometry", "wavelength", c.geometry.wavelength),
      number("geometry", "theta_r1_r2", c.geometry.theta_r1_r2),
      number("geometry", "theta_p_oop", c.geometry.theta_p_oop),
      number("geometry", "sample_length", c.geometry.sample_length),
      number("freq_plan", "shift_r1", c.freq_plan.shift_r1),
      number("freq_plan", "shift_r2", c.freq_plan.shift_r2),
      number("freq_plan", "shift_p", c.freq_plan.shift_p),
      number("scan", "start", c.scan.start),
      number("scan", "stop", c.scan.stop),
      integer("scan", "points", c.scan.points),
      number("levels", "b_start", c.levels.b_start),
      number("levels", "b_stop", c.levels.b_stop),
      integer("levels", "b_points", c.levels.b_points),
      number("beams", "r1", c.beams.r1),
      number("beams", "r2", c.beams.r2),
      number("beams", "p", c.beams.p),
      number("ndfwm", "eta0", c.ndfwm.eta0),
      number("ndfwm", "target_efficiency", c.ndfwm.target_efficiency),
      {"saturation", "beam",
       [&s](std::string_view v) { s.beam = parse_sweep_beam(trim(v)); },
       [&s] { return std::string(to_string(s.beam)); }},
      {"saturation", "model",
       [&s](std::string_view v) {
         s.model = parse_choice<SaturationModel>(
             v, {{"rational", SaturationModel::Rational},
                 {"exponential", SaturationModel::Exponential}});
       },
       [&s] {
         return std::string(s.model == SaturationModel::Rational ? "rational"
                                                                 : "exponential");
       }},
      {"saturation", "amplitude",
       [&s](std::string_view v) {
         s.amplitude = parse_choice<AmplitudeConvention>(
             v, {{"field", AmplitudeConvention::Field},
                 {"efficiency", AmplitudeConvention::Efficiency}});
       },
       [&s] {
         return std::string(s.amplitude == AmplitudeConvention::Field ? "field"
                                                                      : "efficiency");
       }},
      {"saturation", "intensities",
       [&s](std::string_view v) { s.intensities = parse_list(v); },
       [&s] { return format_list(s.intensities); }},
      number("gates", "rabi", c.gates.rabi),
      number("gates", "t2", c.gates.t2),
      integer("", "workers", c.workers),
      {"", "output_path", [&c](std::string_view v) { c.output_path = std::string(trim(v)); },
       [&c] { return c.output_path; }},
  };
}

bool is_execution_setting(const Field& f) {
  return f.section.empty() && (f.key == "workers" || f.key == "output_path");
}

}  // namespace

std::string format_number(double value) {
  if (value == 0) return "0";  // folds -0
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

void RunConfig::validate() const {
  spin.validate();
  lambda.validate();
  ensemble.validate();
  calibration.validate();
  geometry.validate();
  freq_plan.validate();
  beams.validate();
  require(scan.start < scan.stop, "scan.start", "must be below scan.stop");
  require(scan.points >= 11, "scan.points", "must be >= 11");
  require(levels.b_start >= 0 && levels.b_start < levels.b_stop, "levels.b_start",
          "must satisfy 0 <= b_start < b_stop");
  require(levels.b_points >= 2, "levels.b_points", "must be >= 2");
  require(ndfwm.target_efficiency > 0, "ndfwm.target_efficiency", "must be > 0");
  for (std::size_t i = 0; i < saturation.intensities.size(); ++i) {
    require(saturation.intensities[i] > 0, "saturation.intensities", "must be positive");
    if (i > 0)
      require(saturation.intensities[i] > saturation.intensities[i - 1],
              "saturation.intensities", "must be ascending");
  }
  require(gates.rabi >= 0, "gates.rabi", "must be >= 0");
  require(gates.t2 >= 0, "gates.t2", "must be >= 0");
  require(workers >= 1, "workers", "must be >= 1");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  const std::vector<Field> table = fields(cfg);
  std::set<std::string> sections;
  for (const auto& f : table) sections.insert(f.section);

  std::string section;
  int line_number = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const auto end = text.find('\n', begin);
    std::string_view line =
        text.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin);
    begin = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
    ++line_number;
    const std::string where = "line " + std::to_string(line_number) + ": ";

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        fail(ErrorKind::ParseError, where + "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!sections.contains(section))
        fail(ErrorKind::UnknownKey, where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorKind::ParseError, where + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorKind::ParseError, where + "missing key");

    const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) {
      return f.section == section && f.key == key;
    });
    if (it == table.end())
      fail(ErrorKind::UnknownKey,
           where + "unknown key '" + (section.empty() ? key : section + "." + key) + "'");
    try {
      it->set(value);
    } catch (const Error& e) {
      fail(ErrorKind::ParseError, where + it->name() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      fail(ErrorKind::ParseError, where + it->name() + ": " + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    // Bad quadrature orders are still a configuration mistake here.
    if (is_config_error(e.kind())) throw;
    fail(ErrorKind::InvariantViolation, e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::vector<std::string> echo_config(const RunConfig& cfg) {
  RunConfig copy = cfg;
  std::vector<std::string> out;
  for (const auto& f : fields(copy))
    if (!is_execution_setting(f)) out.push_back(f.name() + " = " + f.get());
  return out;
}

}  // namespace nvsim
