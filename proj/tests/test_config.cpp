#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "nvsim/config.hpp"
#include "nvsim/error.hpp"
#include "nvsim/experiment.hpp"

namespace nvsim {
namespace {

ErrorKind kind_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::NoRoot;
}

std::string message_of(std::string_view text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(ParseConfig, EmptyDocumentGivesDefaults) {
  const RunConfig cfg = parse_config("");
  EXPECT_EQ(echo_config(cfg), echo_config(RunConfig{}));
  EXPECT_EQ(cfg.workers, 1);
  EXPECT_EQ(cfg.scan.points, 81);
  EXPECT_EQ(cfg.lambda.omega_c, 160);
}

TEST(ParseConfig, Override) {
  const RunConfig cfg = parse_config("[ensemble]\nw_resonant = 0.25\n");
  EXPECT_EQ(cfg.ensemble.w_resonant, 0.25);
  const RunConfig other = parse_config(
      "# header comment\nworkers = 3\n[lambda]\n  gamma_s = 0.5   # trailing\n"
      "[ensemble]\nw_resonant = 0.4\nw_background = 0.6\n");
  EXPECT_EQ(other.workers, 3);
  EXPECT_EQ(other.lambda.gamma_s, 0.5);
  EXPECT_EQ(other.ensemble.w_background, 0.6);
  EXPECT_EQ(other.lambda.omega_c, 160);
}

TEST(ParseConfig, InvariantViolation) {
  EXPECT_EQ(kind_of("[ensemble]\nw_resonant = 1.5\n"), ErrorKind::InvariantViolation);
  EXPECT_NE(message_of("[ensemble]\nw_resonant = 1.5\n").find("w_resonant"),
            std::string::npos);
  EXPECT_EQ(kind_of("[scan]\nstart = 5\nstop = 1\n"), ErrorKind::InvariantViolation);
  EXPECT_EQ(kind_of("[scan]\npoints = 10\n"), ErrorKind::InvariantViolation);
  EXPECT_EQ(kind_of("workers = 0\n"), ErrorKind::InvariantViolation);
  EXPECT_EQ(kind_of("[ensemble]\nopt_points = 800\n"), ErrorKind::InvariantViolation);
}

TEST(ParseConfig, UnknownKeysAreErrors) {
  EXPECT_EQ(kind_of("[lambda]\ngama_s = 1\n"), ErrorKind::UnknownKey);
  EXPECT_NE(message_of("[lambda]\ngama_s = 1\n").find("lambda.gama_s"), std::string::npos);
  EXPECT_EQ(kind_of("[lamda]\n"), ErrorKind::UnknownKey);
  EXPECT_EQ(kind_of("omega_c = 3\n"), ErrorKind::UnknownKey);
}

TEST(ParseConfig, ParseErrorsCarryLineNumbers) {
  EXPECT_EQ(kind_of("[lambda]\n\nomega_c 160\n"), ErrorKind::ParseError);
  EXPECT_NE(message_of("[lambda]\n\nomega_c 160\n").find("line 3"), std::string::npos);
  EXPECT_EQ(kind_of("[lambda]\nomega_c = fast\n"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of("[lambda]\nomega_c = 1.0.0\n"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of("[scan]\npoints = 81.5\n"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of("[lambda\n"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of("[saturation]\nmodel = cubic\n"), ErrorKind::ParseError);
}

TEST(ParseConfig, SaturationSettings) {
  const RunConfig cfg = parse_config(
      "[saturation]\nbeam = R2\nmodel = exponential\namplitude = efficiency\n"
      "intensities = 1, 2, 4, 8\n");
  EXPECT_EQ(cfg.saturation.beam, SweepBeam::R2);
  EXPECT_EQ(cfg.saturation.model, SaturationModel::Exponential);
  EXPECT_EQ(cfg.saturation.amplitude, AmplitudeConvention::Efficiency);
  EXPECT_EQ(cfg.saturation.intensities, (std::vector<double>{1, 2, 4, 8}));
  EXPECT_EQ(kind_of("[saturation]\nintensities = 4, 2\n"), ErrorKind::InvariantViolation);
}

TEST(EchoConfig, EveryFieldOnceAndRoundTrips) {
  RunConfig cfg;
  cfg.lambda.gamma_s = 0.123456789;
  cfg.saturation.beam = SweepBeam::P;
  const auto echo = echo_config(cfg);

  std::map<std::string, int> seen;
  std::string ini;
  std::string section;
  for (const auto& line : echo) {
    const auto eq = line.find(" = ");
    ASSERT_NE(eq, std::string::npos);
    const std::string name = line.substr(0, eq);
    ++seen[name];
    const auto dot = name.find('.');
    ASSERT_NE(dot, std::string::npos) << name;
    if (name.substr(0, dot) != section) {
      section = name.substr(0, dot);
      ini += "[" + section + "]\n";
    }
    ini += name.substr(dot + 1) + " = " + line.substr(eq + 3) + "\n";
  }
  for (const auto& [name, count] : seen) EXPECT_EQ(count, 1) << name;
  EXPECT_EQ(seen.size(), 50u);
  EXPECT_EQ(echo_config(parse_config(ini)), echo);
}

TEST(FormatNumber, NineSignificantDigits) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3), "0.333333333");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1600), "1600");
  EXPECT_EQ(format_number(1.5e-12), "1.5e-12");
}

TEST(RunExperiment, Gates) {
  RunConfig cfg;
  const auto out = lines(run_experiment(cfg, Experiment::Gates));
  ASSERT_GE(out.size(), 2u);
  EXPECT_EQ(out[out.size() - 2], "rabi_MHz,t2_us,n_gates");
  EXPECT_EQ(out.back(), "160,10,1600");
  EXPECT_GT(cfg.gates.n_gates(), 1000);

  cfg.gates.rabi = 0;
  EXPECT_EQ(lines(run_experiment(cfg, Experiment::Gates)).back(), "0,10,0");
}

TEST(RunExperiment, MetadataEchoesConfiguration) {
  RunConfig cfg;
  cfg.levels.b_points = 5;
  const std::string csv = run_experiment(cfg, Experiment::Levels);
  for (const auto& line : echo_config(cfg))
    EXPECT_NE(csv.find("# " + line + "\n"), std::string::npos) << line;
  EXPECT_EQ(csv.find("workers"), std::string::npos);
}

TEST(RunExperiment, LevelsSchema) {
  RunConfig cfg;
  cfg.levels.b_points = 11;
  cfg.spin.mix_eps = 0;
  const auto out = lines(run_experiment(cfg, Experiment::Levels));
  std::size_t header = 0;
  while (header < out.size() && out[header].starts_with("#")) ++header;
  ASSERT_LT(header, out.size());
  EXPECT_EQ(out[header], "B_gauss,E0_MHz,E1_MHz,E2_MHz,mixing_fraction");
  EXPECT_EQ(out.size() - header - 1, 11u);
  EXPECT_EQ(out[header + 1], "0,0,2870,2870,0");
}

TEST(RunExperiment, CoarseNdfwmIsWorkerIndependent) {
  RunConfig cfg;
  cfg.ensemble.opt_points = 101;
  cfg.ensemble.spin_points = 41;
  cfg.scan.points = 21;
  const std::string one = run_experiment(cfg, Experiment::Ndfwm);
  cfg.workers = 4;
  EXPECT_EQ(run_experiment(cfg, Experiment::Ndfwm), one);
}

TEST(RunExperiment, Names) {
  for (auto k : {Experiment::Levels, Experiment::Eit, Experiment::Ndfwm,
                 Experiment::Saturation, Experiment::Gates})
    EXPECT_EQ(parse_experiment(to_string(k)), k);
  EXPECT_THROW(parse_experiment("fig5"), Error);
}

}  // namespace
}  // namespace nvsim
