// nvsim <subcommand> --config <path> --out <path> [--points N] [--workers N]
//
// Exit status: 0 success, 2 configuration error, 3 numeric failure.
// Failures print one line to stderr: "nvsim: error kind=<Kind> msg=<text>".

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nvsim/config.hpp"
#include "nvsim/error.hpp"
#include "nvsim/experiment.hpp"

namespace {

int report(std::string_view kind, std::string message, int code) {
  for (char& c : message)
    if (c == '\n' || c == '\r') c = ' ';
  std::cerr << "nvsim: error kind=" << kind << " msg=" << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NV-center Raman heterodyne and EIT simulator"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  std::optional<int> points;
  std::optional<int> workers;

  for (const char* name : {"levels", "eit", "ndfwm", "saturation", "gates"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "INI configuration file")->required();
    sub->add_option("--out", out_path, "output CSV path (default: output_path from config)");
    sub->add_option("--points", points, "scan points (field points for levels)");
    sub->add_option("--workers", workers, "worker threads");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("ParseError", e.what(), 2);
  }

  try {
    const auto kind = nvsim::parse_experiment(app.get_subcommands().front()->get_name());
    nvsim::RunConfig cfg = nvsim::load_config(config_path);
    if (points) {
      if (kind == nvsim::Experiment::Levels)
        cfg.levels.b_points = *points;
      else
        cfg.scan.points = *points;
    }
    if (workers) cfg.workers = *workers;
    if (!out_path.empty()) cfg.output_path = out_path;
    nvsim::require(!cfg.output_path.empty(), "output_path", "no --out given and none in config");
    cfg.validate();

    const std::string csv = nvsim::run_experiment(cfg, kind);
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) return report("IoError", "cannot write " + cfg.output_path, 3);
    out << csv;
    if (!out.flush()) return report("IoError", "write failed for " + cfg.output_path, 3);
  } catch (const nvsim::Error& e) {
    return report(nvsim::to_string(e.kind()), e.what(), nvsim::is_config_error(e.kind()) ? 2 : 3);
  } catch (const std::exception& e) {
    return report("Internal", e.what(), 3);
  }
  return 0;
}
