#pragma once

// Subcommand drivers. Each returns a complete CSV document: `# key = value`
// metadata lines (the echoed configuration, then derived results) followed by
// a header row and data rows.

#include <string>
#include <string_view>

#include "nvsim/config.hpp"

namespace nvsim {

enum class Experiment { Levels, Eit, Ndfwm, Saturation, Gates };

Experiment parse_experiment(std::string_view name);
std::string_view to_string(Experiment kind);

std::string run_experiment(const RunConfig& cfg, Experiment kind);

}  // namespace nvsim
