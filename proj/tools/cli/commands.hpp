#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "table.hpp"

namespace asymcav::cli {

struct CommandOutput {
  std::vector<SweepResult> tables;  // tables[0] is the main output
  std::vector<std::string> notes;
};

const std::vector<std::string>& command_names();

// `cfg` must already be resolved for `command`.
CommandOutput run_command(const std::string& command, const RunConfig& cfg);

std::vector<double> sweep_values(const SweepConfig& sweep);

}  // namespace asymcav::cli
