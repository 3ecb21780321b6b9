#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moyal/evolve.hpp"
#include "moyal/io.hpp"
#include "moyal/spin_ops.hpp"

namespace moyal {

struct OutputSpec {
  std::string kind;  // coefficients | oracle | surface | entropy | props
  json params;
};

struct Scenario {
  std::string name;
  int n_spins = 1;
  HalfInt J = kHalf;
  SpinOperator hamiltonian = SpinOperator::zero(1);
  SpinOperator initial_state = SpinOperator::zero(1);
  std::vector<double> times;
  std::vector<OutputSpec> outputs;
};

// Operators are an expression string, an object of {expression: real
// coefficient}, {"matrix_file": path} relative to base_dir, or an inline
// operator JSON. Times are {"start", "stop", "step"} or an explicit list.
Scenario parse_scenario(const json& j, const std::string& base_dir = ".");

std::vector<std::string> builtin_scenario_names();
json builtin_scenario(const std::string& name);

// Built-in name or path to a JSON file.
Scenario load_scenario(const std::string& name_or_path);

struct ScenarioResult {
  Trajectory trajectory;
  double max_oracle_deviation = -1.0;  // negative when not compared
  std::vector<std::string> files;
  json summary;
};

// Propagates the scenario and writes the requested outputs into out_dir
// (when non-empty). seed drives the random spot-check angles.
ScenarioResult run_scenario(const Scenario& s, const std::string& out_dir, std::uint64_t seed);

// "start:step:stop"
std::vector<double> parse_time_range(const std::string& text);

}  // namespace moyal
