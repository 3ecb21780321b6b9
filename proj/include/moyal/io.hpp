#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "moyal/evolve.hpp"
#include "moyal/quad.hpp"
#include "moyal/spin_ops.hpp"
#include "moyal/wigner.hpp"

namespace moyal {

using json = nlohmann::json;

// Malformed input file; the message names the offending field or position.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"n_spins", "spin_2J", "matrix": [[re, im], ...]} row-major.
json operator_to_json(const SpinOperator& op);
SpinOperator operator_from_json(const json& j);

// {"n_spins", "spin_2J", "max_rank", "entries": [{"jm": [[j, m], ...], "re", "im"}]}
json coeffs_to_json(const WignerCoeffs& w);
WignerCoeffs coeffs_from_json(const json& j);

// [{"t", "coeffs", "max_oracle_dev"?}]
json trajectory_to_json(const Trajectory& tr);

json stratonovich_to_json(const StratonovichReport& rep);

// Parse errors are rethrown as FormatError with line and column.
json parse_json_text(const std::string& text, const std::string& source);
json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Nonzero Z, U, Q and Lambda up to rank max_j as CSV "name,j1,j2,L,re,im".
std::string coefficient_table_csv(int max_j, HalfInt J);

}  // namespace moyal
