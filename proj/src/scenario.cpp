#include "moyal/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>

#include "moyal/expr.hpp"
#include "moyal/random.hpp"
#include "moyal/surface.hpp"

namespace moyal {
namespace {

namespace fs = std::filesystem;

double real_value(const json& v, const std::string& where) {
  try {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_real_expr(v.get<std::string>());
  } catch (const ParseError& e) {
    throw FormatError("field '" + where + "': " + e.what());
  }
  throw FormatError("field '" + where + "' must be a number or a numeric expression");
}

SpinOperator operator_field(const json& j, const std::string& name, int n, HalfInt J, const std::string& base) {
  if (!j.contains(name)) throw FormatError("missing field '" + name + "'");
  const json& v = j.at(name);
  try {
    if (v.is_string()) return parse_operator_expr(v.get<std::string>(), n, J);
    if (!v.is_object()) throw FormatError("field '" + name + "' must be an expression or an object");
    SpinOperator op = SpinOperator::zero(n, J);
    if (v.contains("matrix_file")) {
      const fs::path p = fs::path(base) / v.at("matrix_file").get<std::string>();
      op = operator_from_json(read_json_file(p.string()));
    } else if (v.contains("matrix")) {
      op = operator_from_json(v);
    } else {
      for (const auto& [expr, coeff] : v.items())
        op = op + parse_operator_expr(expr, n, J) * real_value(coeff, name + "." + expr);
      return op;
    }
    if (op.n_spins() != n || op.spin_J() != J) throw FormatError("field '" + name + "': system shape mismatch");
    return op;
  } catch (const ParseError& e) {
    throw FormatError("field '" + name + "': " + e.what());
  }
}

std::string fmt_index(std::size_t i) {
  std::ostringstream s;
  s << i;
  return s.str();
}

std::size_t time_index(const json& params, std::size_t count) {
  if (!params.contains("time_index")) return count - 1;
  const long long i = params.at("time_index").get<long long>();
  const long long k = i < 0 ? static_cast<long long>(count) + i : i;
  if (k < 0 || k >= static_cast<long long>(count)) throw FormatError("field 'time_index' out of range");
  return static_cast<std::size_t>(k);
}

const std::map<std::string, std::string>& builtin_sources() {
  static const std::map<std::string, std::string> s = {
      {"single-precession", R"({
  "name": "single-precession",
  "n_spins": 1,
  "hamiltonian": {"I1z": 1.0},
  "initial_state": "I1x",
  "times": {"start": 0, "stop": "2*pi", "step": "pi/10"},
  "outputs": [
    {"kind": "coefficients"},
    {"kind": "oracle"},
    {"kind": "surface", "params": {"slot": 1, "resolution": 32, "format": "csv", "time_index": 5}}
  ]
})"},
      {"two-spin-zz", R"({
  "name": "two-spin-zz",
  "n_spins": 2,
  "hamiltonian": {"2*I1z*I2z": "pi"},
  "initial_state": "I1x",
  "times": {"start": 0, "stop": 0.5, "step": 0.025},
  "outputs": [
    {"kind": "coefficients"},
    {"kind": "oracle"},
    {"kind": "props"},
    {"kind": "surface", "params": {"slot": 1, "resolution": 24, "format": "obj", "mode": "fixed", "angles": [[0, 0]]}}
  ]
})"},
      {"cnot", R"({
  "name": "cnot",
  "n_spins": 2,
  "hamiltonian": "I1b*I2x + 0.5*I1z",
  "initial_state": "I1b*I2a",
  "times": {"start": 0, "stop": "pi", "step": "pi/20"},
  "outputs": [
    {"kind": "coefficients"},
    {"kind": "oracle"},
    {"kind": "props"}
  ]
})"},
      {"cnot-bell", R"({
  "name": "cnot-bell",
  "n_spins": 2,
  "hamiltonian": "I1b*I2x + 0.5*I1z",
  "initial_state": "(0.5*Id + I1x)*I2a",
  "times": {"start": 0, "stop": "pi", "step": "pi/20"},
  "outputs": [
    {"kind": "coefficients"},
    {"kind": "oracle"},
    {"kind": "entropy", "params": {"subsystem": [1]}},
    {"kind": "props"}
  ]
})"},
      {"three-spin", R"({
  "name": "three-spin",
  "n_spins": 3,
  "hamiltonian": {"2*I1z*I2z + 2*I2z*I3z": "pi"},
  "initial_state": "I2x",
  "times": {"start": 0, "stop": 0.5, "step": 0.025},
  "outputs": [
    {"kind": "coefficients"},
    {"kind": "oracle"},
    {"kind": "props"}
  ]
})"},
      {"coherence", R"({
  "name": "coherence",
  "n_spins": 1,
  "hamiltonian": {"I1z": 1.0},
  "initial_state": "I1m",
  "times": {"start": 0, "stop": "2*pi", "step": "pi/10"},
  "outputs": [
    {"kind": "coefficients"},
    {"kind": "oracle"}
  ]
})"},
  };
  return s;
}

}  // namespace

std::vector<double> parse_time_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw FormatError("time range must be start:step:stop");
  try {
    return time_grid(parse_real_expr(parts[0]), parse_real_expr(parts[2]), parse_real_expr(parts[1]));
  } catch (const ParseError& e) {
    throw FormatError(std::string("time range: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("time range: ") + e.what());
  }
}

Scenario parse_scenario(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw FormatError("scenario must be a JSON object");
  Scenario s;
  s.name = j.value("name", std::string("scenario"));
  if (!j.contains("n_spins") || !j.at("n_spins").is_number_integer()) throw FormatError("missing field 'n_spins'");
  s.n_spins = j.at("n_spins").get<int>();
  if (s.n_spins < 1 || s.n_spins > kMaxSpheres) throw FormatError("field 'n_spins' out of range");
  if (j.contains("spin_2J")) {
    if (!j.at("spin_2J").is_number_integer() || j.at("spin_2J").get<int>() < 1)
      throw FormatError("field 'spin_2J' must be a positive integer");
    s.J = HalfInt{j.at("spin_2J").get<int>()};
  }
  s.hamiltonian = operator_field(j, "hamiltonian", s.n_spins, s.J, base_dir);
  s.initial_state = operator_field(j, "initial_state", s.n_spins, s.J, base_dir);
  if (!s.hamiltonian.is_hermitian()) throw FormatError("field 'hamiltonian' is not hermitian");

  if (!j.contains("times")) throw FormatError("missing field 'times'");
  const json& t = j.at("times");
  if (t.is_array()) {
    for (std::size_t i = 0; i < t.size(); ++i) s.times.push_back(real_value(t[i], "times[" + fmt_index(i) + "]"));
  } else if (t.is_object()) {
    for (const char* k : {"start", "stop", "step"})
      if (!t.contains(k)) throw FormatError(std::string("missing field 'times.") + k + "'");
    try {
      s.times = time_grid(real_value(t.at("start"), "times.start"), real_value(t.at("stop"), "times.stop"),
                          real_value(t.at("step"), "times.step"));
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("field 'times': ") + e.what());
    }
  } else {
    throw FormatError("field 'times' must be an array or {start, stop, step}");
  }
  for (std::size_t i = 1; i < s.times.size(); ++i)
    if (!(s.times[i] > s.times[i - 1])) throw FormatError("field 'times' must be strictly increasing");
  if (s.times.empty()) throw FormatError("field 'times' is empty");

  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    if (!o.is_array()) throw FormatError("field 'outputs' must be an array");
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (!o[i].is_object() || !o[i].contains("kind") || !o[i].at("kind").is_string())
        throw FormatError("field 'outputs[" + fmt_index(i) + "].kind' missing");
      OutputSpec out{o[i].at("kind").get<std::string>(), o[i].value("params", json::object())};
      static const std::vector<std::string> kinds = {"coefficients", "oracle", "surface", "entropy", "props"};
      if (std::find(kinds.begin(), kinds.end(), out.kind) == kinds.end())
        throw FormatError("field 'outputs[" + fmt_index(i) + "].kind': unknown kind '" + out.kind + "'");
      s.outputs.push_back(std::move(out));
    }
  }
  return s;
}

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : builtin_sources()) names.push_back(k);
  return names;
}

json builtin_scenario(const std::string& name) {
  const auto& s = builtin_sources();
  const auto it = s.find(name);
  if (it == s.end()) throw FormatError("unknown scenario '" + name + "'");
  return json::parse(it->second);
}

Scenario load_scenario(const std::string& name_or_path) {
  if (builtin_sources().count(name_or_path)) return parse_scenario(builtin_scenario(name_or_path));
  const fs::path p(name_or_path);
  if (!fs::exists(p)) throw FormatError("no built-in scenario or file named '" + name_or_path + "'");
  return parse_scenario(read_json_file(p.string()), p.parent_path().empty() ? "." : p.parent_path().string());
}

ScenarioResult run_scenario(const Scenario& s, const std::string& out_dir, std::uint64_t seed) {
  if (s.J != kHalf) throw std::invalid_argument("scenario evolution requires spin 1/2");
  ScenarioResult res;
  const WignerCoeffs W_H = wigner_transform(s.hamiltonian);
  res.trajectory = propagate(build_generator(W_H), wigner_transform(s.initial_state), s.times);
  Trajectory& tr = res.trajectory;

  bool want_oracle = false;
  for (const auto& o : s.outputs) want_oracle |= o.kind == "oracle";
  json oracle_report;
  if (want_oracle) {
    Rng rng(seed);
    std::vector<double> dev;
    double spot = 0.0;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      const WignerCoeffs exact = wigner_transform(evolve_exact(s.hamiltonian, s.initial_state, s.times[i]));
      dev.push_back(max_abs_diff(tr.states[i], exact));
      for (int p = 0; p < 4; ++p) {
        const SphereAngles at = random_angles(s.n_spins, rng);
        spot = std::max(spot, std::abs(evaluate(tr.states[i], at) - evaluate(exact, at)));
      }
    }
    res.max_oracle_deviation = *std::max_element(dev.begin(), dev.end());
    tr.oracle_deviation = dev;
    oracle_report = {{"times", s.times},
                     {"deviation", dev},
                     {"max_deviation", res.max_oracle_deviation},
                     {"max_pointwise_deviation", spot},
                     {"seed", seed}};
  }

  const bool write = !out_dir.empty();
  if (write) fs::create_directories(out_dir);
  auto emit = [&](const std::string& file, const std::string& text) {
    if (!write) return;
    const std::string path = (fs::path(out_dir) / file).string();
    write_text_file(path, text);
    res.files.push_back(file);
  };

  for (const auto& o : s.outputs) {
    const json& p = o.params;
    if (o.kind == "coefficients") {
      emit(s.name + "_trajectory.json", trajectory_to_json(tr).dump(1) + "\n");
    } else if (o.kind == "oracle") {
      emit(s.name + "_oracle.json", oracle_report.dump(1) + "\n");
    } else if (o.kind == "surface") {
      const int slot = p.value("slot", 1);
      const int resolution = p.value("resolution", 32);
      const std::string format = p.value("format", std::string("csv"));
      const std::string mode = p.value("mode", std::string("marginal"));
      const std::size_t ti = time_index(p, tr.times.size());
      SphereAngles others;
      if (mode == "fixed") {
        for (const auto& a : p.value("angles", json::array())) {
          if (!a.is_array() || a.size() != 2) throw FormatError("field 'angles' must hold [theta, phi] pairs");
          others.push_back({a[0].get<double>(), a[1].get<double>()});
        }
      } else if (mode != "marginal") {
        throw FormatError("field 'mode' must be 'fixed' or 'marginal'");
      }
      if (slot < 1 || slot > s.n_spins) throw FormatError("field 'slot' out of range");
      const SampledSurface surf = sample_surface(tr.states[ti], slot - 1, resolution, others,
                                                 mode == "fixed" ? SurfaceMode::fixed : SurfaceMode::marginal);
      const std::string stem = s.name + "_surface_slot" + fmt_index(slot) + "_t" + fmt_index(ti);
      if (format == "csv")
        emit(stem + ".csv", surface_csv(surf));
      else if (format == "json")
        emit(stem + ".json", surface_json(surf).dump(1) + "\n");
      else if (format == "obj")
        emit(stem + ".obj", surface_obj(surf));
      else
        throw FormatError("field 'format' must be csv, json or obj");
    } else if (o.kind == "entropy") {
      std::vector<int> keep;
      for (const auto& k : p.value("subsystem", json::array({1}))) keep.push_back(k.get<int>() - 1);
      std::ostringstream csv;
      csv.precision(17);
      csv << "t,entropy\n";
      for (std::size_t i = 0; i < tr.times.size(); ++i)
        csv << tr.times[i] << ',' << entanglement_entropy(inverse_wigner(tr.states[i]), keep) << '\n';
      emit(s.name + "_entropy.csv", csv.str());
    } else if (o.kind == "props") {
      const std::size_t ti = time_index(p, tr.times.size());
      json doc = {{"t", tr.times[ti]}, {"terms", props_to_json(props_decompose(tr.states[ti]))}};
      emit(s.name + "_props.json", doc.dump(1) + "\n");
    }
  }

  res.summary = {{"name", s.name},
                 {"n_spins", s.n_spins},
                 {"spin_2J", s.J.twice},
                 {"n_times", s.times.size()},
                 {"seed", seed},
                 {"files", res.files}};
  if (want_oracle) res.summary["max_oracle_dev"] = res.max_oracle_deviation;
  emit(s.name + "_summary.json", res.summary.dump(1) + "\n");
  return res;
}

}  // namespace moyal
