// moyal-spin: command-line front end for the phase-space spin library.

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "moyal/evolve.hpp"
#include "moyal/expr.hpp"
#include "moyal/io.hpp"
#include "moyal/parallel.hpp"
#include "moyal/quad.hpp"
#include "moyal/scenario.hpp"
#include "moyal/star.hpp"
#include "moyal/surface.hpp"

namespace {

using namespace moyal;

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

SphereAngles parse_angles(const std::string& list) {
  std::vector<double> v;
  std::stringstream ss(list);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      v.push_back(parse_real_expr(tok));
    } catch (const ParseError& e) {
      throw FormatError("--angles: " + std::string(e.what()));
    }
  }
  if (v.empty() || v.size() % 2) throw FormatError("--angles needs theta,phi pairs");
  SphereAngles a;
  for (std::size_t i = 0; i < v.size(); i += 2) a.push_back({v[i], v[i + 1]});
  return a;
}

std::string matrix_text(const SpinOperator& op) {
  std::ostringstream out;
  out << std::setprecision(6);
  for (Eigen::Index r = 0; r < op.dim(); ++r) {
    for (Eigen::Index c = 0; c < op.dim(); ++c) {
      const cplx v = op.matrix()(r, c);
      out << (c ? "  " : "") << std::setw(10) << v.real() << (v.imag() < 0 ? "-" : "+") << std::setw(9)
          << std::abs(v.imag()) << "i";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();

  CLI::App app{"Phase-space representation and dynamics of coupled spins"};
  app.name("moyal-spin");
  app.require_subcommand(1);

  // scenario
  auto* scen = app.add_subcommand("scenario", "Run a built-in or file-based scenario");
  std::string scen_name, scen_out;
  std::uint64_t scen_seed = 1;
  bool scen_list = false;
  scen->add_option("name", scen_name, "Built-in name or path to a scenario JSON file");
  scen->add_option("--out", scen_out, "Output directory");
  scen->add_option("--seed", scen_seed, "Seed for spot-check angles");
  scen->add_flag("--list", scen_list, "List built-in scenarios");

  // wigner transform / eval, and the top-level transform alias
  auto* wig = app.add_subcommand("wigner", "Wigner transform and evaluation");
  wig->require_subcommand(1);
  std::string op_file, coeff_file, out_file, angles;
  auto* wtr = wig->add_subcommand("transform", "Operator JSON to coefficient JSON");
  wtr->add_option("--op", op_file, "Operator JSON")->required();
  wtr->add_option("--out", out_file, "Output file (default stdout)");
  auto* wev = wig->add_subcommand("eval", "Evaluate a coefficient set at angles");
  wev->add_option("--coeffs", coeff_file, "Coefficient JSON")->required();
  wev->add_option("--angles", angles, "theta1,phi1,theta2,phi2,...")->required();
  auto* tr = app.add_subcommand("transform", "Same as 'wigner transform'");
  tr->add_option("--op", op_file, "Operator JSON")->required();
  tr->add_option("--out", out_file, "Output file (default stdout)");

  // star
  auto* star = app.add_subcommand("star", "Star product of two coefficient sets");
  std::string a_file, b_file;
  bool prestar = false;
  star->add_option("--a", a_file, "Left coefficient JSON")->required();
  star->add_option("--b", b_file, "Right coefficient JSON")->required();
  star->add_flag("--prestar", prestar, "Skip the rank truncation");
  star->add_option("--out", out_file, "Output file (default stdout)");

  // evolve
  auto* ev = app.add_subcommand("evolve", "Propagate a scenario over a time grid");
  std::string ev_scenario, ev_times, ev_emit;
  bool ev_oracle = false;
  double ev_tol = 1e-9;
  ev->add_option("--scenario", ev_scenario, "Scenario name or JSON file")->required();
  ev->add_option("--times", ev_times, "start:step:stop (default: the scenario's times)");
  ev->add_option("--emit", ev_emit, "Trajectory JSON output (default stdout)");
  ev->add_flag("--oracle", ev_oracle, "Compare against matrix propagation");
  ev->add_option("--tol", ev_tol, "Oracle tolerance");

  // sample
  auto* smp = app.add_subcommand("sample", "Sample one sphere of a coefficient set");
  int smp_slot = 1, smp_res = 32;
  std::string smp_format = "csv";
  smp->add_option("--coeffs", coeff_file, "Coefficient JSON")->required();
  smp->add_option("--slot", smp_slot, "Sphere label, from 1");
  smp->add_option("--resolution", smp_res, "Lattice points per axis");
  smp->add_option("--format", smp_format, "csv, json or obj")->check(CLI::IsMember({"csv", "json", "obj"}));
  smp->add_option("--angles", angles, "Fixed theta,phi for the other spheres (default: integrate them out)");
  smp->add_option("--out", out_file, "Output file (default stdout)");

  // validate
  auto* val = app.add_subcommand("validate", "Check the Stratonovich postulates on random operators");
  int val_spins = 1, val_trials = 20, val_2J = 1;
  std::uint64_t val_seed = 1;
  val->add_option("--spins", val_spins, "Number of spins")->check(CLI::Range(1, 4));
  val->add_option("--trials", val_trials, "Random trials")->check(CLI::PositiveNumber);
  val->add_option("--seed", val_seed, "Seed");
  val->add_option("--spin-2J", val_2J, "Twice the spin number")->check(CLI::Range(1, 9));

  // coeffs dump
  auto* cf = app.add_subcommand("coeffs", "Angular coefficient tables");
  cf->require_subcommand(1);
  auto* dump = cf->add_subcommand("dump", "CSV of nonzero Z, U, Q, Lambda");
  int max_j = 2, dump_2J = 1;
  dump->add_option("--max-j", max_j, "Largest input rank")->check(CLI::Range(0, 6));
  dump->add_option("--spin-2J", dump_2J, "Twice the spin number for Q")->check(CLI::Range(1, 9));
  dump->add_option("--out", out_file, "Output file (default stdout)");

  // op show / decompose
  auto* op = app.add_subcommand("op", "Inspect an operator JSON");
  op->require_subcommand(1);
  auto* show = op->add_subcommand("show", "Print the matrix");
  show->add_option("--op", op_file, "Operator JSON")->required();
  auto* dec = op->add_subcommand("decompose", "Tensor-operator expansion");
  dec->add_option("--op", op_file, "Operator JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*scen) {
      if (scen_list) {
        for (const auto& n : builtin_scenario_names()) std::cout << n << '\n';
        return 0;
      }
      if (scen_name.empty()) throw FormatError("scenario name or file required");
      const ScenarioResult r = run_scenario(load_scenario(scen_name), scen_out, scen_seed);
      std::cout << r.summary.dump(1) << '\n';
    } else if (*wtr || *tr) {
      output(out_file, coeffs_to_json(wigner_transform(operator_from_json(read_json_file(op_file)))).dump(1) + "\n");
    } else if (*wev) {
      const WignerCoeffs w = coeffs_from_json(read_json_file(coeff_file));
      const cplx v = evaluate(w, parse_angles(angles));
      std::cout << std::setprecision(17) << json{{"re", v.real()}, {"im", v.imag()}}.dump() << '\n';
    } else if (*star) {
      const WignerCoeffs a = coeffs_from_json(read_json_file(a_file));
      const WignerCoeffs b = coeffs_from_json(read_json_file(b_file));
      const WignerCoeffs r = prestar ? prestar_multi(a, b) : star_multi(a, b);
      output(out_file, coeffs_to_json(r).dump(1) + "\n");
    } else if (*ev) {
      Scenario s = load_scenario(ev_scenario);
      if (!ev_times.empty()) s.times = parse_time_range(ev_times);
      s.outputs.clear();
      if (ev_oracle) s.outputs.push_back({"oracle", json::object()});
      const ScenarioResult r = run_scenario(s, "", 1);
      output(ev_emit, trajectory_to_json(r.trajectory).dump(1) + "\n");
      if (ev_oracle && !(r.max_oracle_deviation <= ev_tol))
        throw ValidationFailure("oracle deviation " + std::to_string(r.max_oracle_deviation) + " exceeds tolerance");
    } else if (*smp) {
      const WignerCoeffs w = coeffs_from_json(read_json_file(coeff_file));
      if (smp_slot < 1 || smp_slot > w.n_spins()) throw FormatError("--slot out of range");
      const SphereAngles others = angles.empty() ? SphereAngles{} : parse_angles(angles);
      const SampledSurface surf = sample_surface(w, smp_slot - 1, smp_res, others,
                                                 angles.empty() ? SurfaceMode::marginal : SurfaceMode::fixed);
      if (smp_format == "csv")
        output(out_file, surface_csv(surf));
      else if (smp_format == "json")
        output(out_file, surface_json(surf).dump(1) + "\n");
      else
        output(out_file, surface_obj(surf));
    } else if (*val) {
      const StratonovichReport rep = validate_stratonovich(val_spins, val_trials, val_seed, HalfInt{val_2J});
      std::cout << stratonovich_to_json(rep).dump(1) << '\n';
      if (!rep.passed()) return kExitValidation;
    } else if (*dump) {
      output(out_file, coefficient_table_csv(max_j, HalfInt{dump_2J}));
    } else if (*show) {
      const SpinOperator o = operator_from_json(read_json_file(op_file));
      std::cout << "spins " << o.n_spins() << ", J = " << o.spin_J().str() << ", dim " << o.dim() << "\n"
                << matrix_text(o) << "hermitian: " << (o.is_hermitian() ? "yes" : "no") << "\n"
                << "trace: " << o.trace().real() << (o.trace().imag() < 0 ? " - " : " + ")
                << std::abs(o.trace().imag()) << "i\n";
    } else if (*dec) {
      const SpinOperator o = operator_from_json(read_json_file(op_file));
      json terms = json::array();
      for (const auto& [idx, c] : decompose(o)) {
        json jm = json::array();
        for (const auto& x : idx) jm.push_back({x.j, x.m});
        terms.push_back({{"jm", jm}, {"re", c.real()}, {"im", c.imag()}});
      }
      std::cout << terms.dump(1) << '\n';
    }
  } catch (const ValidationFailure& e) {
    std::cerr << "moyal-spin: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "moyal-spin: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
