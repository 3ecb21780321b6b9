#include "moyal/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "moyal/angular.hpp"

namespace moyal {
namespace {

template <class T>
T field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("field '") + name + "' has the wrong type");
  }
}

cplx pair_value(const json& p, const std::string& where) {
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
    throw FormatError(where + ": expected [re, im]");
  return {p[0].get<double>(), p[1].get<double>()};
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

json operator_to_json(const SpinOperator& op) {
  json m = json::array();
  for (Eigen::Index r = 0; r < op.dim(); ++r)
    for (Eigen::Index c = 0; c < op.dim(); ++c) m.push_back({op.matrix()(r, c).real(), op.matrix()(r, c).imag()});
  return {{"n_spins", op.n_spins()}, {"spin_2J", op.spin_J().twice}, {"matrix", m}};
}

SpinOperator operator_from_json(const json& j) {
  const int n = field<int>(j, "n_spins");
  const int tJ = j.contains("spin_2J") ? field<int>(j, "spin_2J") : 1;
  if (n < 1 || n > kMaxSpheres) throw FormatError("field 'n_spins' out of range");
  if (tJ < 1) throw FormatError("field 'spin_2J' must be positive");
  const json& m = j.contains("matrix") ? j.at("matrix") : json();
  if (!m.is_array()) throw FormatError("missing field 'matrix'");
  Eigen::Index d = 1;
  for (int k = 0; k < n; ++k) d *= tJ + 1;
  if (static_cast<Eigen::Index>(m.size()) != d * d)
    throw FormatError("field 'matrix' must hold " + std::to_string(d * d) + " entries");
  Matrix out(d, d);
  for (Eigen::Index i = 0; i < d * d; ++i)
    out(i / d, i % d) = pair_value(m[i], "matrix[" + std::to_string(i) + "]");
  return SpinOperator(n, HalfInt{tJ}, out);
}

json coeffs_to_json(const WignerCoeffs& w) {
  json entries = json::array();
  for (const auto& e : w.entries()) {
    json jm = json::array();
    for (const auto& x : unpack_key(e.key, w.n_spins())) jm.push_back({x.j, x.m});
    entries.push_back({{"jm", jm}, {"re", e.value.real()}, {"im", e.value.imag()}});
  }
  return {{"n_spins", w.n_spins()}, {"spin_2J", w.spin_J().twice}, {"max_rank", w.max_rank()}, {"entries", entries}};
}

WignerCoeffs coeffs_from_json(const json& j) {
  const int n = field<int>(j, "n_spins");
  const int tJ = j.contains("spin_2J") ? field<int>(j, "spin_2J") : 1;
  if (n < 1 || n > kMaxSpheres) throw FormatError("field 'n_spins' out of range");
  if (tJ < 1) throw FormatError("field 'spin_2J' must be positive");
  const json& list = j.contains("entries") ? j.at("entries") : json();
  if (!list.is_array()) throw FormatError("missing field 'entries'");
  std::vector<CoeffEntry> entries;
  int rank = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "entries[" + std::to_string(i) + "]";
    const json& e = list[i];
    const json& jm = e.contains("jm") ? e.at("jm") : json();
    if (!jm.is_array() || static_cast<int>(jm.size()) != n) throw FormatError(where + ".jm must list one [j, m] per spin");
    BasisIndex idx;
    for (const auto& p : jm) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
        throw FormatError(where + ".jm: expected integer pairs");
      idx.push_back({p[0].get<int>(), p[1].get<int>()});
      if (idx.back().j < 0 || idx.back().j > kMaxKeyRank || std::abs(idx.back().m) > idx.back().j)
        throw FormatError(where + ".jm: rank/order out of range");
      rank = std::max(rank, idx.back().j);
    }
    const double re = e.value("re", 0.0);
    const double im = e.value("im", 0.0);
    entries.push_back({pack_key(idx), {re, im}});
  }
  const int bound = j.contains("max_rank") ? field<int>(j, "max_rank") : rank;
  if (bound < rank || bound > kMaxKeyRank) throw FormatError("field 'max_rank' does not cover the entries");
  return WignerCoeffs(n, HalfInt{tJ}, bound, std::move(entries));
}

json trajectory_to_json(const Trajectory& tr) {
  json out = json::array();
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    json row = {{"t", tr.times[i]}, {"coeffs", coeffs_to_json(tr.states[i])}};
    if (tr.oracle_deviation) row["max_oracle_dev"] = (*tr.oracle_deviation)[i];
    out.push_back(row);
  }
  return out;
}

json stratonovich_to_json(const StratonovichReport& rep) {
  json post = json::array();
  for (const auto& p : rep.postulates)
    post.push_back({{"name", p.name}, {"max_deviation", p.max_deviation}, {"threshold", p.threshold}, {"passed", p.passed}});
  return {{"n_spins", rep.n_spins}, {"spin_2J", rep.J.twice}, {"trials", rep.trials},
          {"seed", rep.seed}, {"postulates", post}, {"passed", rep.passed()}};
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw FormatError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) { return parse_json_text(read_text_file(path), path); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string coefficient_table_csv(int max_j, HalfInt J) {
  if (max_j < 0) throw std::invalid_argument("negative rank");
  std::ostringstream out;
  out.precision(17);
  out << "name,j1,j2,L,re,im\n";
  auto row = [&](const char* name, int j1, int j2, int L, cplx v) {
    if (std::abs(v) <= kDropTolerance) return;
    out << name << ',' << j1 << ',' << j2 << ',' << L << ',' << v.real() + 0.0 << ',' << v.imag() + 0.0 << '\n';
  };
  for (int j1 = 0; j1 <= max_j; ++j1)
    for (int j2 = 0; j2 <= max_j; ++j2)
      for (int L = std::abs(j1 - j2); L <= j1 + j2; ++L) {
        row("Z", j1, j2, L, coeff_Z(j1, j2, L));
        row("U", j1, j2, L, coeff_U(j1, j2, L));
        row("Q", j1, j2, L, coeff_Q(J, j1, j2, L));
        row("Lambda", j1, j2, L, coeff_Lambda(j1, j2, L));
      }
  return out.str();
}

}  // namespace moyal
