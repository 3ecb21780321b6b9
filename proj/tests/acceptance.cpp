// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "moyal/angular.hpp"
#include "moyal/evolve.hpp"
#include "moyal/quad.hpp"
#include "moyal/random.hpp"
#include "moyal/star.hpp"
#include "test_util.hpp"

using namespace moyal;
using testutil::kPi;
using testutil::kR;

namespace {

WignerCoeffs W(const SpinOperator& a) { return wigner_transform(a); }

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-34s %s  [%.3f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome prestar_table() {
  const auto t0 = std::chrono::steady_clock::now();
  double dev = 0.0;
  for (const auto& e : testutil::prestar_table()) {
    const WignerCoeffs f = testutil::Y1(e.row_j, e.row_m), g = testutil::Y1(e.col_j, e.col_m);
    dev = std::max(dev, max_abs_diff(prestar_single(f, g), testutil::expected_prestar(e, false)));
    dev = std::max(dev, max_abs_diff(star_single(f, g), testutil::expected_prestar(e, true)));
  }
  const double secs = seconds_since(t0);
  return {dev < 1e-12 && secs < 1.0, fmt("max_dev=%.2e runtime=%.4fs (<1s)", dev, secs)};
}

Outcome lambda_equals_q() {
  const double h = 1 / std::sqrt(2.0);
  struct Listed {
    int j1, j2, L;
    double v;
  };
  const std::array<Listed, 5> listed{{{0, 0, 0, h}, {0, 1, 1, h}, {1, 0, 1, h}, {1, 1, 0, -std::sqrt(1.5)}, {1, 1, 1, -1.0}}};
  double dev = 0.0;
  int nonzero = 0;
  for (const auto& x : listed) {
    dev = std::max(dev, std::abs(coeff_Lambda(x.j1, x.j2, x.L) - x.v));
    dev = std::max(dev, std::abs(coeff_Q(kHalf, x.j1, x.j2, x.L) - x.v));
  }
  for (int j1 = 0; j1 <= 1; ++j1)
    for (int j2 = 0; j2 <= 1; ++j2)
      for (int L = 0; L <= 1; ++L) {
        const cplx l = coeff_Lambda(j1, j2, L);
        dev = std::max(dev, std::abs(l - coeff_Q(kHalf, j1, j2, L)));
        if (std::abs(l) > 1e-12) ++nonzero;
      }
  // Lambda is nonzero exactly at the five listed index triples.
  return {dev < 1e-12 && nonzero == 5, fmt("max_dev=%.2e nonzero_entries=%.0f", dev, nonzero)};
}

Outcome homomorphism() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(20240101);
  double dev_star = 0.0, dev_eom = 0.0;
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 200; ++t) {
      const SpinOperator A = random_hermitian(n, kHalf, rng), B = random_hermitian(n, kHalf, rng);
      dev_star = std::max(dev_star, max_abs_diff(star_multi(W(A), W(B)), W(A * B)));
      dev_eom = std::max(dev_eom, max_abs_diff(eom_rhs(W(A), W(B)), W(von_neumann_rhs(A, B))));
    }
  const double secs = seconds_since(t0);
  return {dev_star < 1e-10 && dev_eom < 1e-10 && secs < 30.0,
          fmt("star_dev=%.2e eom_dev=%.2e", dev_star, dev_eom) + fmt(" runtime=%.3fs (<30s)", secs)};
}

Outcome precession() {
  const double w = 2.0;
  const std::vector<double> times = time_grid(0.0, 4.5, 0.5);
  const Trajectory tr =
      propagate(build_generator(W(cartesian_op(1, {{0, Axis::z}}) * w)), W(cartesian_op(1, {{0, Axis::x}})), times);
  Rng rng(4);
  double dev = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i)
    for (int p = 0; p < 50; ++p) {
      const SphereAngle a = random_angles(1, rng)[0];
      const double wt = w * times[i];
      const double expected = kR * std::sin(a.theta) * (std::cos(wt) * std::cos(a.phi) + std::sin(wt) * std::sin(a.phi));
      dev = std::max(dev, std::abs(evaluate(tr.states[i], {a}) - expected));
    }
  return {dev < 1e-10 && times.size() == 10, fmt("max_dev=%.2e over %.0f times x 50 angles", dev, double(times.size()))};
}

Outcome zz_coupling() {
  const double nu = 1.0;
  const SpinOperator H = cartesian_op(2, {{0, Axis::z}, {1, Axis::z}}) * (2 * kPi * nu);
  const SpinOperator ix = cartesian_op(2, {{0, Axis::x}});
  const SpinOperator yz2 = cartesian_op(2, {{0, Axis::y}, {1, Axis::z}}) * 2.0;
  const Generator G = build_generator(W(H));
  const Trajectory ends = propagate(G, W(ix), {0.0, 0.25 / nu, 0.5 / nu});
  double dev = max_abs_diff(ends.states[0], W(ix));
  dev = std::max(dev, max_abs_diff(ends.states[1], W((ix + yz2) * (1 / std::sqrt(2.0)))));
  dev = std::max(dev, max_abs_diff(ends.states[2], W(yz2)));
  const std::vector<double> times = time_grid(0.0, 0.95 / nu, 0.05 / nu);
  const Trajectory tr = propagate(G, W(ix), times);
  double sig = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const cplx c = inner_product(W(ix), tr.states[i]) / inner_product(W(ix), W(ix));
    sig = std::max(sig, std::abs(c - std::cos(kPi * nu * times[i])));
  }
  return {dev < 1e-10 && sig < 1e-10 && times.size() == 20,
          fmt("endpoint_dev=%.2e doublet_signal_dev=%.2e", dev, sig)};
}

Outcome cnot() {
  const double w = 1.0;
  const SpinOperator H =
      (cartesian_op(2, {{0, Axis::beta}, {1, Axis::x}}) + cartesian_op(2, {{0, Axis::z}}) * 0.5) * w;
  const Generator G = build_generator(W(H));
  const double T = kPi / w;
  const WignerCoeffs flip =
      propagate(G, W(cartesian_op(2, {{0, Axis::beta}, {1, Axis::alpha}})), {0.0, T}).states.back();
  const double dev = max_abs_diff(flip, W(cartesian_op(2, {{0, Axis::beta}, {1, Axis::beta}})));

  const SpinOperator sigma0 = (SpinOperator::identity(2) * 0.5 + cartesian_op(2, {{0, Axis::x}})) *
                              cartesian_op(2, {{1, Axis::alpha}});
  const Trajectory bell = propagate(G, W(sigma0), {0.0, T});
  const double s0 = entanglement_entropy(inverse_wigner(bell.states[0]), {0});
  const double sT = entanglement_entropy(inverse_wigner(bell.states[1]), {0});
  const SpinOperator sigmaT = SpinOperator::identity(2) * 0.25 + cartesian_op(2, {{0, Axis::x}, {1, Axis::x}}) -
                              cartesian_op(2, {{0, Axis::y}, {1, Axis::y}}) + cartesian_op(2, {{0, Axis::z}, {1, Axis::z}});
  const double bell_dev = max_abs_diff(bell.states[1], W(sigmaT));
  return {dev < 1e-10 && std::abs(s0) <= 1e-12 && std::abs(sT - 1.0) <= 1e-9 && bell_dev < 1e-10,
          fmt("flip_dev=%.2e bell_dev=%.2e", dev, bell_dev) + fmt(" S(0)=%.2e S(T)-1=%.2e", s0, sT - 1.0)};
}

Outcome three_spin() {
  const double nu = 1.0;
  const SpinOperator H =
      (cartesian_op(3, {{0, Axis::z}, {1, Axis::z}}) + cartesian_op(3, {{1, Axis::z}, {2, Axis::z}})) * (2 * kPi * nu);
  const SpinOperator i2x = cartesian_op(3, {{1, Axis::x}});
  const Generator G = build_generator(W(H));
  const WignerCoeffs end = propagate(G, W(i2x), {0.5 / nu}).states.back();
  const double dev = max_abs_diff(end, W(cartesian_op(3, {{0, Axis::z}, {1, Axis::x}, {2, Axis::z}}) * -4.0));
  const std::vector<double> times = time_grid(0.0, 1.0 / nu, 0.05 / nu);
  const Trajectory tr = propagate(G, W(i2x), times);
  double sig = 0.0, fast = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const cplx c = inner_product(W(i2x), tr.states[i]) / inner_product(W(i2x), W(i2x));
    sig = std::max(sig, std::abs(c - (std::cos(2 * kPi * nu * times[i]) + 1) / 2));
    fast = std::max(fast, max_abs_diff(eom_rhs_natural(W(H), tr.states[i]), eom_rhs(W(H), tr.states[i])));
  }
  return {dev < 1e-10 && sig < 1e-10 && fast < 1e-12,
          fmt("end_dev=%.2e triplet_signal_dev=%.2e", dev, sig) + fmt(" natural_vs_full=%.2e", fast)};
}

Outcome stratonovich() {
  bool ok = true;
  std::string worst;
  double cov = 0.0;
  auto run = [&](int n, HalfInt J) {
    const StratonovichReport r = validate_stratonovich(n, 100, 7 + n + 10 * J.twice, J);
    ok = ok && r.passed();
    for (const auto& p : r.postulates) {
      if (!p.passed) worst += " " + p.name + "(N=" + std::to_string(n) + ",2J=" + std::to_string(J.twice) + ")";
      if (p.name == "covariance") cov = std::max(cov, p.max_deviation);
    }
  };
  run(1, kHalf);
  run(2, kHalf);
  for (int tJ = 2; tJ <= 5; ++tJ) run(1, HalfInt{tJ});
  return {ok, fmt("N<=2 and J<=5/2, 100 trials each, max_covariance_dev=%.2e", cov) + (ok ? "" : " failed:" + worst)};
}

Outcome norm_bound_check() {
  Rng rng(9);
  const SphereGrid g(40, 80);
  double worst = -1.0;
  for (int tJ = 1; tJ <= 3; ++tJ) {
    const HalfInt J{tJ};
    for (int t = 0; t < 100; ++t) {
      const std::vector<cplx> v = sample_grid(W(random_operator(1, J, rng)), g);
      double m = 0.0;
      for (const cplx& x : v) m = std::max(m, std::abs(x));
      worst = std::max(worst, m - norm_bound(J));
    }
  }
  return {worst <= 1e-9, fmt("max(|W| - (2J+1)/sqrt(4pi))=%.3e", worst)};
}

Outcome integral_star_check() {
  const SphereGrid g2 = SphereGrid::for_rank(2);
  double dev_half = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const RankOrder x = slot_rank_order(a), y = slot_rank_order(b);
      const WignerCoeffs f = testutil::Y1(x.j, x.m), h = testutil::Y1(y.j, y.m);
      dev_half = std::max(dev_half, max_abs_diff(integral_star(sample_grid(f, g2), sample_grid(h, g2), g2, kHalf),
                                                 star_single(f, h)));
    }
  Rng rng(10);
  const HalfInt one{2};
  const SphereGrid g4 = SphereGrid::for_rank(4);
  double dev_one = 0.0;
  for (int t = 0; t < 50; ++t) {
    const SpinOperator A = random_operator(1, one, rng), B = random_operator(1, one, rng);
    dev_one = std::max(dev_one, max_abs_diff(integral_star(sample_grid(W(A), g4), sample_grid(W(B), g4), g4, one),
                                             W(A * B)));
  }
  return {dev_half < 1e-9 && dev_one < 1e-8, fmt("J=1/2 vs differential=%.2e J=1 vs matrix=%.2e", dev_half, dev_one)};
}

Outcome quaternions() {
  const std::array<Axis, 3> xyz{Axis::x, Axis::y, Axis::z};
  const WignerCoeffs one = W(SpinOperator::identity(1));
  auto wv = [&](const Eigen::Vector3d& v) {
    SpinOperator s = SpinOperator::zero(1);
    for (int a = 0; a < 3; ++a) s = s + cartesian_op(1, {{0, xyz[a]}}) * (2 * v[a]);
    return W(s);
  };
  std::array<WignerCoeffs, 3> q{one, one, one};
  for (int a = 0; a < 3; ++a) q[a] = W(cartesian_op(1, {{0, xyz[a]}}) * cplx(0, -2));
  double rel = 0.0;
  for (int a = 0; a < 3; ++a) rel = std::max(rel, max_abs_diff(star_single(q[a], q[a]), one * -1.0));
  rel = std::max(rel, max_abs_diff(star_single(star_single(q[0], q[1]), q[2]), one * -1.0));

  Rng rng(11);
  std::normal_distribution<double> g;
  double lemma = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double r1 = g(rng), r2 = g(rng);
    const Eigen::Vector3d v1(g(rng), g(rng), g(rng)), v2(g(rng), g(rng), g(rng));
    const double r3 = r1 * r2 - v1.dot(v2);
    const Eigen::Vector3d v3 = r1 * v2 + r2 * v1 + v1.cross(v2);
    const double scalar = r1 * r2 - 0.5 * bilinear_integral(wv(v1), wv(v2)).real();
    const WignerCoeffs vec = wv(v2) * r1 + wv(v1) * r2 - poisson_bracket(wv(v1), wv(v2), 0) * 0.5;
    lemma = std::max({lemma, std::abs(scalar - r3), max_abs_diff(vec, wv(v3))});
  }
  return {rel < 1e-12 && lemma < 1e-12, fmt("defining_relations_dev=%.2e vector_lemma_dev=%.2e", rel, lemma)};
}

Outcome non_hermitian() {
  const double w = 1.5;
  const std::vector<double> times = time_grid(0.0, 1.9, 0.1);
  const Trajectory tr =
      propagate(build_generator(W(cartesian_op(1, {{0, Axis::z}}) * w)), W(cartesian_op(1, {{0, Axis::minus}})), times);
  double dev = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i)
    dev = std::max(dev, max_abs_diff(tr.states[i], testutil::Y1(1, -1, std::polar(1.0, w * times[i]))));
  return {dev < 1e-10 && times.size() == 20, fmt("max_dev=%.2e over %.0f times", dev, double(times.size()))};
}

}  // namespace

int main() {
  report(1, "prestar product table", prestar_table);
  report(2, "Lambda equals Q at spin 1/2", lambda_equals_q);
  report(3, "matrix-oracle homomorphism", homomorphism);
  report(4, "single-spin precession", precession);
  report(5, "two-spin ZZ coupling", zz_coupling);
  report(6, "CNOT gate and Bell entropy", cnot);
  report(7, "three-spin triplet", three_spin);
  report(8, "Stratonovich postulates", stratonovich);
  report(9, "Wigner norm bound", norm_bound_check);
  report(10, "integral star product", integral_star_check);
  report(11, "quaternion algebra", quaternions);
  report(12, "non-hermitian coherence", non_hermitian);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
