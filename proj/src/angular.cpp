#include "moyal/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace moyal {
namespace {

constexpr int kMaxFactorial = 80;

// Exact integers while they fit in 128 bits, then extended precision.
const std::array<long double, kMaxFactorial + 1>& factorials() {
  static const auto table = [] {
    std::array<long double, kMaxFactorial + 1> f{};
    unsigned __int128 exact = 1;
    long double approx = 1.0L;
    for (int n = 0; n <= kMaxFactorial; ++n) {
      if (n > 0) {
        if (n <= 33) exact *= static_cast<unsigned>(n);
        approx *= n;
      }
      f[n] = n <= 33 ? static_cast<long double>(exact) : approx;
    }
    return f;
  }();
  return table;
}

long double fact(int n) {
  if (n < 0 || n > kMaxFactorial) throw std::out_of_range("factorial argument out of range");
  return factorials()[n];
}

bool triad(int ta, int tb, int tc) {
  if (ta < 0 || tb < 0 || tc < 0) return false;
  if ((ta + tb + tc) % 2 != 0) return false;
  return tc <= ta + tb && tc >= std::abs(ta - tb);
}

long double delta(int ta, int tb, int tc) {
  return std::sqrt(fact((ta + tb - tc) / 2) * fact((ta - tb + tc) / 2) * fact((-ta + tb + tc) / 2) /
                   fact((ta + tb + tc) / 2 + 1));
}

double cg_twice(int j1, int m1, int j2, int m2, int J, int M) {
  if (m1 + m2 != M) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(M) > J) return 0.0;
  if ((j1 + m1) % 2 || (j2 + m2) % 2 || (J + M) % 2) return 0.0;
  if (!triad(j1, j2, J)) return 0.0;

  const int a = (j1 + j2 - J) / 2;
  const int b = (j1 - m1) / 2;
  const int c = (j2 + m2) / 2;
  const int d = (J - j2 + m1) / 2;
  const int e = (J - j1 - m2) / 2;
  const int kmin = std::max({0, -d, -e});
  const int kmax = std::min({a, b, c});

  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double term = 1.0L / (fact(k) * fact(a - k) * fact(b - k) * fact(c - k) *
                                     fact(d + k) * fact(e + k));
    sum += (k % 2 ? -term : term);
  }
  const long double pre =
      std::sqrt((J + 1) * fact(a) * fact((j1 - j2 + J) / 2) * fact((-j1 + j2 + J) / 2) /
                fact((j1 + j2 + J) / 2 + 1)) *
      std::sqrt(fact((j1 + m1) / 2) * fact((j1 - m1) / 2) * fact((j2 + m2) / 2) *
                fact((j2 - m2) / 2) * fact((J + M) / 2) * fact((J - M) / 2));
  return static_cast<double>(pre * sum);
}

double sixj_twice(int a, int b, int c, int d, int e, int f) {
  if (!triad(a, b, c) || !triad(a, e, f) || !triad(d, b, f) || !triad(d, e, c)) return 0.0;
  const int t1 = (a + b + c) / 2, t2 = (a + e + f) / 2, t3 = (d + b + f) / 2, t4 = (d + e + c) / 2;
  const int s1 = (a + b + d + e) / 2, s2 = (a + c + d + f) / 2, s3 = (b + c + e + f) / 2;
  const int tmin = std::max({t1, t2, t3, t4});
  const int tmax = std::min({s1, s2, s3});
  long double sum = 0.0L;
  for (int t = tmin; t <= tmax; ++t) {
    const long double term =
        fact(t + 1) / (fact(t - t1) * fact(t - t2) * fact(t - t3) * fact(t - t4) *
                       fact(s1 - t) * fact(s2 - t) * fact(s3 - t));
    sum += (t % 2 ? -term : term);
  }
  return static_cast<double>(delta(a, b, c) * delta(a, e, f) * delta(d, b, f) * delta(d, e, c) *
                             sum);
}

}  // namespace

double sphere_radius() { return std::sqrt(3.0 / (8.0 * std::numbers::pi)); }

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  return cg_twice(j1.twice, m1.twice, j2.twice, m2.twice, J.twice, M.twice);
}

double wigner_6j(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
  return sixj_twice(a.twice, b.twice, c.twice, d.twice, e.twice, f.twice);
}

double wigner_6j_jjj(int j1, int j2, int L, HalfInt J) {
  return sixj_twice(2 * j1, 2 * j2, 2 * L, J.twice, J.twice, J.twice);
}

double coeff_Q(HalfInt J, int j1, int j2, int L) {
  const double sixj = wigner_6j_jjj(j1, j2, L, J);
  if (sixj == 0.0) return 0.0;
  const int phase = (J.twice + L) % 2 ? -1 : 1;
  return phase * std::sqrt((2.0 * j1 + 1) * (2.0 * j2 + 1)) * sixj;
}

double coeff_Z(int j1, int j2, int L) {
  const double cg = cg_twice(2 * j1, 0, 2 * j2, 0, 2 * L, 0);
  if (cg == 0.0) return 0.0;
  return std::sqrt((2.0 * j1 + 1) * (2.0 * j2 + 1) / (4.0 * std::numbers::pi * (2.0 * L + 1))) *
         cg;
}

cplx coeff_U(int j1, int j2, int L) {
  if ((L - j1 - j2) % 2 == 0 || j1 == 0 || L == 0) return 0.0;
  const double cg = cg_twice(2 * j1, 2, 2 * j2, 0, 2 * L, 2);
  if (cg == 0.0) return 0.0;
  const double mag = std::sqrt(double(j1) * (j1 + 1) * double(L) * (L + 1)) *
                     std::sqrt((2.0 * j1 + 1) * (2.0 * j2 + 1) /
                               (4.0 * std::numbers::pi * (2.0 * L + 1))) *
                     cg;
  // -(i / 2R) * [1 - (-1)^(L-j1-j2)] = -i / R for odd parity.
  return cplx(0.0, -mag / sphere_radius());
}

cplx coeff_Lambda(int j1, int j2, int L) {
  return std::sqrt(2.0 * std::numbers::pi) * coeff_Z(j1, j2, L) - cplx(0.0, 0.5) * coeff_U(j1, j2, L);
}

AngularTables::AngularTables(int max_rank) : max_rank_(max_rank), lmax_(2 * max_rank) {
  if (max_rank < 0) throw std::invalid_argument("negative max rank");
  const int r = max_rank_;
  cg_.assign(std::size_t(r + 1) * (2 * r + 1) * (r + 1) * (2 * r + 1) * (lmax_ + 1), 0.0);
  for (int j1 = 0; j1 <= r; ++j1)
    for (int m1 = -j1; m1 <= j1; ++m1)
      for (int j2 = 0; j2 <= r; ++j2)
        for (int m2 = -j2; m2 <= j2; ++m2)
          for (int L = std::abs(j1 - j2); L <= j1 + j2; ++L)
            cg_[cg_index(j1, m1, j2, m2, L)] = cg_twice(2 * j1, 2 * m1, 2 * j2, 2 * m2, 2 * L, 2 * (m1 + m2));

  const std::size_t n3 = std::size_t(r + 1) * (r + 1) * (lmax_ + 1);
  z_.assign(n3, 0.0);
  u_im_.assign(n3, 0.0);
  q_.assign(n3 * (kMaxTwiceJ + 1), 0.0);
  for (int j1 = 0; j1 <= r; ++j1)
    for (int j2 = 0; j2 <= r; ++j2)
      for (int L = 0; L <= lmax_; ++L) {
        const auto i = triple_index(j1, j2, L);
        z_[i] = coeff_Z(j1, j2, L);
        u_im_[i] = coeff_U(j1, j2, L).imag();
        for (int tJ = 0; tJ <= kMaxTwiceJ; ++tJ) q_[tJ * n3 + i] = coeff_Q(HalfInt{tJ}, j1, j2, L);
      }
}

std::size_t AngularTables::cg_index(int j1, int m1, int j2, int m2, int L) const {
  const int r = max_rank_;
  return (((std::size_t(j1) * (2 * r + 1) + (m1 + r)) * (r + 1) + j2) * (2 * r + 1) + (m2 + r)) *
             (lmax_ + 1) +
         L;
}

std::size_t AngularTables::triple_index(int j1, int j2, int L) const {
  return (std::size_t(j1) * (max_rank_ + 1) + j2) * (lmax_ + 1) + L;
}

double AngularTables::cg(int j1, int m1, int j2, int m2, int L) const {
  if (!in_range(j1, j2) || L < 0 || L > lmax_ || std::abs(m1) > j1 || std::abs(m2) > j2)
    return cg_twice(2 * j1, 2 * m1, 2 * j2, 2 * m2, 2 * L, 2 * (m1 + m2));
  return cg_[cg_index(j1, m1, j2, m2, L)];
}

double AngularTables::Z(int j1, int j2, int L) const {
  if (!in_range(j1, j2) || L < 0 || L > lmax_) return coeff_Z(j1, j2, L);
  return z_[triple_index(j1, j2, L)];
}

cplx AngularTables::U(int j1, int j2, int L) const {
  if (!in_range(j1, j2) || L < 0 || L > lmax_) return coeff_U(j1, j2, L);
  return cplx(0.0, u_im_[triple_index(j1, j2, L)]);
}

cplx AngularTables::Lambda(int j1, int j2, int L) const {
  return std::sqrt(2.0 * std::numbers::pi) * Z(j1, j2, L) - cplx(0.0, 0.5) * U(j1, j2, L);
}

double AngularTables::Q(HalfInt J, int j1, int j2, int L) const {
  if (J.twice < 0 || J.twice > kMaxTwiceJ || !in_range(j1, j2) || L < 0 || L > lmax_)
    return coeff_Q(J, j1, j2, L);
  const std::size_t n3 = std::size_t(max_rank_ + 1) * (max_rank_ + 1) * (lmax_ + 1);
  return q_[J.twice * n3 + triple_index(j1, j2, L)];
}

const AngularTables& angular_tables() {
  static const AngularTables tables(6);
  return tables;
}

}  // namespace moyal
