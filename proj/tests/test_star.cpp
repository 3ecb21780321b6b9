#include <gtest/gtest.h>

#include <array>

#include "moyal/kernels.hpp"
#include "moyal/random.hpp"
#include "moyal/star.hpp"
#include "test_util.hpp"

using namespace moyal;
using testutil::kPi;
using testutil::matrix_dev;
using testutil::Y1;

namespace {

WignerCoeffs W(const SpinOperator& a) { return wigner_transform(a); }

SpinOperator commutator(const SpinOperator& a, const SpinOperator& b) { return a * b - b * a; }

// Random Hamiltonian with only linear and bilinear terms.
SpinOperator random_natural(int n, Rng& rng) {
  std::normal_distribution<double> g;
  SpinOperator H = SpinOperator::zero(n);
  const std::array<Axis, 3> ax{Axis::x, Axis::y, Axis::z};
  for (int k = 0; k < n; ++k)
    for (Axis a : ax) {
      H = H + cartesian_op(n, {{k, a}}) * g(rng);
      for (int l = k + 1; l < n; ++l)
        for (Axis b : ax) H = H + cartesian_op(n, {{k, a}, {l, b}}) * g(rng);
    }
  return H;
}

const std::array<Axis, 3> kXYZ{Axis::x, Axis::y, Axis::z};

}  // namespace

TEST(PrestarSingle, ReproducesProductTable) {
  for (const auto& e : testutil::prestar_table()) {
    const WignerCoeffs got = prestar_single(Y1(e.row_j, e.row_m), Y1(e.col_j, e.col_m));
    EXPECT_LT(max_abs_diff(got, testutil::expected_prestar(e, false)), 1e-12)
        << "Y" << e.row_j << e.row_m << " * Y" << e.col_j << e.col_m;
    const WignerCoeffs star = star_single(Y1(e.row_j, e.row_m), Y1(e.col_j, e.col_m));
    EXPECT_LT(max_abs_diff(star, testutil::expected_prestar(e, true)), 1e-12);
    EXPECT_LE(star.present_rank(), 1);
  }
}

TEST(StarSingle, OperatorProductOfBasisPairs) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const RankOrder x = slot_rank_order(a), y = slot_rank_order(b);
      const SpinOperator prod = inverse_wigner(star_single(Y1(x.j, x.m), Y1(y.j, y.m)));
      EXPECT_LT(matrix_dev(prod.matrix(), (tensor_op(kHalf, x.j, x.m) * tensor_op(kHalf, y.j, y.m)).matrix()), 1e-12);
    }
}

TEST(StarSingle, IdentityElement) {
  Rng rng(1);
  const WignerCoeffs f = W(random_operator(1, kHalf, rng));
  const WignerCoeffs one = W(SpinOperator::identity(1));
  EXPECT_LT(max_abs_diff(star_single(one, f), f), 1e-15);
  EXPECT_LT(max_abs_diff(star_single(f, one), f), 1e-15);
}

TEST(StarSingle, CommutatorIsPoissonBracket) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const WignerCoeffs f = W(random_operator(1, kHalf, rng)), g = W(random_operator(1, kHalf, rng));
    const WignerCoeffs lhs = (star_single(f, g) - star_single(g, f)) * cplx(0, 1);
    EXPECT_LT(max_abs_diff(lhs, poisson_bracket(f, g, 0)), 1e-14);
  }
}

TEST(StarSingle, RejectsWrongShape) {
  EXPECT_THROW(prestar_single(W(SpinOperator::identity(2)), W(SpinOperator::identity(2))), std::invalid_argument);
  EXPECT_THROW(star_single(W(SpinOperator::identity(1, HalfInt{2})), W(SpinOperator::identity(1, HalfInt{2}))),
               std::invalid_argument);
  EXPECT_THROW(star_multi(W(SpinOperator::identity(1)), W(SpinOperator::identity(2))), std::invalid_argument);
}

TEST(PrestarMulti, DisjointSupportsGivePointwiseProduct) {
  Rng rng(3);
  const WignerCoeffs f = lift(W(random_operator(1, kHalf, rng)), 2, 0);
  const WignerCoeffs g = lift(W(random_operator(1, kHalf, rng)), 2, 1);
  EXPECT_LT(max_abs_diff(prestar_multi(f, g), pointwise_product(f, g) * (2 * kPi)), 1e-14);
  EXPECT_LT(max_abs_diff(star_multi(f, g), star_multi(g, f)), 1e-14);
}

TEST(PrestarMulti, TwoSpinExpansion) {
  Rng rng(4);
  const WignerCoeffs f = W(random_operator(2, kHalf, rng)), g = W(random_operator(2, kHalf, rng));
  const std::array<SphereRule, 2> both{SphereRule::bracket, SphereRule::bracket};
  const WignerCoeffs expected = pointwise_product(f, g) * (2 * kPi) -
                                (poisson_bracket(f, g, 0) + poisson_bracket(f, g, 1)) * cplx(0, std::sqrt(kPi / 2)) -
                                combine(f, g, both, 1.0) * 0.25;
  EXPECT_LT(max_abs_diff(prestar_multi(f, g), expected), 1e-13);
}

TEST(PrestarMulti, SubsetSumEqualsFactorizedCoefficients) {
  Rng rng(5);
  for (int n = 1; n <= 3; ++n) {
    const WignerCoeffs f = W(random_operator(n, kHalf, rng)), g = W(random_operator(n, kHalf, rng));
    const std::vector<SphereRule> rules(n, SphereRule::prestar);
    EXPECT_LT(max_abs_diff(prestar_multi(f, g), combine(f, g, rules, 1.0)), 1e-13);
  }
}

TEST(PrestarMulti, IdentityAndDeterminism) {
  Rng rng(6);
  const WignerCoeffs f = W(random_operator(3, kHalf, rng)), g = W(random_operator(3, kHalf, rng));
  EXPECT_LT(max_abs_diff(prestar_multi(f, W(SpinOperator::identity(3))), f), 1e-14);
  const WignerCoeffs a = prestar_multi(f, g, Exec::serial), b = prestar_multi(f, g, Exec::parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.entries()[i].key, b.entries()[i].key);
    EXPECT_EQ(a.entries()[i].value, b.entries()[i].value);
  }
}

TEST(StarMulti, Homomorphism) {
  Rng rng(7);
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 20; ++t) {
      const SpinOperator A = random_operator(n, kHalf, rng), B = random_operator(n, kHalf, rng);
      const WignerCoeffs s = star_multi(W(A), W(B));
      EXPECT_LE(s.present_rank(), 1);
      EXPECT_LT(max_abs_diff(s, W(A * B)), 1e-11);
    }
}

TEST(StarMulti, ProductOperatorsFromLinearFactors) {
  const WignerCoeffs a = W(tensor_op_embedded(2, kHalf, 0, 1, 0));
  const WignerCoeffs b = W(tensor_op_embedded(2, kHalf, 1, 1, 0));
  EXPECT_LT(max_abs_diff(star_multi(a, b), W(tensor_op_embedded(2, kHalf, 0, 1, 0) * tensor_op_embedded(2, kHalf, 1, 1, 0))),
            1e-15);
}

TEST(StarMulti, Associative) {
  Rng rng(8);
  for (int n = 1; n <= 2; ++n) {
    const WignerCoeffs a = W(random_operator(n, kHalf, rng)), b = W(random_operator(n, kHalf, rng)),
                       c = W(random_operator(n, kHalf, rng));
    EXPECT_LT(max_abs_diff(star_multi(star_multi(a, b), c), star_multi(a, star_multi(b, c))), 1e-13);
  }
}

TEST(StarCommutator, MatchesOperatorCommutator) {
  Rng rng(9);
  for (int n = 1; n <= 3; ++n) {
    const SpinOperator A = random_operator(n, kHalf, rng), B = random_operator(n, kHalf, rng);
    const WignerCoeffs c = star_commutator(W(A), W(B));
    EXPECT_LT(max_abs_diff(c, W(commutator(A, B))), 1e-11);
    EXPECT_LT(max_abs_diff(c, star_multi(W(A), W(B)) - star_multi(W(B), W(A))), 1e-13);
    EXPECT_LT(max_abs(star_commutator(W(A), W(A))), 1e-15);
  }
}

TEST(StarCommutator, TwoSpinBracketForm) {
  Rng rng(10);
  const WignerCoeffs f = W(random_operator(2, kHalf, rng)), g = W(random_operator(2, kHalf, rng));
  const WignerCoeffs expected =
      project_rank(poisson_bracket(f, g, 0) + poisson_bracket(f, g, 1), 1) * cplx(0, -std::sqrt(2 * kPi));
  EXPECT_LT(max_abs_diff(star_commutator(f, g), expected), 1e-13);
}

TEST(StarCommutator, ThreeSpinTripleBracketTerm) {
  Rng rng(11);
  const WignerCoeffs f = W(random_operator(3, kHalf, rng)), g = W(random_operator(3, kHalf, rng));
  WignerCoeffs single(3, kHalf, 2);
  for (int k = 0; k < 3; ++k) single = single + poisson_bracket(f, g, k);
  const std::array<SphereRule, 3> all{SphereRule::bracket, SphereRule::bracket, SphereRule::bracket};
  const WignerCoeffs expected =
      project_rank(single * cplx(0, -2 * kPi) + combine(f, g, all, 1.0) * cplx(0, 0.25), 1);
  EXPECT_LT(max_abs_diff(star_commutator(f, g), expected), 1e-12);
}

TEST(EomRhs, SpinPrecessionExample) {
  const double w = 1.7;
  const WignerCoeffs H = W(cartesian_op(1, {{0, Axis::z}}) * w);
  const WignerCoeffs rhs = eom_rhs(H, W(cartesian_op(1, {{0, Axis::x}})));
  EXPECT_LT(max_abs_diff(rhs, W(cartesian_op(1, {{0, Axis::y}}) * w)), 1e-15);
}

TEST(EomRhs, TwoSpinCouplingExample) {
  const double nu = 0.8;
  const WignerCoeffs H = W(cartesian_op(2, {{0, Axis::z}, {1, Axis::z}}) * (2 * kPi * nu));
  const WignerCoeffs rhs = eom_rhs(H, W(cartesian_op(2, {{0, Axis::x}})));
  EXPECT_LT(max_abs_diff(rhs, W(cartesian_op(2, {{0, Axis::y}, {1, Axis::z}}) * (2 * kPi * nu))), 1e-14);
}

TEST(EomRhs, MatchesVonNeumannAndPreservesTraceAndHermiticity) {
  Rng rng(12);
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 5; ++t) {
      const SpinOperator H = random_hermitian(n, kHalf, rng), rho = random_hermitian(n, kHalf, rng);
      const WignerCoeffs rhs = eom_rhs(W(H), W(rho));
      EXPECT_LT(max_abs_diff(rhs, W(von_neumann_rhs(H, rho))), 1e-11);
      EXPECT_LT(max_abs_diff(rhs, star_commutator(W(H), W(rho)) * cplx(0, -1)), 1e-12);
      EXPECT_EQ(rhs.at(BasisIndex(n, RankOrder{0, 0})), cplx(0.0));
      for (int p = 0; p < 5; ++p) EXPECT_LT(std::abs(evaluate(rhs, random_angles(n, rng)).imag()), 1e-11);
      EXPECT_LT(max_abs(eom_rhs(W(H), W(H))), 1e-15);
    }
}

TEST(EomRhsNatural, AgreesWithFullRhs) {
  Rng rng(13);
  const SpinOperator H3 = (cartesian_op(3, {{0, Axis::z}, {1, Axis::z}}) + cartesian_op(3, {{1, Axis::z}, {2, Axis::z}})) *
                          (2 * kPi * 0.6);
  const WignerCoeffs rho = W(cartesian_op(3, {{1, Axis::x}}));
  ASSERT_TRUE(is_natural_hamiltonian(W(H3)));
  EXPECT_LT(max_abs_diff(eom_rhs_natural(W(H3), rho), eom_rhs(W(H3), rho)), 1e-12);
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 5; ++t) {
      const WignerCoeffs H = W(random_natural(n, rng) + SpinOperator::identity(n) * 0.3);
      const WignerCoeffs r = W(random_operator(n, kHalf, rng));
      ASSERT_TRUE(is_natural_hamiltonian(H));
      EXPECT_LT(max_abs_diff(eom_rhs_natural(H, r), eom_rhs(H, r)), 1e-12);
    }
}

TEST(EomRhsNatural, RejectsTrilinearTerms) {
  const WignerCoeffs H = W(cartesian_op(3, {{0, Axis::z}, {1, Axis::z}, {2, Axis::x}}));
  EXPECT_FALSE(is_natural_hamiltonian(H));
  try {
    eom_rhs_natural(H, W(cartesian_op(3, {{1, Axis::x}})));
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "not a natural Hamiltonian");
  }
  EXPECT_LT(max_abs(eom_rhs_natural(W(SpinOperator::identity(3)), W(cartesian_op(3, {{1, Axis::x}})))), 1e-15);
}

TEST(EomRhsLinearJ, PrefactorAndOracle) {
  EXPECT_NEAR(linear_J_scale(kHalf), 1.0, 1e-15);
  EXPECT_NEAR(linear_J_scale(HalfInt{2}), 1 / std::sqrt(4.0), 1e-15);
  Rng rng(14);
  for (int tJ = 1; tJ <= 5; ++tJ) {
    const HalfInt J{tJ};
    const SpinMatrices s = spin_matrices(J);
    std::normal_distribution<double> g;
    const Matrix h = g(rng) * s.x + g(rng) * s.y + g(rng) * s.z + g(rng) * Matrix::Identity(tJ + 1, tJ + 1);
    const SpinOperator H(1, J, h);
    const SpinOperator A = random_operator(1, J, rng);
    const WignerCoeffs rhs = eom_rhs_linear_J(W(H), W(A));
    EXPECT_LT(max_abs_diff(rhs, W(von_neumann_rhs(H, A))), 1e-12) << "2J=" << tJ;
    if (tJ == 1) EXPECT_LT(max_abs_diff(rhs, eom_rhs(W(H), W(A))), 1e-14);
  }
}

TEST(EomRhsLinearJ, ZeemanOnRankTwoTensor) {
  const HalfInt J{2};
  const double w = 0.9;
  const SpinOperator H(1, J, spin_matrices(J).z * w);
  const WignerCoeffs rhs = eom_rhs_linear_J(W(H), W(tensor_op(J, 2, 1)));
  EXPECT_LT(max_abs_diff(rhs, WignerCoeffs::basis(1, J, {{2, 1}}, cplx(0, -w))), 1e-14);
  EXPECT_LT(max_abs(eom_rhs_linear_J(W(SpinOperator::identity(1, J)), W(tensor_op(J, 2, 1)))), 1e-15);
  try {
    eom_rhs_linear_J(W(tensor_op(J, 2, 0)), W(tensor_op(J, 1, 0)));
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "nonlinear Hamiltonian unsupported for J > 1/2");
  }
}

TEST(Quaternions, DefiningRelations) {
  // 1 -> identity, i, j, k -> -i sigma_x, -i sigma_y, -i sigma_z
  std::array<WignerCoeffs, 3> q{W(SpinOperator::identity(1)), W(SpinOperator::identity(1)), W(SpinOperator::identity(1))};
  for (int a = 0; a < 3; ++a) q[a] = W(cartesian_op(1, {{0, kXYZ[a]}}) * cplx(0, -2));
  const WignerCoeffs minus_one = W(SpinOperator::identity(1)) * -1.0;
  EXPECT_NEAR(evaluate(W(SpinOperator::identity(1)), {{0.3, 0.2}}).real(), 1 / std::sqrt(2 * kPi), 1e-15);
  for (int a = 0; a < 3; ++a) EXPECT_LT(max_abs_diff(star_single(q[a], q[a]), minus_one), 1e-15);
  EXPECT_LT(max_abs_diff(star_single(star_single(q[0], q[1]), q[2]), minus_one), 1e-15);
  EXPECT_LT(max_abs_diff(star_single(q[0], q[1]), q[2]), 1e-15);
}

TEST(Quaternions, VectorFormLemma) {
  Rng rng(15);
  std::normal_distribution<double> g;
  const WignerCoeffs one = W(SpinOperator::identity(1));
  auto wv = [](const Eigen::Vector3d& v) {
    SpinOperator s = SpinOperator::zero(1);
    for (int a = 0; a < 3; ++a) s = s + cartesian_op(1, {{0, kXYZ[a]}}) * (2 * v[a]);
    return W(s);
  };
  for (int t = 0; t < 100; ++t) {
    const double r1 = g(rng), r2 = g(rng);
    const Eigen::Vector3d v1(g(rng), g(rng), g(rng)), v2(g(rng), g(rng), g(rng));
    const double r3 = r1 * r2 - v1.dot(v2);
    const Eigen::Vector3d v3 = r1 * v2 + r2 * v1 + v1.cross(v2);
    // <f|g> = (1/2) int f g
    const double scalar = r1 * r2 - 0.5 * bilinear_integral(wv(v1), wv(v2)).real();
    const WignerCoeffs vec = wv(v2) * r1 + wv(v1) * r2 - poisson_bracket(wv(v1), wv(v2), 0) * 0.5;
    EXPECT_NEAR(scalar, r3, 1e-12 * (1 + std::abs(r3)));
    EXPECT_LT(max_abs_diff(vec, wv(v3)), 1e-12);
    EXPECT_NEAR(0.5 * bilinear_integral(one, one).real(), 1.0, 1e-15);
    // The star product realises the same product on r 1 - i v.sigma.
    auto quat = [&](double r, const Eigen::Vector3d& v) { return one * r + wv(v) * cplx(0, -1); };
    EXPECT_LT(max_abs_diff(star_single(quat(r1, v1), quat(r2, v2)), quat(r3, v3)), 1e-12);
  }
}
