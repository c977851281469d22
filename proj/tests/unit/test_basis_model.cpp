#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "sdsq/basis.hpp"
#include "sdsq/errors.hpp"
#include "sdsq/model.hpp"
#include "sdsq/numerics.hpp"
#include "sdsq/pauli.hpp"

using namespace sdsq;

namespace {

std::vector<double> spectrum(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(e);
  return {s.eigenvalues().data(), s.eigenvalues().data() + s.eigenvalues().size()};
}

bool exactly_zero(const ComplexMatrix& m) { return max_abs(m) == 0.0; }

}  // namespace

TEST(Basis, OscillatorPositionMatrices) {
  const HermitianOperator q2 = q_osc(2);
  EXPECT_DOUBLE_EQ(q2(0, 1).real(), 1.0 / std::sqrt(2.0));
  const HermitianOperator q3 = q_osc(3);
  EXPECT_DOUBLE_EQ(q3(1, 2).real(), 1.0);
  EXPECT_THROW(q_osc(1), DimensionError);
}

TEST(Basis, OscillatorMomentumIsScaledPauliY) {
  const HermitianOperator p = p_osc(2);
  EXPECT_LT(std::abs(p(0, 1) - Complex(0.0, -1.0 / std::sqrt(2.0))), 1e-15);
  EXPECT_LT(std::abs(p(1, 0) - Complex(0.0, 1.0 / std::sqrt(2.0))), 1e-15);
}

TEST(Basis, TruncatedCanonicalCommutator) {
  for (std::size_t n : {2u, 4u, 8u}) {
    const ComplexMatrix c = commutator(q_osc(n).matrix(), p_osc(n).matrix());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Complex want{};
        if (i == j) want = i + 1 == n ? Complex(0.0, 1.0 - double(n)) : Complex(0.0, 1.0);
        EXPECT_LT(std::abs(c(i, j) - want), 1e-14) << n << " " << i << " " << j;
      }
  }
}

TEST(Basis, OscillatorSpectraSymmetricAndEqual) {
  const auto q = spectrum(q_osc(8).matrix());
  const auto p = spectrum(p_osc(8).matrix());
  for (std::size_t i = 0; i < q.size(); ++i) {
    EXPECT_NEAR(q[i], -q[q.size() - 1 - i], 1e-12);
    EXPECT_NEAR(q[i], p[i], 1e-12);
  }
}

TEST(Basis, PositionBasis) {
  const HermitianOperator q = q_pos(2);
  EXPECT_NEAR(q(0, 0).real(), -std::sqrt(std::numbers::pi / 4.0), 1e-15);
  EXPECT_NEAR(q(1, 1).real(), std::sqrt(std::numbers::pi / 4.0), 1e-15);
  for (std::size_t n : {2u, 3u, 4u, 8u}) {
    const ComplexMatrix f = sylvester_f(n);
    EXPECT_LT(max_abs(f.adjoint() * f - ComplexMatrix::identity(n)), 1e-10);
    Complex tr{};
    for (std::size_t i = 0; i < n; ++i) tr += q_pos(n)(i, i);
    EXPECT_NEAR(std::abs(tr), 0.0, 1e-12);
    EXPECT_LT(hermiticity_defect(p_pos(n).matrix()), 1e-12);
  }
}

TEST(Basis, FiniteDifference) {
  const HermitianOperator p2 = p2_fd(2);
  EXPECT_EQ(p2(0, 0), Complex(2.0));
  EXPECT_EQ(p2(0, 1), Complex(-1.0));
  const std::size_t n = 8;
  const auto ev = spectrum(p2_fd(n).matrix());
  std::vector<double> want;
  for (std::size_t k = 1; k <= n; ++k)
    want.push_back(2.0 * n * std::pow(std::sin(k * std::numbers::pi / (2.0 * (n + 1))), 2));
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ev[i], want[i], 1e-12);
  EXPECT_GT(ev.front(), 0.0);
  EXPECT_THROW(p_fd(4), UnsupportedBasisError);
}

TEST(Basis, LadderRecoversOscillatorMatrices) {
  const auto [a, ad] = ladder(4);
  EXPECT_EQ(ad, a.adjoint());
  const ComplexMatrix q = Complex(1.0 / std::sqrt(2.0)) * (a + ad);
  EXPECT_LT(max_abs(q - q_osc(4).matrix()), 1e-15);
  const ComplexMatrix p = Complex(0.0, -1.0 / std::sqrt(2.0)) * (a - ad);
  EXPECT_LT(max_abs(p - p_osc(4).matrix()), 1e-15);
  const ComplexMatrix number = ad * a;
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(number(k, k).real(), double(k), 1e-14);
  const auto [a2, ad2] = ladder(2);
  EXPECT_EQ(a2(0, 1), Complex(1.0));
  EXPECT_EQ(a2(1, 0), Complex(0.0));
}

TEST(Basis, HarmonicLevelsSurviveTruncation) {
  for (std::size_t n : {4u, 8u, 16u}) {
    const ComplexMatrix q = q_osc(n).matrix(), p = p_osc(n).matrix();
    const auto ev = spectrum(Complex(0.5) * (p * p + q * q));
    for (std::size_t k = 0; k < (n + 1) / 2; ++k) EXPECT_NEAR(ev[k], k + 0.5, 1e-8);
  }
}

TEST(Basis, PairTensorSlots) {
  const VariablePair pair = make_pair(4, BasisKind::Oscillator);
  EXPECT_EQ(pair.u.dim(), 16u);
  EXPECT_EQ(pair.per_variable_dim(), 4u);
  EXPECT_TRUE(exactly_zero(commutator(pair.u.matrix(), pair.v.matrix())));
  EXPECT_TRUE(exactly_zero(commutator(pair.u.matrix(), pair.p_v.matrix())));
  EXPECT_TRUE(exactly_zero(commutator(pair.v.matrix(), pair.p_u.matrix())));
  const auto eu = spectrum(pair.u.matrix());
  const auto eq = spectrum(q_osc(4).matrix());
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(eu[i], eq[i / 4], 1e-12);
  EXPECT_THROW(make_pair(3, BasisKind::Oscillator), DimensionError);
}

TEST(Basis, EveryKindParses) {
  for (BasisKind k : {BasisKind::Oscillator, BasisKind::Position, BasisKind::FiniteDifference,
                      BasisKind::Ladder})
    EXPECT_EQ(parse_basis(to_string(k)), k);
  EXPECT_THROW(parse_basis("spline"), Error);
}

TEST(Model, MassOperatorGroundEnergyIsZero) {
  const OperatorPair ops = build_operators({0.01, 4, BasisKind::Oscillator});
  EXPECT_NEAR(spectrum(ops.mass_4M.matrix()).front(), 0.0, 1e-6);
  EXPECT_LT(hermiticity_defect(ops.hamiltonian_2bH.matrix()), 1e-12);
}

TEST(Model, LadderAndOscillatorAgree) {
  const OperatorPair a = build_operators({0.01, 4, BasisKind::Oscillator});
  const OperatorPair b = build_operators({0.01, 4, BasisKind::Ladder});
  EXPECT_LT(max_abs(a.mass_4M.matrix() - b.mass_4M.matrix()), 1e-12);
}

TEST(Model, ZeroLambdaMassIsPositiveSemidefinite) {
  const OperatorPair ops = build_operators({0.0, 6, BasisKind::Oscillator});
  EXPECT_GT(spectrum(ops.mass_4M.matrix()).front(), -1e-12);
}

TEST(Model, LiteralOperatorMatchesIndependentAssembly) {
  // Rebuild 4M from the pair with the kinetic term squared as a whole.
  const ModelConfig cfg{0.01, 4, BasisKind::Oscillator};
  const VariablePair vp = make_pair(4, BasisKind::Oscillator);
  const ComplexMatrix p = vp.p_u.matrix() + vp.p_v.matrix();
  const ComplexMatrix x = vp.u.matrix() - vp.v.matrix();
  const ComplexMatrix want = Complex(0.5) * (p * p) + Complex(0.5) * (x * x) -
                             Complex(0.01 / 96.0) * power(x, 6);
  EXPECT_LT(max_abs(build_operators(cfg).mass_4M.matrix() - want), 1e-12);
}

TEST(Model, PauliTermCounts) {
  EXPECT_EQ(decompose(build_operators({0.01, 4, BasisKind::Oscillator}).mass_4M).size(), 57u);
  EXPECT_EQ(decompose(build_operators({0.01, 6, BasisKind::Oscillator}).mass_4M).size(), 745u);
}

TEST(Model, FiniteDifferenceIsUnsupported) {
  EXPECT_THROW(build_operators({0.01, 4, BasisKind::FiniteDifference}), UnsupportedBasisError);
}

TEST(Model, ConfigValidation) {
  EXPECT_THROW((ModelConfig{-1.0, 4, BasisKind::Oscillator}.validate()), DomainError);
  EXPECT_THROW((ModelConfig{0.01, 12, BasisKind::Oscillator}.validate()), DimensionError);
  EXPECT_DOUBLE_EQ(ModelConfig::default_lambda(8), 0.005);
  EXPECT_DOUBLE_EQ(ModelConfig::default_lambda(6), 0.01);
}

TEST(Model, ClassicalMass) {
  const double lambda = 0.01;
  EXPECT_NEAR(mass_ab(0.0, 1.0 / std::sqrt(lambda), lambda), 1.0 / (3.0 * std::sqrt(lambda)), 1e-12);
  EXPECT_DOUBLE_EQ(mass_ab(0.0, 1.0, 0.0), 0.5);
  EXPECT_NEAR(mass_ab(0.0, 1.00337, lambda), 0.5, 1e-3);
  EXPECT_THROW(mass_ab(0.0, 0.0, lambda), DomainError);
}

TEST(Model, Potentials) {
  EXPECT_DOUBLE_EQ(potential_s(2.0), 2.0);
  const double lambda = 0.01;
  const double xs = std::pow(16.0 / lambda, 0.25);
  EXPECT_NEAR(potential_sd(xs, lambda), std::sqrt(16.0 / lambda) / 3.0, 1e-12);
  EXPECT_NEAR(potential_sd(xs, lambda), 13.333, 1e-3);
  for (double x : {-3.0, 0.5, 7.0}) EXPECT_DOUBLE_EQ(potential_sd(x, 0.0), potential_s(x));
  EXPECT_NEAR(nariai_mass(lambda), 10.0 / 3.0, 1e-14);
  EXPECT_THROW(nariai_mass(0.0), DomainError);
}
