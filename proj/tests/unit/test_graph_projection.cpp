#include <gtest/gtest.h>

#include "charmat/errors.hpp"
#include "charmat/graph_projection.hpp"
#include "checks.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace charmat;

namespace {

Matrix scalar(Complex x) { return Matrix::Constant(1, 1, x); }

oracle::Blocks blocks(const CharacteristicMatrix& p) { return {p.p11, p.p12, p.p21, p.p22}; }

void expect_blocks(const CharacteristicMatrix& p, Complex p11, Complex p12, Complex p21, Complex p22,
                   double tol) {
  EXPECT_NEAR(std::abs(p.p11(0, 0) - p11), 0.0, tol);
  EXPECT_NEAR(std::abs(p.p12(0, 0) - p12), 0.0, tol);
  EXPECT_NEAR(std::abs(p.p21(0, 0) - p21), 0.0, tol);
  EXPECT_NEAR(std::abs(p.p22(0, 0) - p22), 0.0, tol);
}

}  // namespace

TEST(CharMatrix, ZeroOperator) {
  const auto p = char_matrix(Matrix::Zero(3, 3));
  EXPECT_MATRIX_NEAR(p.p11, identity(3), 1e-15);
  EXPECT_MATRIX_NEAR(p.p12, Matrix::Zero(3, 3), 1e-15);
  EXPECT_MATRIX_NEAR(p.p21, Matrix::Zero(3, 3), 1e-15);
  EXPECT_MATRIX_NEAR(p.p22, Matrix::Zero(3, 3), 1e-15);
}

TEST(CharMatrix, ScalarTwo) { expect_blocks(char_matrix(scalar(2)), 0.2, 0.4, 0.4, 0.8, 1e-15); }

TEST(CharMatrix, ScalarI) {
  expect_blocks(char_matrix(scalar(kI)), 0.5, -0.5 * kI, 0.5 * kI, 0.5, 1e-15);
}

TEST(CharMatrix, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(char_matrix(Matrix::Zero(2, 3)), DimensionMismatch);
  EXPECT_THROW(char_matrix(scalar(std::nan(""))), InvariantViolation);
}

TEST(CharMatrix, MatchesSvdRoute) {
  gen::Source src(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix t = src.square(src.integer(1, 10));
    EXPECT_LE(oracle::max_block_distance(blocks(char_matrix(t)), oracle::graph_projection_svd(t)),
              1e-12);
  }
}

TEST(CharMatrix, LargeNormOperatorStaysAccurate) {
  // ||T|| ~ 1e5 makes T*T + I ill conditioned.
  gen::Source src(22);
  const Matrix t = 1e5 * src.hermitian(30);
  EXPECT_LE(oracle::max_block_distance(blocks(char_matrix(t)), oracle::graph_projection_svd(t)),
            1e-10);
}

TEST(CharMatrixOracle, ScalarAgreesWithClosedForm) {
  EXPECT_LE(blockwise_distance(char_matrix_oracle(scalar(2)), char_matrix(scalar(2))), 1e-12);
}

TEST(CharMatrixOracle, ZeroOperator) {
  const auto p = char_matrix_oracle(Matrix::Zero(2, 2));
  EXPECT_MATRIX_NEAR(p.p11, identity(2), 1e-15);
  EXPECT_LE(p.p12.norm() + p.p21.norm() + p.p22.norm(), 1e-15);
}

TEST(CharMatrixOracle, RandomAgreement) {
  gen::Source src(23);
  const Matrix t = src.square(8);
  EXPECT_LE(blockwise_distance(char_matrix(t), char_matrix_oracle(t)), 1e-10);
}

TEST(VerifyIdentities, RandomPasses) {
  gen::Source src(24);
  const Matrix t = src.square(8);
  const auto report = verify_identities(t, char_matrix(t));
  EXPECT_TRUE(report.pass());
  for (const auto& c : report.checks) {
    if (c.applicable && !c.lower_bound) {
      EXPECT_LE(c.value, 1e-10) << to_string(c.kind);
    }
  }
  EXPECT_GT(report.at(IdentityKind::kernel_trivial).value, 0.0);
}

TEST(VerifyIdentities, CorruptedBlockDetected) {
  const Matrix t = scalar(2);
  auto p = char_matrix(t);
  p.p21(0, 0) = 0.5;
  const auto report = verify_identities(t, p);
  EXPECT_FALSE(report.pass());
  EXPECT_FALSE(report.at(IdentityKind::hermitian_blocks).pass);
  EXPECT_FALSE(report.at(IdentityKind::graph_relation).pass);
}

TEST(VerifyIdentities, ZeroOperatorExact) {
  const Matrix t = Matrix::Zero(3, 3);
  const auto report = verify_identities(t, char_matrix(t));
  for (const auto& c : report.checks) {
    if (c.applicable && !c.lower_bound) EXPECT_LE(c.value, 1e-15) << to_string(c.kind);
  }
  // T = 0 is not injective, so the inverse identity does not apply.
  EXPECT_FALSE(report.at(IdentityKind::inverse_graph).applicable);
  EXPECT_TRUE(report.pass());
}

TEST(VerifyIdentities, SizeMismatchThrows) {
  EXPECT_THROW(verify_identities(Matrix::Zero(2, 2), char_matrix(scalar(1))), DimensionMismatch);
}

TEST(AdjointCharMatrix, SelfAdjointFixedPoint) {
  const auto p = char_matrix(scalar(2));
  EXPECT_LE(blockwise_distance(adjoint_char_matrix(p), p), 1e-15);
}

TEST(AdjointCharMatrix, ScalarI) {
  const auto q = adjoint_char_matrix(char_matrix(scalar(kI)));
  expect_blocks(q, 0.5, 0.5 * kI, -0.5 * kI, 0.5, 1e-15);
  EXPECT_LE(blockwise_distance(q, char_matrix(scalar(-kI))), 1e-15);
}

TEST(AdjointCharMatrix, RandomMatchesAdjointOperator) {
  gen::Source src(25);
  const Matrix t = src.square(6);
  EXPECT_LE(blockwise_distance(adjoint_char_matrix(char_matrix(t)), char_matrix(t.adjoint())), 1e-10);
}

TEST(InverseCharMatrix, ScalarTwo) {
  const auto q = inverse_char_matrix(char_matrix(scalar(2)));
  expect_blocks(q, 0.8, 0.4, 0.4, 0.2, 1e-15);
  EXPECT_LE(blockwise_distance(q, char_matrix(scalar(0.5))), 1e-15);
}

TEST(InverseCharMatrix, ZeroOperatorRejected) {
  EXPECT_THROW(inverse_char_matrix(char_matrix(Matrix::Zero(2, 2))), KernelNontrivial);
}

TEST(InverseCharMatrix, SingularRandomRejected) {
  gen::Source src(26);
  const auto p = char_matrix(src.singular(5));
  EXPECT_FALSE(operator_is_injective(p));
  EXPECT_THROW(inverse_char_matrix(p), KernelNontrivial);
}

TEST(InverseCharMatrix, RandomInvertible) {
  gen::Source src(27);
  const Matrix t = src.invertible(6);
  EXPECT_LE(blockwise_distance(inverse_char_matrix(char_matrix(t)), char_matrix(t.inverse())), 1e-9);
}

TEST(OperatorFromCharMatrix, Examples) {
  CharacteristicMatrix p{identity(2), Matrix::Zero(2, 2), Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
  EXPECT_MATRIX_NEAR(operator_from_char_matrix(p), Matrix::Zero(2, 2), 1e-15);
  EXPECT_NEAR(std::abs(operator_from_char_matrix(char_matrix(scalar(2)))(0, 0) - 2.0), 0.0, 1e-14);
}

TEST(OperatorFromCharMatrix, RandomRoundTrip) {
  gen::Source src(28);
  const Matrix t = src.square(8);
  EXPECT_LE(relative_distance(operator_from_char_matrix(char_matrix(t)), t), 1e-9);
}

TEST(OperatorFromCharMatrix, SingularP11Rejected) {
  CharacteristicMatrix p{Matrix::Zero(2, 2), Matrix::Zero(2, 2), Matrix::Zero(2, 2), identity(2)};
  EXPECT_THROW(operator_from_char_matrix(p), NumericalFailure);
}

TEST(CharacteristicMatrix, AssembleRoundTrip) {
  gen::Source src(29);
  const auto p = char_matrix(src.square(4));
  const Matrix whole = p.assembled();
  EXPECT_EQ(whole.rows(), 8);
  EXPECT_EQ(blockwise_distance(CharacteristicMatrix::from_assembled(whole), p), 0.0);
  EXPECT_THROW(CharacteristicMatrix::from_assembled(Matrix::Zero(3, 3)), DimensionMismatch);
}

TEST(AdjointBlockResidual, SmallForRandom) {
  gen::Source src(30);
  EXPECT_LE(adjoint_block_residual(src.square(7)), 1e-12);
}
