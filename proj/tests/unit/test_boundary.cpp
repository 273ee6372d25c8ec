#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "charmat/boundary.hpp"
#include "charmat/errors.hpp"
#include "charmat/graph_projection.hpp"
#include "charmat/selfadjoint.hpp"
#include "checks.hpp"
#include "oracles.hpp"

using namespace charmat;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Grid, NodesAndSpacing) {
  const auto g = GridDiscretization::interior(4);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.2);
  EXPECT_DOUBLE_EQ(g.nodes()[0], 0.2);
  EXPECT_DOUBLE_EQ(g.nodes()[3], 0.8);
  const auto p = GridDiscretization::periodic(4);
  EXPECT_DOUBLE_EQ(p.spacing(), 0.25);
  EXPECT_DOUBLE_EQ(p.nodes()[0], 0.0);
  EXPECT_NEAR(p.norm(Vector::Ones(4)), 1.0, 1e-15);
  EXPECT_THROW(GridDiscretization::interior(0), InvariantViolation);
}

TEST(Derivative, PeriodicSmallHasRealSpectrumWithZero) {
  const Matrix d = derivative_operator(GridDiscretization::periodic(4), BoundaryCondition::periodic);
  EXPECT_EQ(hermitian_defect(d), 0.0);
  const RealVector ev = eigvals_hermitian(d);
  EXPECT_LE(ev.cwiseAbs().minCoeff(), 1e-12);
  EXPECT_LE((d * Vector::Ones(4)).norm(), 1e-15);
}

TEST(Derivative, DirichletExactlyHermitian) {
  for (Index n : {3, 10, 57}) {
    const Matrix d = derivative_operator(GridDiscretization::interior(n), BoundaryCondition::dirichlet);
    EXPECT_EQ((d - d.adjoint()).norm(), 0.0);
  }
}

TEST(Derivative, FreeIsNotHermitian) {
  const Matrix d = derivative_operator(GridDiscretization::interior(10), BoundaryCondition::free);
  EXPECT_GT(hermitian_defect(d), 0.1);
}

TEST(Derivative, PeriodicLowestPairNearTwoPi) {
  for (Index n : {200, 400}) {
    const RealVector ev = eigvals_hermitian(
        derivative_operator(GridDiscretization::periodic(n), BoundaryCondition::periodic));
    // Smallest positive eigenvalue (the multiplicity-one 0 is excluded).
    double lowest = std::numeric_limits<double>::infinity();
    double highest_negative = -lowest;
    for (double x : ev) {
      if (x > 1e-8) lowest = std::min(lowest, x);
      if (x < -1e-8) highest_negative = std::max(highest_negative, x);
    }
    EXPECT_NEAR(lowest, 2 * kPi, 0.005 * 2 * kPi);
    EXPECT_NEAR(highest_negative, -2 * kPi, 0.005 * 2 * kPi);
    EXPECT_NEAR(lowest, oracle::periodic_derivative_eigenvalue(1, static_cast<int>(n)), 1e-9);
  }
}

TEST(Derivative, BoundaryConditionsAgreeOnInteriorRows) {
  const Index n = 12;
  const auto g = GridDiscretization::interior(n);
  const Matrix dd = derivative_operator(g, BoundaryCondition::dirichlet);
  const Matrix df = derivative_operator(g, BoundaryCondition::free);
  // Periodic on a grid with the same spacing.
  Matrix dp = derivative_operator(g, BoundaryCondition::periodic);
  for (Index r = 1; r + 1 < n; ++r) {
    EXPECT_EQ((dd.row(r) - df.row(r)).norm(), 0.0);
    EXPECT_EQ((dd.row(r) - dp.row(r)).norm(), 0.0);
  }
  EXPECT_THROW(derivative_operator(GridDiscretization::interior(2), BoundaryCondition::dirichlet),
               InvariantViolation);
}

TEST(Laplacian, DirichletMatchesStencilOracle) {
  const int n = 300;
  const RealVector ev = eigvals_hermitian(laplacian(GridDiscretization::interior(n), BoundaryCondition::dirichlet));
  for (int j = 1; j <= 10; ++j) {
    const double exact = oracle::dirichlet_stencil_eigenvalue(j, n);
    EXPECT_NEAR(ev[j - 1], exact, 1e-9 * ev.maxCoeff()) << j;
  }
}

TEST(Laplacian, DirichletN2000FirstEigenvalues) {
  const RealVector ev =
      eigvals_hermitian(laplacian(GridDiscretization::interior(2000), BoundaryCondition::dirichlet));
  EXPECT_NEAR(ev[0], kPi * kPi, 0.005 * kPi * kPi);
  for (int k = 1; k <= 5; ++k) {
    const double target = std::pow(k * kPi, 2);
    EXPECT_NEAR(ev[k - 1], target, 0.01 * target) << k;
  }
}

TEST(Laplacian, PeriodicN2000KernelAndFirstPair) {
  const RealVector ev =
      eigvals_hermitian(laplacian(GridDiscretization::periodic(2000), BoundaryCondition::periodic));
  EXPECT_LE(std::abs(ev[0]), 1e-8 * ev.maxCoeff());
  EXPECT_GT(ev[1], 1.0);
  const double target = 4 * kPi * kPi;
  EXPECT_NEAR(ev[1], target, 0.01 * target);
  EXPECT_NEAR(ev[2], target, 0.01 * target);
  EXPECT_NEAR(ev[1], oracle::periodic_stencil_eigenvalue(1, 2000), 1e-7 * ev.maxCoeff());
}

TEST(Laplacian, DirichletLowerBound) {
  for (int n : {100, 400}) {
    const RealVector ev =
        eigvals_hermitian(laplacian(GridDiscretization::interior(n), BoundaryCondition::dirichlet));
    EXPECT_GE(ev[0], kPi * kPi * (1.0 - 3.0 / n));
  }
}

TEST(Laplacian, PeriodicKernelIsConstants) {
  const auto g = GridDiscretization::periodic(64);
  const Matrix l = laplacian(g, BoundaryCondition::periodic);
  const RealVector ev = eigvals_hermitian(l);
  EXPECT_EQ((ev.array().abs() <= 1e-9 * ev.maxCoeff()).count(), 1);
  EXPECT_EQ((l * Vector::Ones(64)).norm(), 0.0);
}

TEST(Laplacian, ProductConstructionHasSpuriousNullMode) {
  const auto g = GridDiscretization::periodic(64);
  const RealVector ev = eigvals_hermitian(laplacian(g, BoundaryCondition::periodic,
                                                    LaplacianConstruction::derivative_product));
  EXPECT_EQ((ev.array().abs() <= 1e-9 * ev.maxCoeff()).count(), 2);
}

TEST(Laplacian, FreeUnsupported) {
  EXPECT_THROW(laplacian(GridDiscretization::interior(10), BoundaryCondition::free), InvariantViolation);
}

TEST(SeparationWitness, MatchesSeriesOracle) {
  const auto w = separation_witness(2000);
  EXPECT_NEAR(w.periodic, 1.0, 1e-8);
  EXPECT_NEAR(w.dirichlet, oracle::kDirichletFormN2000, 1e-9);
  EXPECT_NEAR(w.dirichlet, oracle::kDirichletFormSeries, 0.01 * oracle::kDirichletFormSeries);
  EXPECT_GT(w.gap(), 0.8);
  EXPECT_THROW(separation_witness(99), InvariantViolation);
}

TEST(SeparationWitness, SeriesOracleConverges) {
  EXPECT_NEAR(oracle::dirichlet_form_series(20001), oracle::kDirichletFormSeries, 1e-12);
  EXPECT_NEAR(oracle::kDirichletFormSeries, 1.0 - 2.0 * std::tanh(0.5), 1e-15);
}

TEST(Deficiency, NormalizedAndNormSquared) {
  const auto g = GridDiscretization::interior(1000);
  EXPECT_NEAR(g.norm(deficiency_vector(g)), 1.0, 1e-12);
  const double norm2 = std::pow(g.norm(deficiency_profile(g)), 2);
  // Midpoint-type quadrature misses the O(h) end strips.
  EXPECT_NEAR(norm2, oracle::kDeficiencyNormSquared, 2 * g.spacing());
  const auto p = GridDiscretization::periodic(1000);
  EXPECT_NEAR(std::pow(p.norm(deficiency_profile(p)), 2), oracle::kDeficiencyNormSquared, 2 * p.spacing());
  EXPECT_THROW(deficiency_vector(GridDiscretization::interior(5)), InvariantViolation);
}

TEST(Deficiency, ResidualIsFirstOrder) {
  double previous = 0.0;
  for (Index n : {100, 200, 400, 800}) {
    const auto g = GridDiscretization::interior(n);
    const double r = deficiency_residual(g, deficiency_vector(g));
    if (previous > 0.0) EXPECT_NEAR(previous / r, 2.0, 0.1) << n;
    previous = r;
  }
}

TEST(RankOneExtension, IdentityExample) {
  Vector e(2);
  e << 1, 0;
  const auto ext = rank_one_extension(identity(2), e);
  Matrix expected = identity(2);
  expected(0, 0) = 2;
  EXPECT_EQ(ext.k, expected);
  EXPECT_EQ(ext.t2, expected);
  EXPECT_EQ(ext.adjoint_residual(identity(2)), 0.0);
}

TEST(RankOneExtension, PeriodicDerivativeAndDeficiencyVector) {
  const auto g = GridDiscretization::periodic(200);
  const Matrix t1 = derivative_operator(g, BoundaryCondition::periodic);
  const auto ext = rank_one_extension(t1, deficiency_vector(g), g.spacing());
  EXPECT_LE(ext.adjoint_residual(t1), 1e-12);
  EXPECT_MATRIX_NEAR(ext.k * ext.k_inverse(), identity(200), 1e-12);
}

TEST(RankOneExtension, RejectsUnnormalized) {
  EXPECT_THROW(rank_one_extension(identity(2), Vector::Ones(2)), InvariantViolation);
  EXPECT_THROW(rank_one_extension(identity(3), Vector::Unit(2, 0)), DimensionMismatch);
}

TEST(BoundaryMismatch, ConstantIsPeriodic) {
  const auto g = GridDiscretization::periodic(50);
  EXPECT_LE(boundary_mismatch(Vector::Ones(50), g), 1e-15);
  const auto gi = GridDiscretization::interior(50);
  EXPECT_LE(boundary_mismatch(Vector::Ones(50), gi), 1e-14);
}

TEST(BoundaryMismatch, DeficiencyVectorClosedForm) {
  // Continuum value, reached once the O(h) normalization error is below 1e-3.
  for (auto g : {GridDiscretization::periodic(2000), GridDiscretization::interior(2000)}) {
    EXPECT_NEAR(boundary_mismatch(deficiency_vector(g), g), oracle::kDeficiencyMismatch, 1e-3);
  }
  // At any size the vector is normalized by the grid norm, so the endpoint
  // values are (1, e^-1) / ||e^-x||_h.
  const std::vector<Profile> exp_profile{[](double x) { return Complex(std::exp(-x)); }};
  for (Index n : {50, 200, 2000}) {
    for (auto g : {GridDiscretization::periodic(n), GridDiscretization::interior(n)}) {
      const double expected = (1.0 - std::exp(-1.0)) / g.norm(deficiency_profile(g));
      EXPECT_NEAR(boundary_mismatch(deficiency_vector(g), g, exp_profile), expected, 1e-12);
      // Two-point extrapolation over distance h misses by |f''| h^2 at each end.
      const double h2 = g.spacing() * g.spacing();
      const double bound = (1.0 + std::exp(-1.0)) * h2 / g.norm(deficiency_profile(g));
      EXPECT_NEAR(boundary_mismatch(deficiency_vector(g), g), expected, bound);
    }
  }
}

TEST(BoundaryMismatch, PeriodicDerivativeEigenvectors) {
  const int n = 64;
  const auto g = GridDiscretization::periodic(n);
  const auto eig = eig_hermitian(derivative_operator(g, BoundaryCondition::periodic));
  const auto mode = [](int k) {
    return Profile([k](double x) { return std::exp(Complex(0, 2 * kPi * k * x)); });
  };
  for (Index c = 0; c < n; ++c) {
    // Fourier modes sharing this eigenvalue; k and n/2 - k are degenerate.
    std::vector<Profile> modes;
    Matrix sampled(n, 0);
    for (int k = 0; k < n; ++k) {
      if (std::abs(oracle::periodic_derivative_eigenvalue(k, n) - eig.eigenvalues[c]) < 1e-8) {
        modes.push_back(mode(k));
        sampled.conservativeResize(n, sampled.cols() + 1);
        sampled.col(sampled.cols() - 1) = g.sample(modes.back());
      }
    }
    ASSERT_FALSE(modes.empty()) << c;
    const Vector& v = eig.eigenvectors.col(c);
    // The eigenvector lies in the span of periodic modes...
    const Vector fit = sampled * sampled.colPivHouseholderQr().solve(v);
    EXPECT_LE((fit - v).norm(), 1e-10) << c;
    // ...so its extension takes equal values at both ends.
    EXPECT_LE(boundary_mismatch(v, g, modes), 1e-8) << c;
  }
}

TEST(CrossModule, DerivativeOperatorsSatisfyGraphIdentities) {
  for (auto bc : {BoundaryCondition::dirichlet, BoundaryCondition::periodic, BoundaryCondition::free}) {
    const auto g = bc == BoundaryCondition::periodic ? GridDiscretization::periodic(50)
                                                     : GridDiscretization::interior(50);
    const Matrix d = derivative_operator(g, bc);
    const auto report = verify_identities(d, char_matrix(d));
    EXPECT_TRUE(report.pass()) << static_cast<int>(bc);
  }
  const auto g = GridDiscretization::interior(50);
  const Matrix l = laplacian(g, BoundaryCondition::dirichlet);
  // ||L|| ~ 1e4 here. A backward-stable solve of (L*L + I) X = I leaves
  // residuals of order eps ||L||^2 ||X||, so the graph relations are held to
  // that scale rather than the unit-scale default.
  const double norm = spectral_norm(l);
  const double tol = 1e-17 * norm * norm;
  EXPECT_TRUE(verify_identities(l, char_matrix(l), tol).pass()) << tol;
}
