#include "charmat/hilbert.hpp"

#include <cmath>
#include <string>

#include "charmat/errors.hpp"

namespace charmat {

namespace {

void require_same_dim(const Vector& f, const Vector& g, std::string_view what) {
  if (f.size() != g.size()) {
    throw DimensionMismatch(std::string(what) + ": dimensions " +
                            std::to_string(f.size()) + " and " +
                            std::to_string(g.size()) + " differ");
  }
}

bool is_real(const Matrix& a) {
  return a.size() == 0 || a.imag().cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

Matrix HermitianEigenDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

Complex inner_product(const Vector& f, const Vector& g) {
  require_same_dim(f, g, "inner_product");
  // Eigen's dot() is conjugate-linear in its first argument.
  return f.dot(g);
}

Complex pair_inner(const GraphPair& p, const GraphPair& q) {
  require_same_dim(p.first, p.second, "pair_inner");
  require_same_dim(p.first, q.first, "pair_inner");
  require_same_dim(q.first, q.second, "pair_inner");
  return inner_product(p.first, q.first) + inner_product(p.second, q.second);
}

double pair_norm(const GraphPair& p) {
  return std::sqrt(p.first.squaredNorm() + p.second.squaredNorm());
}

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

bool all_finite(const Matrix& a) { return a.allFinite(); }

void require_finite(const Matrix& a, std::string_view what) {
  if (!all_finite(a)) {
    throw InvariantViolation(std::string(what) + ": matrix has non-finite entries");
  }
}

void require_square(const Matrix& a, std::string_view what) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch(std::string(what) + ": expected a square matrix, got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

double hermitian_defect(const Matrix& a) {
  const double scale = a.norm();
  if (scale == 0.0) return 0.0;
  return (a - a.adjoint()).norm() / scale;
}

bool is_hermitian(const Matrix& a, double tol) {
  return a.rows() == a.cols() && hermitian_defect(a) <= tol;
}

Matrix symmetrized(const Matrix& a, double tol) {
  require_square(a, "symmetrized");
  const double defect = hermitian_defect(a);
  if (defect > tol) {
    throw NotHermitian("matrix is not Hermitian: relative defect " + std::to_string(defect));
  }
  return (a + a.adjoint()) * 0.5;
}

double normality_defect(const Matrix& a) {
  const double scale = a.squaredNorm();
  if (scale == 0.0) return 0.0;
  return (a.adjoint() * a - a * a.adjoint()).norm() / scale;
}

HermitianEigenDecomposition eig_hermitian(const Matrix& a) {
  const Matrix h = symmetrized(a);
  HermitianEigenDecomposition out;
  if (is_real(h)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real());
    if (solver.info() != Eigen::Success) {
      throw NumericalFailure("eig_hermitian: eigensolver did not converge");
    }
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
      throw NumericalFailure("eig_hermitian: eigensolver did not converge");
    }
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
  }
  return out;
}

RealVector eigvals_hermitian(const Matrix& a) {
  const Matrix h = symmetrized(a);
  if (is_real(h)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericalFailure("eigvals_hermitian: eigensolver did not converge");
    }
    return solver.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigvals_hermitian: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

Matrix matfunc(const HermitianEigenDecomposition& eig,
               const std::function<Complex(double)>& f) {
  Vector values(eig.dim());
  for (Index k = 0; k < eig.dim(); ++k) values[k] = f(eig.eigenvalues[k]);
  return eig.eigenvectors * values.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix matfunc_hermitian(const Matrix& a, const std::function<Complex(double)>& f) {
  return matfunc(eig_hermitian(a), f);
}

Complex polarization(const QuadraticForm& q, const Vector& k1, const Vector& k2) {
  require_same_dim(k1, k2, "polarization");
  const Complex sum = q(k1 + k2) - q(k1 - k2) + kI * q(k1 - kI * k2) - kI * q(k1 + kI * k2);
  return 0.25 * sum;
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (is_hermitian(a)) return eigvals_hermitian(a).cwiseAbs().maxCoeff();
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues().maxCoeff();
}

double smallest_singular_value(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (is_hermitian(a)) return eigvals_hermitian(a).cwiseAbs().minCoeff();
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues().minCoeff();
}

double relative_distance(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

std::optional<Matrix> checked_inverse(const Matrix& a, double min_rcond) {
  Eigen::PartialPivLU<Matrix> lu(a);
  // rcond() reports 1 for an exactly zero pivot, so look at the pivots first.
  if ((lu.matrixLU().diagonal().array() == Complex(0.0)).any()) return std::nullopt;
  if (!(lu.rcond() > min_rcond)) return std::nullopt;
  Matrix inv = lu.inverse();
  if (!all_finite(inv)) return std::nullopt;
  return inv;
}

Matrix identity(Index n) { return Matrix::Identity(n, n); }

}  // namespace charmat
