#pragma once

// Dense complex linear algebra in a finite-dimensional Hilbert space.
//
// Convention: the inner product is antilinear in the FIRST slot and linear in
// the second, (f, g) = sum_k conj(f_k) g_k. Everything downstream relies on it.

#include <complex>
#include <functional>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace charmat {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Relative Frobenius defect tolerated before a matrix is rejected as
// non-Hermitian. Below it the matrix is silently symmetrized.
inline constexpr double kHermitianTolerance = 1e-12;

// An element <f, g> of the direct sum H (+) H.
struct GraphPair {
  Vector first;
  Vector second;
};

struct HermitianEigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // orthonormal columns, column k pairs with eigenvalues[k]

  Index dim() const { return eigenvalues.size(); }
  Matrix reconstruct() const;
};

Complex inner_product(const Vector& f, const Vector& g);

// (p, q) = (p.first, q.first) + (p.second, q.second).
Complex pair_inner(const GraphPair& p, const GraphPair& q);
double pair_norm(const GraphPair& p);

Matrix adjoint(const Matrix& a);

bool all_finite(const Matrix& a);
// Throws InvariantViolation naming `what` if any entry is NaN or infinite.
void require_finite(const Matrix& a, std::string_view what);
void require_square(const Matrix& a, std::string_view what);

// ||a - a*||_F / ||a||_F (0 for the zero matrix).
double hermitian_defect(const Matrix& a);
bool is_hermitian(const Matrix& a, double tol = kHermitianTolerance);
// (a + a*)/2 after checking the defect; throws NotHermitian beyond tol.
Matrix symmetrized(const Matrix& a, double tol = kHermitianTolerance);

// ||a*a - aa*||_F relative to ||a||_F^2.
double normality_defect(const Matrix& a);

// Ascending eigenvalues and orthonormal eigenvectors of a Hermitian matrix.
// Real-valued input takes a faster real symmetric path.
HermitianEigenDecomposition eig_hermitian(const Matrix& a);
// Eigenvalues only; O(n^3) with a much smaller constant than eig_hermitian.
RealVector eigvals_hermitian(const Matrix& a);

// V diag(F(lambda_k)) V*.
Matrix matfunc_hermitian(const Matrix& a, const std::function<Complex(double)>& f);
Matrix matfunc(const HermitianEigenDecomposition& eig,
               const std::function<Complex(double)>& f);

using QuadraticForm = std::function<Complex(const Vector&)>;

// Recovers the sesquilinear form (k1, A k2) from the quadratic form
// q(k) = (k, A k) through four evaluations.
Complex polarization(const QuadraticForm& q, const Vector& k1, const Vector& k2);

double spectral_norm(const Matrix& a);
// Smallest singular value. Hermitian input uses eigenvalues, otherwise an SVD.
double smallest_singular_value(const Matrix& a);

// ||a - b||_F / max(1, ||b||_F).
double relative_distance(const Matrix& a, const Matrix& b);

// LU inverse of a square matrix, or nullopt when a pivot vanishes, the
// reciprocal condition estimate drops below min_rcond, or the result overflows.
std::optional<Matrix> checked_inverse(const Matrix& a, double min_rcond = 1e-14);

Matrix identity(Index n);

}  // namespace charmat
