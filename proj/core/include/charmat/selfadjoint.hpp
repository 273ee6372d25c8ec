#pragma once

// Functional calculus of a Hermitian matrix T and numerical checks of the
// integral representations that tie its resolvent, spectral projections and
// unitary group together:
//
//   (f, e^{isT} g)       = sum_k e^{is lambda_k} (f, E_k g)
//   (f, (T - z)^-1 g)    = i int_0^inf e^{izs} (f, e^{-isT} g) ds,   Im z > 0
//   (f, E_T(lambda) g)   = lim (2 pi i)^-1 int_{-inf}^{lambda+delta}
//                              (f, [R(x + i eps) - R(x - i eps)] g) dx
//
// Spectral projections are right continuous: E_T(lambda) includes every
// eigenvalue equal to lambda.

#include <functional>
#include <span>
#include <vector>

#include "charmat/hilbert.hpp"

namespace charmat {

inline constexpr int kDefaultQuadratureSteps = 40000;

struct SpectralDecomposition {
  RealVector eigenvalues;           // ascending, with repetition
  std::vector<double> levels;       // distinct (clustered) eigenvalues
  std::vector<Matrix> projectors;   // orthogonal projection per level
  std::vector<int> multiplicities;  // rank of each projector
  double cluster_tolerance = 0.0;   // eigenvalues this close share a level

  Index dim() const { return eigenvalues.size(); }
  Matrix reconstruct() const;
};

// Eigenvalues closer than 1e-8 * (spectral radius + 1) share a projector.
SpectralDecomposition spectral_decomposition(const Matrix& t);

// Sum of the projectors whose level is <= lambda. Levels within
// cluster_tolerance above lambda count as equal to it.
Matrix spectral_projection(const Matrix& t, double lambda);
Matrix spectral_projection(const SpectralDecomposition& spec, double lambda);

// (T - zI)^-1 for any square T. Throws InvariantViolation when z lies in the
// spectrum (numerically: the shifted matrix is singular to working precision).
Matrix resolvent(const Matrix& t, Complex z);

// e^{isT}.
Matrix unitary_group(const Matrix& t, double s);

// |i int_0^smax e^{izs} (f, e^{-isT} g) ds - (f, (T - z)^-1 g)| by the
// trapezoid rule. Requires Im z > 0 and smax > 0.
double fourier_resolvent_check(const Matrix& t, Complex z, const Vector& f, const Vector& g,
                               double smax, int steps = kDefaultQuadratureSteps);

// |(2 pi i)^-1 int_Lambda^{lambda+delta} (f, [R(x+i eps) - R(x-i eps)] g) dx
//   - (f, E_T(lambda) g)| with Lambda = min(lambda_min, lambda + delta) - 1,
// by the trapezoid rule. The step should stay below about eps/2 for the
// Lorentzian kernel to be resolved.
double stone_formula_check(const Matrix& t, double lambda, const Vector& f, const Vector& g,
                           double epsilon, double delta,
                           int steps = kDefaultQuadratureSteps);

// |sum_k e^{is lambda_k} (f, E_k g) - (f, e^{isT} g)|.
double spectral_transform_check(const Matrix& t, double s, const Vector& f, const Vector& g);

// Right-continuous piecewise constant function: values[0] on (-inf, b_0),
// values[k] on [b_{k-1}, b_k), values.back() on [b_last, inf).
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<Complex> values);
  static StepFunction constant(Complex c);

  Complex operator()(double x) const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<Complex> values_;
};

struct StepApproximation {
  double operator_error;  // ||F_n(T) - F(T)||_2
  double sup_distance;    // max over eigenvalues |F_n(lambda) - F(lambda)|
  bool within_bound;      // operator_error <= sup_distance (+ rounding)
};

struct StepProfile {
  std::vector<StepApproximation> steps;
  // Errors are nonincreasing wherever the sup distances are.
  bool monotone = true;

  bool pass() const;
};

StepProfile bounded_calculus_step_check(const Matrix& t,
                                        const std::function<Complex(double)>& f,
                                        std::span<const StepFunction> approximations);

// Residuals of the factorizations of (T^2 + I)^-1 and T(T^2 + I)^-1 through
// the resolvents at +i and -i.
struct ResolventFactorization {
  double square;       // ||(T^2+I)^-1 - R(i) R(-i)||_F
  double upper;        // ||T(T^2+I)^-1 - [R(i) - i (T^2+I)^-1]||_F
  double lower;        // ||T(T^2+I)^-1 - [R(-i) + i (T^2+I)^-1]||_F

  double max() const;
};

ResolventFactorization resolvent_factorization_check(const Matrix& t);

}  // namespace charmat
