#include "charmat/selfadjoint.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "charmat/errors.hpp"
#include "quadrature.hpp"

namespace charmat {

namespace {

// Slack for comparisons between two rounded quantities of size O(1).
constexpr double kRoundingSlack = 1e-10;

void require_vectors(const Matrix& t, const Vector& f, const Vector& g, std::string_view what) {
  if (f.size() != t.rows() || g.size() != t.rows()) {
    throw DimensionMismatch(std::string(what) + ": vector and matrix dimensions differ");
  }
}

// Coefficients conj(V* f)_k (V* g)_k of the spectral measure d(f, E g).
Vector spectral_weights(const HermitianEigenDecomposition& eig, const Vector& f,
                        const Vector& g) {
  const Vector a = eig.eigenvectors.adjoint() * f;
  const Vector b = eig.eigenvectors.adjoint() * g;
  return a.conjugate().cwiseProduct(b);
}

}  // namespace

Matrix SpectralDecomposition::reconstruct() const {
  Matrix sum = Matrix::Zero(dim(), dim());
  for (std::size_t k = 0; k < projectors.size(); ++k) sum += levels[k] * projectors[k];
  return sum;
}

SpectralDecomposition spectral_decomposition(const Matrix& t) {
  const HermitianEigenDecomposition eig = eig_hermitian(t);
  SpectralDecomposition out;
  out.eigenvalues = eig.eigenvalues;
  const Index n = eig.dim();
  if (n == 0) return out;
  const double radius = eig.eigenvalues.cwiseAbs().maxCoeff();
  out.cluster_tolerance = 1e-8 * (radius + 1.0);

  Index start = 0;
  while (start < n) {
    Index end = start + 1;
    while (end < n && eig.eigenvalues[end] - eig.eigenvalues[end - 1] <= out.cluster_tolerance) {
      ++end;
    }
    const Index count = end - start;
    const auto block = eig.eigenvectors.middleCols(start, count);
    out.levels.push_back(eig.eigenvalues.segment(start, count).mean());
    out.projectors.push_back(block * block.adjoint());
    out.multiplicities.push_back(static_cast<int>(count));
    start = end;
  }
  return out;
}

Matrix spectral_projection(const SpectralDecomposition& spec, double lambda) {
  Matrix e = Matrix::Zero(spec.dim(), spec.dim());
  for (std::size_t k = 0; k < spec.levels.size(); ++k) {
    if (spec.levels[k] <= lambda + spec.cluster_tolerance) e += spec.projectors[k];
  }
  return e;
}

Matrix spectral_projection(const Matrix& t, double lambda) {
  return spectral_projection(spectral_decomposition(t), lambda);
}

Matrix resolvent(const Matrix& t, Complex z) {
  require_square(t, "resolvent");
  const Index n = t.rows();
  const Matrix shifted = t - z * identity(n);
  auto inv = checked_inverse(shifted);
  if (!inv) throw InvariantViolation("resolvent: z lies in the spectrum of T");
  return *std::move(inv);
}

Matrix unitary_group(const Matrix& t, double s) {
  return matfunc_hermitian(t, [s](double x) { return std::exp(kI * (s * x)); });
}

double fourier_resolvent_check(const Matrix& t, Complex z, const Vector& f, const Vector& g,
                               double smax, int steps) {
  if (!(z.imag() > 0.0)) throw InvariantViolation("fourier_resolvent_check: requires Im z > 0");
  if (!(smax > 0.0)) throw InvariantViolation("fourier_resolvent_check: requires smax > 0");
  if (steps < 1) throw InvariantViolation("fourier_resolvent_check: requires steps >= 1");
  require_vectors(t, f, g, "fourier_resolvent_check");

  const HermitianEigenDecomposition eig = eig_hermitian(t);
  const Vector weights = spectral_weights(eig, f, g);
  const RealVector& lambda = eig.eigenvalues;

  // (f, e^{-isT} g) = sum_k w_k e^{-is lambda_k}
  const auto integrand = [&](double s) {
    Complex group = 0.0;
    for (Index k = 0; k < lambda.size(); ++k) group += weights[k] * std::exp(-kI * (s * lambda[k]));
    return kI * std::exp(kI * z * s) * group;
  };
  const Complex quadrature = detail::trapezoid(integrand, 0.0, smax, steps);
  const Complex direct = inner_product(f, resolvent(t, z) * g);
  return std::abs(quadrature - direct);
}

double stone_formula_check(const Matrix& t, double lambda, const Vector& f, const Vector& g,
                           double epsilon, double delta, int steps) {
  if (!(epsilon > 0.0) || !(delta > 0.0)) {
    throw InvariantViolation("stone_formula_check: epsilon and delta must be positive");
  }
  if (steps < 1) throw InvariantViolation("stone_formula_check: requires steps >= 1");
  require_vectors(t, f, g, "stone_formula_check");

  const SpectralDecomposition spec = spectral_decomposition(t);
  const HermitianEigenDecomposition eig = eig_hermitian(t);
  const double upper = lambda + delta;
  for (double level : spec.levels) {
    if (std::abs(level - upper) <= spec.cluster_tolerance) {
      throw InvariantViolation("stone_formula_check: lambda + delta is an eigenvalue");
    }
  }

  const Vector weights = spectral_weights(eig, f, g);
  const RealVector& mu = eig.eigenvalues;
  const double lower = std::min(mu.minCoeff(), upper) - 1.0;
  const Complex norm = 1.0 / (2.0 * std::numbers::pi * kI);

  // (f, [R(x + i eps) - R(x - i eps)] g) with R(w) = (T - w)^-1.
  const auto integrand = [&](double x) {
    Complex jump = 0.0;
    for (Index k = 0; k < mu.size(); ++k) {
      const Complex above = 1.0 / (mu[k] - Complex(x, epsilon));
      const Complex below = 1.0 / (mu[k] - Complex(x, -epsilon));
      jump += weights[k] * (above - below);
    }
    return norm * jump;
  };
  const Complex quadrature = detail::trapezoid(integrand, lower, upper, steps);
  const Complex exact = inner_product(f, spectral_projection(spec, lambda) * g);
  return std::abs(quadrature - exact);
}

double spectral_transform_check(const Matrix& t, double s, const Vector& f, const Vector& g) {
  require_vectors(t, f, g, "spectral_transform_check");
  const SpectralDecomposition spec = spectral_decomposition(t);
  Complex sum = 0.0;
  for (std::size_t k = 0; k < spec.levels.size(); ++k) {
    sum += std::exp(kI * (s * spec.levels[k])) * inner_product(f, spec.projectors[k] * g);
  }
  return std::abs(sum - inner_product(f, unitary_group(t, s) * g));
}

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<Complex> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.size() != breakpoints_.size() + 1) {
    throw InvariantViolation("StepFunction: need exactly one more value than breakpoints");
  }
  if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end()) ||
      std::adjacent_find(breakpoints_.begin(), breakpoints_.end()) != breakpoints_.end()) {
    throw InvariantViolation("StepFunction: breakpoints must be strictly increasing");
  }
}

StepFunction StepFunction::constant(Complex c) { return StepFunction({}, {c}); }

Complex StepFunction::operator()(double x) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

bool StepProfile::pass() const {
  return monotone && std::all_of(steps.begin(), steps.end(),
                                 [](const StepApproximation& s) { return s.within_bound; });
}

StepProfile bounded_calculus_step_check(const Matrix& t,
                                        const std::function<Complex(double)>& f,
                                        std::span<const StepFunction> approximations) {
  const HermitianEigenDecomposition eig = eig_hermitian(t);
  const Matrix target = matfunc(eig, f);

  StepProfile profile;
  for (const StepFunction& step : approximations) {
    StepApproximation a{};
    const Matrix approx = matfunc(eig, [&step](double x) { return step(x); });
    a.operator_error = spectral_norm(approx - target);
    a.sup_distance = 0.0;
    for (Index k = 0; k < eig.dim(); ++k) {
      const double x = eig.eigenvalues[k];
      a.sup_distance = std::max(a.sup_distance, std::abs(step(x) - f(x)));
    }
    a.within_bound = a.operator_error <= a.sup_distance + kRoundingSlack;
    profile.steps.push_back(a);
  }
  for (std::size_t k = 1; k < profile.steps.size(); ++k) {
    const auto& prev = profile.steps[k - 1];
    const auto& cur = profile.steps[k];
    if (cur.sup_distance <= prev.sup_distance &&
        cur.operator_error > prev.operator_error + kRoundingSlack) {
      profile.monotone = false;
    }
  }
  return profile;
}

double ResolventFactorization::max() const { return std::max({square, upper, lower}); }

ResolventFactorization resolvent_factorization_check(const Matrix& t) {
  const Matrix h = symmetrized(t);
  const Index n = h.rows();
  const Matrix id = identity(n);
  Eigen::LLT<Matrix> llt(h * h + id);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("resolvent_factorization_check: T^2 + I is not positive definite");
  }
  const Matrix inv = llt.solve(id);
  const Matrix plus = resolvent(h, kI);
  const Matrix minus = resolvent(h, -kI);
  const Matrix ratio = h * inv;
  return {(inv - plus * minus).norm(), (ratio - (plus - kI * inv)).norm(),
          (ratio - (minus + kI * inv)).norm()};
}

}  // namespace charmat
