#include "charmat/boundary.hpp"

#include <cmath>
#include <string>

#include "charmat/errors.hpp"

namespace charmat {

namespace {

void require_min_size(Index n, Index minimum, std::string_view what) {
  if (n < minimum) {
    throw InvariantViolation(std::string(what) + ": need at least " + std::to_string(minimum) +
                             " grid points, got " + std::to_string(n));
  }
}

// Dense real solve of (L + I) x = 1 followed by h * sum(x).
double constant_quadratic_form(const GridDiscretization& grid, BoundaryCondition bc) {
  const Index n = grid.size();
  const Eigen::MatrixXd shifted =
      laplacian(grid, bc).real() + Eigen::MatrixXd::Identity(n, n);
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("separation_witness: L + I is not positive definite");
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  return grid.spacing() * ones.dot(llt.solve(ones));
}

}  // namespace

GridDiscretization::GridDiscretization(GridKind kind, Index n) : kind_(kind), nodes_(n) {
  if (n < 1) throw InvariantViolation("GridDiscretization: n must be positive");
  if (kind == GridKind::interior) {
    h_ = 1.0 / static_cast<double>(n + 1);
    for (Index k = 0; k < n; ++k) nodes_[k] = static_cast<double>(k + 1) * h_;
  } else {
    h_ = 1.0 / static_cast<double>(n);
    for (Index k = 0; k < n; ++k) nodes_[k] = static_cast<double>(k) * h_;
  }
}

GridDiscretization GridDiscretization::interior(Index n) { return {GridKind::interior, n}; }
GridDiscretization GridDiscretization::periodic(Index n) { return {GridKind::periodic, n}; }

Complex GridDiscretization::inner(const Vector& f, const Vector& g) const {
  if (f.size() != size() || g.size() != size()) {
    throw DimensionMismatch("GridDiscretization::inner: vector does not match the grid");
  }
  return h_ * f.dot(g);
}

double GridDiscretization::norm(const Vector& f) const { return std::sqrt(inner(f, f).real()); }

Vector GridDiscretization::sample(const std::function<Complex(double)>& f) const {
  Vector v(size());
  for (Index k = 0; k < size(); ++k) v[k] = f(nodes_[k]);
  return v;
}

Matrix derivative_operator(const GridDiscretization& grid, BoundaryCondition bc) {
  const Index n = grid.size();
  require_min_size(n, 3, "derivative_operator");
  const double h = grid.spacing();
  // (1/i) * (+-1/(2h)) = -+ i/(2h)
  const Complex up(0.0, -1.0 / (2.0 * h));
  const Complex down(0.0, 1.0 / (2.0 * h));

  Matrix d = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    if (k + 1 < n) d(k, k + 1) = up;
    if (k > 0) d(k, k - 1) = down;
  }
  switch (bc) {
    case BoundaryCondition::dirichlet:
      break;
    case BoundaryCondition::periodic:
      d(0, n - 1) = down;
      d(n - 1, 0) = up;
      break;
    case BoundaryCondition::free: {
      const Complex one_sided(0.0, -1.0 / h);  // (1/i) / h
      d(0, 0) = -one_sided;
      d(0, 1) = one_sided;
      d(n - 1, n - 1) = one_sided;
      d(n - 1, n - 2) = -one_sided;
      break;
    }
  }
  return d;
}

Matrix laplacian(const GridDiscretization& grid, BoundaryCondition bc,
                 LaplacianConstruction construction) {
  if (bc == BoundaryCondition::free) {
    throw InvariantViolation("laplacian: only dirichlet and periodic conditions are supported");
  }
  const Index n = grid.size();
  require_min_size(n, 3, "laplacian");
  if (construction == LaplacianConstruction::derivative_product) {
    const Matrix d = derivative_operator(grid, bc);
    return d.adjoint() * d;
  }
  const double h = grid.spacing();
  const double diag = 2.0 / (h * h);
  const double off = -1.0 / (h * h);
  Matrix l = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    l(k, k) = diag;
    if (k + 1 < n) l(k, k + 1) = off;
    if (k > 0) l(k, k - 1) = off;
  }
  if (bc == BoundaryCondition::periodic) {
    l(0, n - 1) = off;
    l(n - 1, 0) = off;
  }
  return l;
}

SeparationWitness separation_witness(Index n) {
  require_min_size(n, 100, "separation_witness");
  return {constant_quadratic_form(GridDiscretization::interior(n), BoundaryCondition::dirichlet),
          constant_quadratic_form(GridDiscretization::periodic(n), BoundaryCondition::periodic)};
}

Vector deficiency_profile(const GridDiscretization& grid) {
  return grid.sample([](double x) { return Complex(std::exp(-x), 0.0); });
}

Vector deficiency_vector(const GridDiscretization& grid) {
  require_min_size(grid.size(), 10, "deficiency_vector");
  const Vector e = deficiency_profile(grid);
  return e / grid.norm(e);
}

double deficiency_residual(const GridDiscretization& grid, const Vector& e) {
  if (e.size() != grid.size()) {
    throw DimensionMismatch("deficiency_residual: vector does not match the grid");
  }
  const Matrix d = derivative_operator(grid, BoundaryCondition::free);
  return (d * e - kI * e).cwiseAbs().maxCoeff();
}

Matrix RankOneExtension::k_inverse() const {
  return identity(e.size()) - (0.5 * weight) * (e * e.adjoint());
}

double RankOneExtension::adjoint_residual(const Matrix& t1) const {
  return (adjoint(t2) - adjoint(t1) * k).norm();
}

RankOneExtension rank_one_extension(const Matrix& t1, const Vector& e, double weight) {
  require_square(t1, "rank_one_extension");
  if (t1.rows() != e.size()) throw DimensionMismatch("rank_one_extension: e does not match T1");
  if (!(weight > 0.0)) throw InvariantViolation("rank_one_extension: weight must be positive");
  const double norm2 = weight * e.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw InvariantViolation("rank_one_extension: e must have unit norm, got norm^2 = " +
                             std::to_string(norm2));
  }
  RankOneExtension out;
  out.e = e;
  out.weight = weight;
  out.k = identity(e.size()) + weight * (e * e.adjoint());
  out.t2 = out.k * t1;
  return out;
}

double boundary_mismatch(const Vector& e, const GridDiscretization& grid,
                         std::span<const Profile> profiles) {
  const Index n = grid.size();
  if (e.size() != n) throw DimensionMismatch("boundary_mismatch: vector does not match the grid");
  const RealVector& x = grid.nodes();

  if (!profiles.empty()) {
    const Index p = static_cast<Index>(profiles.size());
    Matrix basis(n, p);
    for (Index j = 0; j < p; ++j) basis.col(j) = grid.sample(profiles[j]);
    const Vector coeffs = basis.colPivHouseholderQr().solve(e);
    Complex left = 0.0;
    Complex right = 0.0;
    for (Index j = 0; j < p; ++j) {
      left += coeffs[j] * profiles[j](0.0);
      right += coeffs[j] * profiles[j](1.0);
    }
    return std::abs(left - right);
  }

  if (n < 2) throw InvariantViolation("boundary_mismatch: need at least two nodes");
  const auto extrapolate = [&](Index a, Index b, double at) {
    if (x[a] == at) return e[a];
    return e[a] + (at - x[a]) * (e[b] - e[a]) / (x[b] - x[a]);
  };
  return std::abs(extrapolate(0, 1, 0.0) - extrapolate(n - 1, n - 2, 1.0));
}

}  // namespace charmat
