#pragma once

// Finite-difference realizations of (1/i) d/dx and -d^2/dx^2 on [0, 1] under
// Dirichlet, periodic and free (no) boundary conditions, together with the
// objects needed to separate the Dirichlet and periodic realizations and to
// build the rank-one perturbation K T1 with K = I + (e, .) e.
//
// Vectors hold samples at the grid nodes. The discrete L^2((0,1)) inner
// product is (f, g) = h sum_k conj(f_k) g_k.

#include <functional>
#include <span>

#include "charmat/hilbert.hpp"

namespace charmat {

enum class BoundaryCondition { dirichlet, periodic, free };

enum class GridKind {
  interior,  // x_k = k h, k = 1..n, h = 1/(n+1); endpoints excluded
  periodic,  // x_k = k h, k = 0..n-1, h = 1/n; x = 1 identified with x = 0
};

class GridDiscretization {
 public:
  static GridDiscretization interior(Index n);
  static GridDiscretization periodic(Index n);

  Index size() const { return nodes_.size(); }
  double spacing() const { return h_; }
  GridKind kind() const { return kind_; }
  const RealVector& nodes() const { return nodes_; }

  Complex inner(const Vector& f, const Vector& g) const;
  double norm(const Vector& f) const;
  // Samples of a function at the nodes.
  Vector sample(const std::function<Complex(double)>& f) const;

 private:
  GridDiscretization(GridKind kind, Index n);

  GridKind kind_;
  double h_;
  RealVector nodes_;
};

// Central differences (u_{k+1} - u_{k-1})/(2h) scaled by 1/i. Dirichlet uses
// zero ghost values, periodic wraps around, free switches to first-order
// one-sided differences in the first and last row. Dirichlet and periodic
// results are exactly Hermitian; the free one is not. Requires n >= 3.
Matrix derivative_operator(const GridDiscretization& grid, BoundaryCondition bc);

enum class LaplacianConstruction {
  stencil,             // (2, -1, -1)/h^2 second difference
  derivative_product,  // D* D with D the central-difference derivative
};

// -d^2/dx^2 for dirichlet or periodic conditions. The product construction
// decouples odd and even nodes and carries a spurious null mode; it exists
// to exhibit that defect. Throws InvariantViolation for the free condition.
Matrix laplacian(const GridDiscretization& grid, BoundaryCondition bc,
                 LaplacianConstruction construction = LaplacianConstruction::stencil);

struct SeparationWitness {
  double dirichlet = 0.0;  // (h, (L_dirichlet + I)^-1 h)
  double periodic = 0.0;   // (h, (L_periodic + I)^-1 h)

  double gap() const { return std::abs(dirichlet - periodic); }
};

// Both quadratic forms at the constant function h = 1 on n-point grids.
// Requires n >= 100.
SeparationWitness separation_witness(Index n);

// Samples of e^{-x}, the solution of (1/i) e' - i e = 0.
Vector deficiency_profile(const GridDiscretization& grid);
// deficiency_profile normalized in the discrete L^2 norm. Requires n >= 10.
Vector deficiency_vector(const GridDiscretization& grid);
// max_k |((D_free - i I) e)_k|; first order in h because of the one-sided
// boundary rows.
double deficiency_residual(const GridDiscretization& grid, const Vector& e);

struct RankOneExtension {
  Matrix k;   // I + w e e*
  Matrix t2;  // K T1
  Vector e;
  double weight = 1.0;

  // I - (w/2) e e*, exact because w ||e||^2 = 1.
  Matrix k_inverse() const;
  // ||T2* - T1* K||_F.
  double adjoint_residual(const Matrix& t1) const;
};

// K = I + w e e* with w the quadrature weight of the inner product in which
// e has unit norm (w = 1 for the Euclidean inner product, w = h on a grid).
// Throws InvariantViolation unless |w ||e||^2 - 1| <= 1e-10.
RankOneExtension rank_one_extension(const Matrix& t1, const Vector& e, double weight = 1.0);

using Profile = std::function<Complex(double)>;

// |e(0) - e(1)|. With profiles, e is fitted by least squares as a combination
// of them and the fit is evaluated at the endpoints. Without, endpoint values
// come from nodes lying on x = 0 or by linear extrapolation from the two
// nearest nodes.
double boundary_mismatch(const Vector& e, const GridDiscretization& grid,
                         std::span<const Profile> profiles = {});

}  // namespace charmat
