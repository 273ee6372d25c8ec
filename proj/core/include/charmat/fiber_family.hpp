#pragma once

// Operator families T(t) sampled on a finite parameter grid and their direct
// integrals.
//
// The continuum parameter t becomes nodes t_1 < ... < t_m with positive
// quadrature weights; "for a.e. t" becomes "at every node". The direct
// integral is realized as the block-diagonal matrix blkdiag(T(t_1), ...,
// T(t_m)). Weights enter only the inner product of FamilyVectors, never the
// assembled matrix.
//
// With bounded fibers on a finite grid the maximally defined fiberwise
// operator and the decomposable direct integral coincide, so one type,
// DirectIntegralOperator, stands for both. Families built from nonmeasurable
// index sets, where the two notions separate, cannot be represented here.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charmat/graph_projection.hpp"
#include "charmat/hilbert.hpp"

namespace charmat {

// Residual tolerance of the decomposition identities.
inline constexpr double kDecompositionTolerance = 1e-9;

class ParameterGrid {
 public:
  // Throws InvariantViolation unless nodes strictly increase and every
  // weight is positive and finite.
  ParameterGrid(std::vector<double> nodes, std::vector<double> weights);

  // Trapezoidal weights on the given nodes; a single node gets weight 1.
  static ParameterGrid trapezoidal(std::vector<double> nodes);
  static ParameterGrid uniform(double a, double b, std::size_t count);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  bool operator==(const ParameterGrid&) const = default;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

class OperatorFamily {
 public:
  // Throws DimensionMismatch unless there is one square fiber per node and
  // all fibers share a dimension.
  OperatorFamily(ParameterGrid grid, std::vector<Matrix> fibers);

  const ParameterGrid& grid() const { return grid_; }
  const std::vector<Matrix>& fibers() const { return fibers_; }
  const Matrix& fiber(std::size_t k) const { return fibers_.at(k); }
  std::size_t size() const { return fibers_.size(); }
  Index fiber_dim() const { return fibers_.front().rows(); }

  // New family on the same grid with fiber k replaced by op(fiber k).
  template <typename Op>
  OperatorFamily map(Op&& op) const {
    std::vector<Matrix> out;
    out.reserve(fibers_.size());
    for (const Matrix& f : fibers_) out.push_back(op(f));
    return OperatorFamily(grid_, std::move(out));
  }

 private:
  ParameterGrid grid_;
  std::vector<Matrix> fibers_;
};

struct FamilyVector {
  ParameterGrid grid;
  std::vector<Vector> sections;
};

// sum_k w_k (f(t_k), g(t_k)).
Complex family_inner(const FamilyVector& f, const FamilyVector& g);
double family_l2_norm(const FamilyVector& f);

Matrix block_diagonal(std::span<const Matrix> blocks);

class DirectIntegralOperator {
 public:
  explicit DirectIntegralOperator(OperatorFamily family);

  const OperatorFamily& family() const { return family_; }
  const Matrix& assembled() const { return assembled_; }

  // Fiberwise action (Tf)(t_k) = T(t_k) f(t_k).
  FamilyVector apply(const FamilyVector& f) const;

 private:
  OperatorFamily family_;
  Matrix assembled_;
};

DirectIntegralOperator direct_integral(const OperatorFamily& family);

// Largest fiber operator norm, the sampled essential supremum.
double family_norm(const OperatorFamily& family);

struct FiberwiseCharacteristic {
  std::vector<CharacteristicMatrix> fibers;
  // Largest Frobenius distance between a block of char_matrix(assembled) and
  // the block diagonal of the corresponding fiber blocks.
  double residual = 0.0;
};

FiberwiseCharacteristic char_matrix_fiberwise(const OperatorFamily& family);

// Checks how the direct integral interacts with adjoints, moduli, inverses,
// polynomials and the order and symmetry properties of its fibers.
struct DecompositionItem {
  std::string name;
  double residual = 0.0;
  double tolerance = kDecompositionTolerance;
  bool applicable = true;
  bool pass = true;
  std::string note;
};

// "assembled has property X" versus "every fiber has property X".
struct PropertyEquivalence {
  std::string name;
  bool assembled = false;
  bool all_fibers = false;
  bool applicable = true;

  bool consistent() const { return !applicable || assembled == all_fibers; }
};

struct DecompositionReport {
  std::vector<DecompositionItem> identities;
  std::vector<PropertyEquivalence> properties;

  bool pass() const;
  const DecompositionItem& identity(std::string_view name) const;
  const PropertyEquivalence& property(std::string_view name) const;
};

// Polynomial with ascending coefficients, p(x) = sum_k c_k x^k.
using Polynomial = std::vector<Complex>;

Matrix evaluate_polynomial(const Polynomial& p, const Matrix& a);

// Identities: adjoint, modulus, inverse (needs injective fibers), polynomial
// (needs normal fibers). Properties: self_adjoint, symmetric, normal,
// injective, nonnegative (only meaningful when self-adjoint).
DecompositionReport decomposition_suite(const OperatorFamily& family, const Polynomial& p,
                                        double tol = kDecompositionTolerance);

// For everywhere-defined fibers inclusion T(t) c S(t) is equality; the check
// compares the assembled equality with the fiberwise one.
struct InclusionReport {
  double assembled_distance = 0.0;
  double max_fiber_distance = 0.0;
  bool assembled_included = false;
  bool fibers_included = false;

  bool consistent() const { return assembled_included == fibers_included; }
};

InclusionReport inclusion_check(const OperatorFamily& t, const OperatorFamily& s,
                                double tol = kIdentityTolerance);

OperatorFamily lennon_sum(const OperatorFamily& a, const OperatorFamily& b);
OperatorFamily lennon_product(const OperatorFamily& a, const OperatorFamily& b);

// Fibers (T(t_k) - alpha_k I)^-1.
OperatorFamily form_resolvents(const OperatorFamily& family, std::span<const Complex> alpha);

// Fibers alpha_k I + R(t_k)^-1; inverse of form_resolvents. Throws
// NumericalFailure if a resolvent fiber is singular.
OperatorFamily resolvent_reconstruct(const OperatorFamily& resolvents,
                                     std::span<const Complex> alpha);

inline constexpr double kResolventConvergenceTolerance = 1e-6;

struct ResolventLimitReport {
  // gaps[k][n] = ||(T_n(t_k) - z)^-1 - (T(t_k) - z)^-1||_F
  std::vector<std::vector<double>> gaps;
  // Per fiber: final gap <= tolerance and the gaps are nonincreasing over the
  // second half of the sequence.
  std::vector<bool> converged;

  bool all_converged() const;
  // Whether the gaps decrease over the second half, ignoring the tolerance.
  bool tail_nonincreasing(std::size_t fiber) const;
};

ResolventLimitReport resolvent_limit_check(std::span<const OperatorFamily> sequence,
                                           const OperatorFamily& limit, Complex z,
                                           double tol = kResolventConvergenceTolerance);

// Zeroes the sections outside E_n = {t_k : ||T(t_k) f(t_k)|| <= n, |t_k| <= n}.
// Requires n >= 1.
FamilyVector truncate_family_vector(const OperatorFamily& family, const FamilyVector& f, int n);

}  // namespace charmat
