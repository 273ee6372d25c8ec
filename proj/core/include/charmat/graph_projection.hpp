#pragma once

// Characteristic matrix of an operator T: the four n x n blocks of the
// orthogonal projection of H (+) H onto the graph {<f, Tf>}.
//
// Two independent routes are provided. char_matrix() evaluates the closed
// forms
//   p11 = (T*T + I)^-1        p12 = T*(TT* + I)^-1
//   p21 = T(T*T + I)^-1       p22 = I - (TT* + I)^-1
// through Hermitian positive definite solves, taking the Cholesky factor of
// T*T + I from a QR factorization of [T; I] so that T*T is never formed;
// char_matrix_oracle()
// orthonormalizes the columns of [I; T] and reads the blocks off QQ*.

#include <optional>
#include <string>
#include <vector>

#include "charmat/hilbert.hpp"

namespace charmat {

// Default residual tolerance for every identity check in this module.
inline constexpr double kIdentityTolerance = 1e-10;
// Singular values at or below kKernelThreshold * max(1, ||M||_2) count as zero.
inline constexpr double kKernelThreshold = 1e-10;

struct CharacteristicMatrix {
  Matrix p11;
  Matrix p12;
  Matrix p21;
  Matrix p22;

  Index dim() const { return p11.rows(); }
  // The 2n x 2n projection [[p11, p12], [p21, p22]].
  Matrix assembled() const;
  static CharacteristicMatrix from_assembled(const Matrix& p);
};

// Largest Frobenius distance between corresponding blocks.
double blockwise_distance(const CharacteristicMatrix& a, const CharacteristicMatrix& b);

CharacteristicMatrix char_matrix(const Matrix& t);
CharacteristicMatrix char_matrix_oracle(const Matrix& t);

enum class IdentityKind {
  hermitian_blocks,  // p11, p22 Hermitian and p21 = p12*
  idempotent,        // P^2 = P on the assembled projection
  kernel_trivial,    // ker p11 = ker(I - p22) = {0}
  adjoint_graph,     // block form of the characteristic matrix of T*
  inverse_graph,     // block form of the characteristic matrix of T^-1
  graph_relation,    // p21 = T p11 and p22 = T p12
  adjoint_relation,  // I - p11 = T* p21 and p12 = T*(I - p22)
};

std::string_view to_string(IdentityKind kind);

struct IdentityCheck {
  IdentityKind kind;
  // Upper-bound checks pass when value <= threshold. The kernel check is a
  // lower bound: value is the smaller of sigma_min(p11), sigma_min(I - p22)
  // and passes when it exceeds threshold.
  double value = 0.0;
  double threshold = 0.0;
  bool lower_bound = false;
  bool applicable = true;
  bool pass = true;
  std::string note;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  bool pass() const;
  const IdentityCheck& at(IdentityKind kind) const;
};

IdentityReport verify_identities(const Matrix& t, const CharacteristicMatrix& p,
                                 double tol = kIdentityTolerance);

// Characteristic matrix of T* from that of T: (I - p22, p21, p12, I - p11).
CharacteristicMatrix adjoint_char_matrix(const CharacteristicMatrix& p);

// True when I - p11 is injective, which holds exactly when T is.
bool operator_is_injective(const CharacteristicMatrix& p, double threshold = kKernelThreshold);

// Characteristic matrix of T^-1 from that of T: (p22, p21, p12, p11).
// Throws KernelNontrivial when I - p11 has a numerical kernel.
CharacteristicMatrix inverse_char_matrix(const CharacteristicMatrix& p,
                                         double threshold = kKernelThreshold);

// Recovers T = p21 p11^-1. Throws NumericalFailure if p11 is singular.
Matrix operator_from_char_matrix(const CharacteristicMatrix& p,
                                 double threshold = kKernelThreshold);

// ||[T(T*T + I)^-1]* - T*(TT* + I)^-1||_F, the block symmetry p21* = p12
// written in terms of T.
double adjoint_block_residual(const Matrix& t);

}  // namespace charmat
