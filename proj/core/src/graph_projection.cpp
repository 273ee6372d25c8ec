#include "charmat/graph_projection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "charmat/errors.hpp"

namespace charmat {

namespace {

Matrix hermitian_part(const Matrix& a) { return (a + a.adjoint()) * 0.5; }

// (B*B + I)^-1 without forming B*B. Householder QR of [B; I] gives the
// Cholesky factor R of B*B + I, whose condition number is only the square
// root of that of B*B + I; the inverse is then R^-1 R^-*.
Matrix gram_shifted_inverse(const Matrix& b, std::string_view what) {
  const Index n = b.cols();
  Matrix stacked(b.rows() + n, n);
  stacked << b, identity(n);
  const Eigen::HouseholderQR<Matrix> qr(stacked);
  const Matrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const Matrix r_inv = r.triangularView<Eigen::Upper>().solve(identity(n));
  if (!all_finite(r_inv)) {
    throw NumericalFailure(std::string(what) + ": triangular factor is singular");
  }
  return hermitian_part(r_inv * r_inv.adjoint());
}

void require_operator(const Matrix& t, std::string_view what) {
  require_square(t, what);
  require_finite(t, what);
  if (t.rows() == 0) throw InvariantViolation(std::string(what) + ": empty matrix");
}

void require_blocks(const CharacteristicMatrix& p, std::string_view what) {
  const Index n = p.p11.rows();
  for (const Matrix* block : {&p.p11, &p.p12, &p.p21, &p.p22}) {
    if (block->rows() != n || block->cols() != n) {
      throw DimensionMismatch(std::string(what) + ": blocks must all be " +
                              std::to_string(n) + "x" + std::to_string(n));
    }
  }
}

double kernel_threshold(const Matrix& m, double threshold) {
  return threshold * std::max(1.0, spectral_norm(m));
}

// Orthonormal basis for the column span of `a` by modified Gram-Schmidt with
// a second full pass against every accepted column.
Matrix orthonormal_columns(const Matrix& a) {
  Matrix q = a;
  for (Index j = 0; j < q.cols(); ++j) {
    const double original = q.col(j).norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Index k = 0; k < j; ++k) {
        const Complex c = q.col(k).dot(q.col(j));
        q.col(j) -= c * q.col(k);
      }
    }
    const double remaining = q.col(j).norm();
    if (!(remaining > 1e-14 * std::max(1.0, original))) {
      throw NumericalFailure("char_matrix_oracle: graph basis column " + std::to_string(j) +
                             " became linearly dependent");
    }
    q.col(j) /= remaining;
  }
  return q;
}

IdentityCheck upper_check(IdentityKind kind, double value, double tol) {
  IdentityCheck c;
  c.kind = kind;
  c.value = value;
  c.threshold = tol;
  c.pass = value <= tol;
  return c;
}

}  // namespace

Matrix CharacteristicMatrix::assembled() const {
  const Index n = dim();
  Matrix p(2 * n, 2 * n);
  p << p11, p12, p21, p22;
  return p;
}

CharacteristicMatrix CharacteristicMatrix::from_assembled(const Matrix& p) {
  if (p.rows() != p.cols() || p.rows() % 2 != 0) {
    throw DimensionMismatch("from_assembled: expected a 2n x 2n matrix");
  }
  const Index n = p.rows() / 2;
  return {p.topLeftCorner(n, n), p.topRightCorner(n, n), p.bottomLeftCorner(n, n),
          p.bottomRightCorner(n, n)};
}

double blockwise_distance(const CharacteristicMatrix& a, const CharacteristicMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("blockwise_distance: block sizes differ");
  return std::max({(a.p11 - b.p11).norm(), (a.p12 - b.p12).norm(), (a.p21 - b.p21).norm(),
                   (a.p22 - b.p22).norm()});
}

CharacteristicMatrix char_matrix(const Matrix& t) {
  require_operator(t, "char_matrix");
  const Index n = t.rows();
  const Matrix tstar = t.adjoint();
  const Matrix p11 = gram_shifted_inverse(t, "char_matrix");
  const Matrix co = gram_shifted_inverse(tstar, "char_matrix");
  return {p11, tstar * co, t * p11, identity(n) - co};
}

CharacteristicMatrix char_matrix_oracle(const Matrix& t) {
  require_operator(t, "char_matrix_oracle");
  const Index n = t.rows();
  Matrix basis(2 * n, n);
  basis << identity(n), t;
  const Matrix q = orthonormal_columns(basis);
  return CharacteristicMatrix::from_assembled(q * q.adjoint());
}

std::string_view to_string(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::hermitian_blocks: return "hermitian_blocks";
    case IdentityKind::idempotent: return "idempotent";
    case IdentityKind::kernel_trivial: return "kernel_trivial";
    case IdentityKind::adjoint_graph: return "adjoint_graph";
    case IdentityKind::inverse_graph: return "inverse_graph";
    case IdentityKind::graph_relation: return "graph_relation";
    case IdentityKind::adjoint_relation: return "adjoint_relation";
  }
  return "unknown";
}

bool IdentityReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const IdentityCheck& c) { return !c.applicable || c.pass; });
}

const IdentityCheck& IdentityReport::at(IdentityKind kind) const {
  for (const auto& c : checks)
    if (c.kind == kind) return c;
  throw InvariantViolation("IdentityReport: no check named " + std::string(to_string(kind)));
}

IdentityReport verify_identities(const Matrix& t, const CharacteristicMatrix& p, double tol) {
  require_operator(t, "verify_identities");
  require_blocks(p, "verify_identities");
  if (p.dim() != t.rows()) throw DimensionMismatch("verify_identities: T and P sizes differ");
  const Index n = t.rows();
  const Matrix id = identity(n);
  const Matrix tstar = t.adjoint();

  IdentityReport report;

  const double herm = std::max({(p.p11 - p.p11.adjoint()).norm(),
                                (p.p22 - p.p22.adjoint()).norm(),
                                (p.p21 - p.p12.adjoint()).norm()});
  report.checks.push_back(upper_check(IdentityKind::hermitian_blocks, herm, tol));

  const Matrix full = p.assembled();
  report.checks.push_back(
      upper_check(IdentityKind::idempotent, (full * full - full).norm(), tol));

  {
    IdentityCheck c;
    c.kind = IdentityKind::kernel_trivial;
    c.lower_bound = true;
    const Matrix complement = id - p.p22;
    const double s11 = smallest_singular_value(p.p11);
    const double s22 = smallest_singular_value(complement);
    c.value = std::min(s11, s22);
    c.threshold = std::max(kernel_threshold(p.p11, kKernelThreshold),
                           kernel_threshold(complement, kKernelThreshold));
    c.pass = c.value > c.threshold;
    report.checks.push_back(c);
  }

  report.checks.push_back(upper_check(
      IdentityKind::adjoint_graph,
      blockwise_distance(adjoint_char_matrix(p), char_matrix(tstar)), tol));

  {
    IdentityCheck c;
    c.kind = IdentityKind::inverse_graph;
    // Inversion amplifies rounding by cond(T); one extra digit of slack.
    c.threshold = 10.0 * tol;
    const auto inv = operator_is_injective(p) ? checked_inverse(t, 0.0) : std::nullopt;
    if (inv) {
      c.value = blockwise_distance(inverse_char_matrix(p), char_matrix(*inv));
      c.pass = c.value <= c.threshold;
    } else {
      c.applicable = false;
      c.note = "T has a nontrivial kernel";
    }
    report.checks.push_back(c);
  }

  const double graph = std::max((p.p21 - t * p.p11).norm(), (p.p22 - t * p.p12).norm());
  report.checks.push_back(upper_check(IdentityKind::graph_relation, graph, tol));

  const double adj = std::max(((id - p.p11) - tstar * p.p21).norm(),
                              (p.p12 - tstar * (id - p.p22)).norm());
  report.checks.push_back(upper_check(IdentityKind::adjoint_relation, adj, tol));

  return report;
}

CharacteristicMatrix adjoint_char_matrix(const CharacteristicMatrix& p) {
  require_blocks(p, "adjoint_char_matrix");
  const Matrix id = identity(p.dim());
  return {id - p.p22, p.p21, p.p12, id - p.p11};
}

bool operator_is_injective(const CharacteristicMatrix& p, double threshold) {
  const Matrix complement = identity(p.dim()) - p.p11;
  return smallest_singular_value(complement) > kernel_threshold(complement, threshold);
}

CharacteristicMatrix inverse_char_matrix(const CharacteristicMatrix& p, double threshold) {
  require_blocks(p, "inverse_char_matrix");
  if (!operator_is_injective(p, threshold)) {
    throw KernelNontrivial("inverse_char_matrix: I - p11 has a nontrivial kernel, T is not injective");
  }
  return {p.p22, p.p21, p.p12, p.p11};
}

Matrix operator_from_char_matrix(const CharacteristicMatrix& p, double threshold) {
  require_blocks(p, "operator_from_char_matrix");
  const Matrix p11 = hermitian_part(p.p11);
  if (!(smallest_singular_value(p11) > kernel_threshold(p11, threshold))) {
    throw NumericalFailure("operator_from_char_matrix: p11 is numerically singular");
  }
  Eigen::LLT<Matrix> llt(p11);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("operator_from_char_matrix: p11 is not positive definite");
  }
  // T p11 = p21  <=>  p11 T* = p21*.
  return llt.solve(p.p21.adjoint()).adjoint();
}

double adjoint_block_residual(const Matrix& t) {
  require_operator(t, "adjoint_block_residual");
  const Matrix tstar = t.adjoint();
  const Matrix lower = t * gram_shifted_inverse(t, "adjoint_block_residual");
  const Matrix upper = tstar * gram_shifted_inverse(tstar, "adjoint_block_residual");
  return (lower.adjoint() - upper).norm();
}

}  // namespace charmat
