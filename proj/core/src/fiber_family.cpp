#include "charmat/fiber_family.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "charmat/errors.hpp"
#include "charmat/selfadjoint.hpp"

namespace charmat {

namespace {

constexpr double kNormalityTolerance = 1e-10;

void require_same_grid(const ParameterGrid& a, const ParameterGrid& b, std::string_view what) {
  if (!(a == b)) throw InvariantViolation(std::string(what) + ": parameter grids differ");
}

void require_compatible(const OperatorFamily& a, const OperatorFamily& b, std::string_view what) {
  require_same_grid(a.grid(), b.grid(), what);
  if (a.fiber_dim() != b.fiber_dim()) {
    throw DimensionMismatch(std::string(what) + ": fiber dimensions differ");
  }
}

bool injective(const Matrix& t) {
  return smallest_singular_value(t) > kKernelThreshold * std::max(1.0, spectral_norm(t));
}

Matrix modulus(const Matrix& t) {
  return matfunc_hermitian(t.adjoint() * t,
                           [](double x) { return Complex(std::sqrt(std::max(x, 0.0)), 0.0); });
}

Matrix inverse_or_throw(const Matrix& t, std::string_view what) {
  auto inv = checked_inverse(t);
  if (!inv) throw NumericalFailure(std::string(what) + ": singular fiber");
  return *std::move(inv);
}

template <typename Pred>
PropertyEquivalence compare_property(std::string name, const Matrix& assembled,
                                     const OperatorFamily& family, Pred pred) {
  PropertyEquivalence p;
  p.name = std::move(name);
  p.assembled = pred(assembled);
  p.all_fibers = std::all_of(family.fibers().begin(), family.fibers().end(), pred);
  return p;
}

}  // namespace

ParameterGrid::ParameterGrid(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty()) throw InvariantViolation("ParameterGrid: at least one node is required");
  if (nodes_.size() != weights_.size()) {
    throw InvariantViolation("ParameterGrid: " + std::to_string(nodes_.size()) + " nodes but " +
                             std::to_string(weights_.size()) + " weights");
  }
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (!std::isfinite(nodes_[k])) throw InvariantViolation("ParameterGrid: non-finite node");
    if (k > 0 && !(nodes_[k] > nodes_[k - 1])) {
      throw InvariantViolation("ParameterGrid: nodes must be strictly increasing");
    }
    if (!(weights_[k] > 0.0) || !std::isfinite(weights_[k])) {
      throw InvariantViolation("ParameterGrid: weights must be positive and finite");
    }
  }
}

ParameterGrid ParameterGrid::trapezoidal(std::vector<double> nodes) {
  const std::size_t m = nodes.size();
  std::vector<double> weights(m, 1.0);
  if (m >= 2) {
    weights.front() = 0.5 * (nodes[1] - nodes[0]);
    weights.back() = 0.5 * (nodes[m - 1] - nodes[m - 2]);
    for (std::size_t k = 1; k + 1 < m; ++k) weights[k] = 0.5 * (nodes[k + 1] - nodes[k - 1]);
  }
  return ParameterGrid(std::move(nodes), std::move(weights));
}

ParameterGrid ParameterGrid::uniform(double a, double b, std::size_t count) {
  if (count == 0) throw InvariantViolation("ParameterGrid::uniform: count must be positive");
  std::vector<double> nodes(count, a);
  for (std::size_t k = 1; k < count; ++k) {
    nodes[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  return trapezoidal(std::move(nodes));
}

OperatorFamily::OperatorFamily(ParameterGrid grid, std::vector<Matrix> fibers)
    : grid_(std::move(grid)), fibers_(std::move(fibers)) {
  if (fibers_.size() != grid_.size()) {
    throw DimensionMismatch("OperatorFamily: " + std::to_string(fibers_.size()) +
                            " fibers for " + std::to_string(grid_.size()) + " nodes");
  }
  const Index n = fibers_.front().rows();
  if (n == 0) throw DimensionMismatch("OperatorFamily: empty fiber");
  for (std::size_t k = 0; k < fibers_.size(); ++k) {
    const Matrix& f = fibers_[k];
    if (f.rows() != n || f.cols() != n) {
      throw DimensionMismatch("OperatorFamily: fiber " + std::to_string(k) + " is " +
                              std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                              ", expected " + std::to_string(n) + "x" + std::to_string(n));
    }
    require_finite(f, "OperatorFamily");
  }
}

Complex family_inner(const FamilyVector& f, const FamilyVector& g) {
  require_same_grid(f.grid, g.grid, "family_inner");
  if (f.sections.size() != f.grid.size() || g.sections.size() != g.grid.size()) {
    throw DimensionMismatch("family_inner: one section per node is required");
  }
  Complex sum = 0.0;
  for (std::size_t k = 0; k < f.sections.size(); ++k) {
    sum += f.grid.weights()[k] * inner_product(f.sections[k], g.sections[k]);
  }
  return sum;
}

double family_l2_norm(const FamilyVector& f) { return std::sqrt(family_inner(f, f).real()); }

Matrix block_diagonal(std::span<const Matrix> blocks) {
  Index rows = 0;
  Index cols = 0;
  for (const Matrix& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out = Matrix::Zero(rows, cols);
  Index r = 0;
  Index c = 0;
  for (const Matrix& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

DirectIntegralOperator::DirectIntegralOperator(OperatorFamily family)
    : family_(std::move(family)), assembled_(block_diagonal(family_.fibers())) {}

FamilyVector DirectIntegralOperator::apply(const FamilyVector& f) const {
  require_same_grid(family_.grid(), f.grid, "DirectIntegralOperator::apply");
  if (f.sections.size() != family_.size()) {
    throw DimensionMismatch("DirectIntegralOperator::apply: one section per node is required");
  }
  FamilyVector out{f.grid, {}};
  out.sections.reserve(f.sections.size());
  for (std::size_t k = 0; k < f.sections.size(); ++k) {
    if (f.sections[k].size() != family_.fiber_dim()) {
      throw DimensionMismatch("DirectIntegralOperator::apply: section dimension mismatch");
    }
    out.sections.push_back(family_.fiber(k) * f.sections[k]);
  }
  return out;
}

DirectIntegralOperator direct_integral(const OperatorFamily& family) {
  return DirectIntegralOperator(family);
}

double family_norm(const OperatorFamily& family) {
  double norm = 0.0;
  for (const Matrix& f : family.fibers()) norm = std::max(norm, spectral_norm(f));
  return norm;
}

FiberwiseCharacteristic char_matrix_fiberwise(const OperatorFamily& family) {
  FiberwiseCharacteristic out;
  out.fibers.reserve(family.size());
  for (const Matrix& f : family.fibers()) out.fibers.push_back(char_matrix(f));

  const CharacteristicMatrix whole = char_matrix(direct_integral(family).assembled());
  const auto assemble = [&](Matrix CharacteristicMatrix::*block) {
    std::vector<Matrix> blocks;
    blocks.reserve(out.fibers.size());
    for (const auto& p : out.fibers) blocks.push_back(p.*block);
    return block_diagonal(blocks);
  };
  for (Matrix CharacteristicMatrix::*block :
       {&CharacteristicMatrix::p11, &CharacteristicMatrix::p12, &CharacteristicMatrix::p21,
        &CharacteristicMatrix::p22}) {
    const Matrix fiberwise = assemble(block);
    out.residual = std::max(out.residual, (whole.*block - fiberwise).norm());
  }
  return out;
}

bool DecompositionReport::pass() const {
  return std::all_of(identities.begin(), identities.end(),
                     [](const DecompositionItem& i) { return !i.applicable || i.pass; }) &&
         std::all_of(properties.begin(), properties.end(),
                     [](const PropertyEquivalence& p) { return p.consistent(); });
}

const DecompositionItem& DecompositionReport::identity(std::string_view name) const {
  for (const auto& i : identities)
    if (i.name == name) return i;
  throw InvariantViolation("DecompositionReport: no identity named " + std::string(name));
}

const PropertyEquivalence& DecompositionReport::property(std::string_view name) const {
  for (const auto& p : properties)
    if (p.name == name) return p;
  throw InvariantViolation("DecompositionReport: no property named " + std::string(name));
}

Matrix evaluate_polynomial(const Polynomial& p, const Matrix& a) {
  require_square(a, "evaluate_polynomial");
  const Index n = a.rows();
  Matrix acc = Matrix::Zero(n, n);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = a * acc + *it * identity(n);
  return acc;
}

DecompositionReport decomposition_suite(const OperatorFamily& family, const Polynomial& p,
                                        double tol) {
  const Matrix whole = direct_integral(family).assembled();
  DecompositionReport report;

  const auto item = [&](std::string name, double residual) {
    DecompositionItem i;
    i.name = std::move(name);
    i.residual = residual;
    i.tolerance = tol;
    i.pass = residual <= tol;
    report.identities.push_back(std::move(i));
  };
  const auto skipped = [&](std::string name, std::string note) {
    DecompositionItem i;
    i.name = std::move(name);
    i.tolerance = tol;
    i.applicable = false;
    i.note = std::move(note);
    report.identities.push_back(std::move(i));
  };

  item("adjoint", relative_distance(whole.adjoint(),
                                    block_diagonal(family.map([](const Matrix& t) -> Matrix {
                                                           return t.adjoint();
                                                         }).fibers())));
  item("modulus", relative_distance(modulus(whole), block_diagonal(family.map(modulus).fibers())));

  const bool fibers_injective =
      std::all_of(family.fibers().begin(), family.fibers().end(), injective);
  if (fibers_injective) {
    const auto inv = [](const Matrix& t) { return inverse_or_throw(t, "decomposition_suite"); };
    item("inverse", relative_distance(inv(whole), block_diagonal(family.map(inv).fibers())));
  } else {
    skipped("inverse", "some fiber has a nontrivial kernel");
  }

  const auto is_normal = [](const Matrix& t) { return normality_defect(t) <= kNormalityTolerance; };
  if (std::all_of(family.fibers().begin(), family.fibers().end(), is_normal)) {
    const auto poly = [&p](const Matrix& t) { return evaluate_polynomial(p, t); };
    item("polynomial", relative_distance(poly(whole), block_diagonal(family.map(poly).fibers())));
  } else {
    skipped("polynomial", "some fiber is not normal");
  }

  const auto self_adjoint = [](const Matrix& t) { return is_hermitian(t); };
  report.properties.push_back(compare_property("self_adjoint", whole, family, self_adjoint));
  // Everywhere defined symmetric operators are self-adjoint.
  report.properties.push_back(compare_property("symmetric", whole, family, self_adjoint));
  report.properties.push_back(compare_property("normal", whole, family, is_normal));
  report.properties.push_back(compare_property("injective", whole, family, injective));

  const auto nonnegative = [](const Matrix& t) {
    const double scale = std::max(1.0, spectral_norm(t));
    return eigvals_hermitian(t).minCoeff() >= -1e-12 * scale;
  };
  PropertyEquivalence positivity;
  positivity.name = "nonnegative";
  if (report.property("self_adjoint").assembled) {
    positivity = compare_property("nonnegative", whole, family, nonnegative);
  } else {
    positivity.applicable = false;
  }
  report.properties.push_back(positivity);
  return report;
}

InclusionReport inclusion_check(const OperatorFamily& t, const OperatorFamily& s, double tol) {
  require_compatible(t, s, "inclusion_check");
  InclusionReport r;
  r.assembled_distance = relative_distance(direct_integral(t).assembled(),
                                           direct_integral(s).assembled());
  for (std::size_t k = 0; k < t.size(); ++k) {
    r.max_fiber_distance =
        std::max(r.max_fiber_distance, relative_distance(t.fiber(k), s.fiber(k)));
  }
  r.assembled_included = r.assembled_distance <= tol;
  r.fibers_included = r.max_fiber_distance <= tol;
  return r;
}

OperatorFamily lennon_sum(const OperatorFamily& a, const OperatorFamily& b) {
  require_compatible(a, b, "lennon_sum");
  std::vector<Matrix> out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a.fiber(k) + b.fiber(k));
  return OperatorFamily(a.grid(), std::move(out));
}

OperatorFamily lennon_product(const OperatorFamily& a, const OperatorFamily& b) {
  require_compatible(a, b, "lennon_product");
  std::vector<Matrix> out;
  out.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a.fiber(k) * b.fiber(k));
  return OperatorFamily(a.grid(), std::move(out));
}

OperatorFamily form_resolvents(const OperatorFamily& family, std::span<const Complex> alpha) {
  if (alpha.size() != family.size()) {
    throw DimensionMismatch("form_resolvents: one spectral parameter per node is required");
  }
  std::vector<Matrix> out;
  out.reserve(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) out.push_back(resolvent(family.fiber(k), alpha[k]));
  return OperatorFamily(family.grid(), std::move(out));
}

OperatorFamily resolvent_reconstruct(const OperatorFamily& resolvents,
                                     std::span<const Complex> alpha) {
  if (alpha.size() != resolvents.size()) {
    throw DimensionMismatch("resolvent_reconstruct: one spectral parameter per node is required");
  }
  const Index n = resolvents.fiber_dim();
  std::vector<Matrix> out;
  out.reserve(resolvents.size());
  for (std::size_t k = 0; k < resolvents.size(); ++k) {
    out.push_back(alpha[k] * identity(n) +
                  inverse_or_throw(resolvents.fiber(k), "resolvent_reconstruct"));
  }
  return OperatorFamily(resolvents.grid(), std::move(out));
}

bool ResolventLimitReport::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

bool ResolventLimitReport::tail_nonincreasing(std::size_t fiber) const {
  const auto& g = gaps.at(fiber);
  for (std::size_t n = g.size() / 2 + 1; n < g.size(); ++n) {
    // Equal gaps within rounding count as nonincreasing.
    if (g[n] > g[n - 1] * (1.0 + 1e-12) + 1e-15) return false;
  }
  return true;
}

ResolventLimitReport resolvent_limit_check(std::span<const OperatorFamily> sequence,
                                           const OperatorFamily& limit, Complex z, double tol) {
  if (z.imag() == 0.0) throw InvariantViolation("resolvent_limit_check: z must be non-real");
  if (sequence.empty()) throw InvariantViolation("resolvent_limit_check: empty sequence");
  const auto require_hermitian = [](const OperatorFamily& fam) {
    for (const Matrix& f : fam.fibers()) {
      if (!is_hermitian(f)) throw NotHermitian("resolvent_limit_check: fiber is not Hermitian");
    }
  };
  require_hermitian(limit);
  for (const auto& fam : sequence) {
    require_compatible(fam, limit, "resolvent_limit_check");
    require_hermitian(fam);
  }

  ResolventLimitReport report;
  report.gaps.assign(limit.size(), {});
  for (std::size_t k = 0; k < limit.size(); ++k) {
    const Matrix target = resolvent(limit.fiber(k), z);
    for (const auto& fam : sequence) {
      report.gaps[k].push_back((resolvent(fam.fiber(k), z) - target).norm());
    }
  }
  for (std::size_t k = 0; k < limit.size(); ++k) {
    report.converged.push_back(report.gaps[k].back() <= tol && report.tail_nonincreasing(k));
  }
  return report;
}

FamilyVector truncate_family_vector(const OperatorFamily& family, const FamilyVector& f, int n) {
  if (n < 1) throw InvariantViolation("truncate_family_vector: n must be a positive integer");
  require_same_grid(family.grid(), f.grid, "truncate_family_vector");
  if (f.sections.size() != family.size()) {
    throw DimensionMismatch("truncate_family_vector: one section per node is required");
  }
  FamilyVector out = f;
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (f.sections[k].size() != family.fiber_dim()) {
      throw DimensionMismatch("truncate_family_vector: section dimension mismatch");
    }
    const double action = (family.fiber(k) * f.sections[k]).norm();
    const double bound = static_cast<double>(n);
    const bool inside = action <= bound && std::abs(family.grid().nodes()[k]) <= bound;
    if (!inside) out.sections[k].setZero();
  }
  return out;
}

}  // namespace charmat
