#include "charmat/sampling.hpp"

#include <cmath>

namespace charmat {

namespace {

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

Matrix random_matrix(Rng& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = gaussian(rng);
  return m;
}

Matrix random_square(Rng& rng, Index n) { return random_matrix(rng, n, n); }

Matrix random_hermitian(Rng& rng, Index n) {
  const Matrix a = random_square(rng, n);
  return (a + a.adjoint()) * 0.5;
}

Vector random_vector(Rng& rng, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = gaussian(rng);
  return v;
}

Vector random_unit_vector(Rng& rng, Index n) {
  Vector v = random_vector(rng, n);
  while (v.norm() == 0.0) v = random_vector(rng, n);
  return v / v.norm();
}

}  // namespace charmat
