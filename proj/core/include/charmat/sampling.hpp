#pragma once

// Seeded random instances for property checks, benchmarks and the CLI.
// Entries are i.i.d. standard complex Gaussians (real and imaginary parts
// N(0, 1/2)), so results are reproducible for a fixed seed and toolchain.

#include <cstdint>
#include <random>

#include "charmat/hilbert.hpp"

namespace charmat {

using Rng = std::mt19937_64;

Matrix random_matrix(Rng& rng, Index rows, Index cols);
Matrix random_square(Rng& rng, Index n);
Matrix random_hermitian(Rng& rng, Index n);
Vector random_vector(Rng& rng, Index n);
Vector random_unit_vector(Rng& rng, Index n);

}  // namespace charmat
