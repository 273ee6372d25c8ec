#include <benchmark/benchmark.h>

#include "charmat/charmat.hpp"

using namespace charmat;

namespace {

void BM_CharMatrix(benchmark::State& state) {
  Rng rng(7);
  const Matrix t = random_square(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(char_matrix(t));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CharMatrix)->RangeMultiplier(2)->Range(4, 256)->Complexity(benchmark::oNCubed);

void BM_CharMatrixOracle(benchmark::State& state) {
  Rng rng(7);
  const Matrix t = random_square(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(char_matrix_oracle(t));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CharMatrixOracle)->RangeMultiplier(2)->Range(4, 256)->Complexity(benchmark::oNCubed);

void BM_VerifyIdentities(benchmark::State& state) {
  Rng rng(7);
  const Matrix t = random_square(rng, state.range(0));
  const auto p = char_matrix(t);
  for (auto _ : state) benchmark::DoNotOptimize(verify_identities(t, p));
}
BENCHMARK(BM_VerifyIdentities)->Arg(16)->Arg(64);

void BM_EigvalsHermitian(benchmark::State& state) {
  Rng rng(7);
  const Matrix t = random_hermitian(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eigvals_hermitian(t));
}
BENCHMARK(BM_EigvalsHermitian)->RangeMultiplier(4)->Range(16, 1024);

void BM_DirichletSpectrum(benchmark::State& state) {
  const Matrix l = laplacian(GridDiscretization::interior(state.range(0)), BoundaryCondition::dirichlet);
  for (auto _ : state) benchmark::DoNotOptimize(eigvals_hermitian(l));
}
BENCHMARK(BM_DirichletSpectrum)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SeparationWitness(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(separation_witness(state.range(0)));
}
BENCHMARK(BM_SeparationWitness)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_FiberwiseCharacteristic(benchmark::State& state) {
  Rng rng(7);
  std::vector<Matrix> fibers;
  std::vector<double> nodes;
  for (int k = 0; k < state.range(0); ++k) {
    fibers.push_back(random_square(rng, 6));
    nodes.push_back(k);
  }
  const OperatorFamily family(ParameterGrid::trapezoidal(nodes), fibers);
  for (auto _ : state) benchmark::DoNotOptimize(char_matrix_fiberwise(family));
}
BENCHMARK(BM_FiberwiseCharacteristic)->Arg(5)->Arg(40);

void BM_FourierResolventCheck(benchmark::State& state) {
  Rng rng(7);
  const Matrix t = random_hermitian(rng, 4);
  const Vector f = random_unit_vector(rng, 4);
  const Vector g = random_unit_vector(rng, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fourier_resolvent_check(t, Complex(0.3, 1.5), f, g, 20.0, 40000));
  }
}
BENCHMARK(BM_FourierResolventCheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
