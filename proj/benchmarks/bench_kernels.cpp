#include <benchmark/benchmark.h>

#include <random>

#include "metabel/algcore.hpp"
#include "metabel/cohomo.hpp"
#include "metabel/dimone.hpp"
#include "metabel/exactla.hpp"

using namespace metabel;

namespace {

Matrix random_matrix(std::mt19937_64& rng, PrimeField f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, static_cast<std::int64_t>(rng() % f.p()));
  return m;
}

void BM_Rref(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const PrimeField f(251);
  const Matrix m = random_matrix(rng, f, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_Rref)->Arg(4)->Arg(16)->Arg(64);

void BM_GlEnumerate(benchmark::State& state) {
  const PrimeField f(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gl_enumerate(2, f));
}
BENCHMARK(BM_GlEnumerate)->Arg(3)->Arg(7)->Arg(13);

void BM_FindIsomorphism(benchmark::State& state) {
  const PrimeField f(3);
  const Algebra a = std::get<Algebra>(catalog("alg3:k3_minus1", f));
  const Algebra b = transport(a, Matrix::from_ints(f, {{1, 1, 0}, {0, 1, 0}, {2, 0, 1}}));
  for (auto _ : state) benchmark::DoNotOptimize(find_isomorphism(a, b));
}
BENCHMARK(BM_FindIsomorphism);

void BM_AssociativeCorpus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_associative_algebras(3, PrimeField(2)));
}
BENCHMARK(BM_AssociativeCorpus)->Unit(benchmark::kMillisecond);

void BM_Theorem2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theorem2_agreement(2, PrimeField(3)));
}
BENCHMARK(BM_Theorem2)->Unit(benchmark::kMillisecond);

void BM_ExtEnumerate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ext_enumerate(1, 2, PrimeField(3)));
}
BENCHMARK(BM_ExtEnumerate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
