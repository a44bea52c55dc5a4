#include <benchmark/benchmark.h>

#include "koszul/bounds.hpp"
#include "koszul/exact_linalg.hpp"
#include "koszul/flattening.hpp"
#include "koszul/keylemma.hpp"
#include "koszul/random.hpp"
#include "koszul/tensor.hpp"

using namespace koszul;

namespace {

Matrix random_matrix(std::size_t n, Rng& rng) {
  std::vector<Rational> e;
  for (std::size_t i = 0; i < n * n; ++i) e.emplace_back(rng.uniform(-9, 9));
  return Matrix::from_entries(n, n, std::move(e));
}

std::vector<Matrix> random_slices(int p, std::size_t n, Rng& rng) {
  std::vector<Matrix> x{Matrix::identity(n)};
  for (int k = 1; k <= 2 * p; ++k) x.push_back(random_matrix(n, rng));
  return x;
}

void BM_det(benchmark::State& state) {
  Rng rng(1);
  const Matrix m = random_matrix(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(det_exact(m));
}
BENCHMARK(BM_det)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_rank(benchmark::State& state) {
  Rng rng(2);
  const Matrix m = random_matrix(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank_exact(m));
}
BENCHMARK(BM_rank)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_build_flattening(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_flattening(p));
}
BENCHMARK(BM_build_flattening)->DenseRange(1, 5);

void BM_qqbar_pattern(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qqbar_pattern(p));
}
BENCHMARK(BM_qqbar_pattern)->DenseRange(1, 5);

void BM_flattening_det(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  Rng rng(3);
  const SliceFamily fam(p, random_slices(p, n, rng));
  const auto pattern = build_flattening(p).pattern;
  for (auto _ : state) benchmark::DoNotOptimize(det_exact(assemble(pattern, fam)));
}
BENCHMARK(BM_flattening_det)->Args({1, 4})->Args({2, 3})->Args({2, 4});

void BM_qqbar_det(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  Rng rng(4);
  const SliceFamily fam(p, random_slices(p, n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(det_exact(qqbar(fam).value));
}
BENCHMARK(BM_qqbar_det)->Args({1, 4})->Args({2, 3})->Args({2, 4});

void BM_certify_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tensor3 t = matmul_tensor(n, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(certify_border_rank(t, CertifyOptions{}));
}
BENCHMARK(BM_certify_matmul)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_crossover(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(crossover(BoundKind::mr(3), BoundKind::blaser(), 10000));
}
BENCHMARK(BM_crossover);

}  // namespace

BENCHMARK_MAIN();
