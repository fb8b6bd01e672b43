#include <benchmark/benchmark.h>

#include <random>

#include "friable/arith.hpp"
#include "friable/semigroup.hpp"
#include "friable/sets.hpp"
#include "friable/sieve.hpp"

namespace {

void BM_Sieve(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  const friable::SieveOptions opts{std::uint64_t{1} << 31, static_cast<unsigned>(state.range(1))};
  for (auto _ : state) {
    friable::PrimeSieve s(limit, opts);
    benchmark::DoNotOptimize(s.count());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(limit));
}
BENCHMARK(BM_Sieve)->Args({1 << 20, 1})->Args({1 << 26, 1})->Args({1 << 26, 4})->Unit(benchmark::kMillisecond);

void BM_IsPrime(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<std::uint64_t> xs(4096);
  for (auto& x : xs) x = (rng() >> 1) | 1;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(friable::is_prime(xs[i++ & 4095]));
}
BENCHMARK(BM_IsPrime);

void BM_Factorize(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<std::uint64_t> xs(256);
  for (auto& x : xs) x = 2 + (rng() >> 2);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(friable::factorize(xs[i++ & 255]));
}
BENCHMARK(BM_Factorize)->Unit(benchmark::kMicrosecond);

void BM_Theorem1(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(friable::verify_theorem1(static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(BM_Theorem1)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_DecomposeAdditive(benchmark::State& state) {
  const auto target = friable::smooth_set(friable::YPolicy::composites(), 100000).restrict(9, 100000);
  const friable::SearchBounds bounds{static_cast<std::size_t>(state.range(0)),
                                     static_cast<std::uint64_t>(state.range(1)),
                                     static_cast<unsigned>(state.range(2))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        friable::decompose_search(target, friable::DecompositionKind::Additive, bounds));
  }
}
BENCHMARK(BM_DecomposeAdditive)->Args({3, 50, 1})->Args({3, 50, 4})->Args({4, 5, 1})->Unit(benchmark::kMillisecond);

void BM_HFamily(benchmark::State& state) {
  const friable::GammaSemigroup g({2, 3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(friable::h_family(g, static_cast<unsigned>(state.range(0)), true, 1000000));
  }
}
BENCHMARK(BM_HFamily)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
