#include <benchmark/benchmark.h>

#include "stablereg/generators.hpp"
#include "stablereg/regularity.hpp"
#include "stablereg/stability.hpp"
#include "stablereg/verify.hpp"

namespace {

using namespace stablereg;

family::RectangleUnion blocks(std::uint32_t r, std::uint32_t n) {
  family::RectangleUnion spec;
  spec.left_sizes.assign(r, n / r);
  spec.left_sizes[0] += n % r;
  spec.right_sizes = spec.left_sizes;
  return spec;
}

void BM_DecomposeRectangles(benchmark::State& state) {
  const auto g = generate(blocks(static_cast<std::uint32_t>(state.range(0)),
                                 static_cast<std::uint32_t>(state.range(1))));
  const auto mu = Measure::counting(g, Side::left);
  const auto nu = Measure::counting(g, Side::right);
  for (auto _ : state) {
    auto p = decompose(g, mu, nu, Rational(1, 10));
    benchmark::DoNotOptimize(p.iterations);
  }
}
BENCHMARK(BM_DecomposeRectangles)->Args({3, 64})->Args({3, 256})->Args({4, 512});

void BM_DecomposeRandom(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto g = generate(family::RandomBipartite{n, n, Rational(1, 2), 7});
  const auto mu = Measure::counting(g, Side::left);
  const auto nu = Measure::counting(g, Side::right);
  for (auto _ : state) {
    auto p = decompose(g, mu, nu, Rational(1, 20));
    benchmark::DoNotOptimize(p.iterations);
  }
}
BENCHMARK(BM_DecomposeRandom)->Arg(16)->Arg(32);

void BM_LadderHalfGraph(benchmark::State& state) {
  const auto k = static_cast<std::uint32_t>(state.range(0));
  const auto g = generate(family::HalfGraph{k});
  for (auto _ : state) {
    auto idx = ladder_index(g, k + 1);
    benchmark::DoNotOptimize(idx.k);
  }
}
BENCHMARK(BM_LadderHalfGraph)->Arg(5)->Arg(8);

void BM_SplittingRank(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto g = generate(family::RandomBipartite{n, n, Rational(1, 2), 11});
  const auto full = VertexSet::full_set(Side::left, n);
  for (auto _ : state) {
    auto r = splitting_rank(g, full);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_SplittingRank)->Arg(12)->Arg(16);

void BM_ClassifyPair(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto g = generate(family::RandomBipartite{n, n, Rational(1, 2), 3});
  const auto mu = Measure::counting(g, Side::left);
  const auto nu = Measure::counting(g, Side::right);
  const auto A = VertexSet::full_set(Side::left, n);
  const auto B = VertexSet::full_set(Side::right, n);
  for (auto _ : state) {
    auto v = classify_pair(g, mu, nu, A, B, Rational(1, 10));
    benchmark::DoNotOptimize(v.has_value());
  }
}
BENCHMARK(BM_ClassifyPair)->Arg(64)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
