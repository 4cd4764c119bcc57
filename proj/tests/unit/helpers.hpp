#pragma once

#include <random>
#include <vector>

#include "stablereg/generators.hpp"
#include "stablereg/graph.hpp"
#include "stablereg/measure.hpp"

namespace test_helpers {

using namespace stablereg;

inline BipartiteGraph half_graph(std::uint32_t k) { return generate(family::HalfGraph{k}); }

inline BipartiteGraph complete_graph(std::uint32_t n, std::uint32_t m) {
  return generate(family::CompleteBipartite{n, m});
}

inline BipartiteGraph empty_graph(std::uint32_t n, std::uint32_t m) {
  return generate(family::EmptyBipartite{n, m});
}

inline BipartiteGraph random_graph(std::uint32_t n, std::uint32_t m, std::uint64_t seed,
                                   Rational density = Rational(1, 2)) {
  return generate(family::RandomBipartite{n, m, density, seed});
}

inline Bitset random_subset(std::mt19937_64& rng, std::uint32_t n) {
  Bitset b(n);
  for (std::uint32_t i = 0; i < n; ++i)
    if (rng() & 1) b.set(i);
  return b;
}

inline Bitset random_nonempty_subset(std::mt19937_64& rng, std::uint32_t n) {
  while (true) {
    Bitset b = random_subset(rng, n);
    if (!b.empty()) return b;
  }
}

/// Random rational weights summing to exactly 1; numerators drawn in [lo, hi].
/// Vertices listed in `zero_at` get weight zero.
inline Measure random_measure(std::mt19937_64& rng, Side side, std::uint32_t n,
                              const std::vector<std::uint32_t>& zero_at = {}, std::uint64_t lo = 1,
                              std::uint64_t hi = 8) {
  std::vector<Int> nums(n);
  Int total = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    nums[v] = Int(lo + rng() % (hi - lo + 1));
  }
  for (auto v : zero_at) nums[v] = 0;
  for (const auto& x : nums) total += x;
  std::vector<Rational> weights;
  weights.reserve(n);
  for (const auto& x : nums) weights.emplace_back(x, total);
  return Measure::from_weights(side, weights);
}

}  // namespace test_helpers
