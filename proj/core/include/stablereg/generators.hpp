#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "stablereg/graph.hpp"
#include "stablereg/rational.hpp"

namespace stablereg {

/// Seeded instance families. Identical specs generate identical graphs; the
/// random family draws from the named PRNG below.
namespace family {

/// k x k graph with R(a_i, b_j) iff i <= j.
struct HalfGraph {
  std::uint32_t k = 1;
};

struct CompleteBipartite {
  std::uint32_t n_left = 1;
  std::uint32_t n_right = 1;
};

struct EmptyBipartite {
  std::uint32_t n_left = 1;
  std::uint32_t n_right = 1;
};

/// Disjoint complete blocks V_t x W_t; the size lists partition both sides.
/// The seed is recorded for forward compatibility with perturbed variants and
/// does not affect the v1 output.
struct RectangleUnion {
  std::vector<std::uint32_t> left_sizes;
  std::vector<std::uint32_t> right_sizes;
  std::uint64_t seed = 0;
};

/// Each pair (a, b) is an edge iff the next PRNG draw falls below
/// floor(2^64 * density); draws proceed in row-major order.
struct RandomBipartite {
  std::uint32_t n_left = 1;
  std::uint32_t n_right = 1;
  Rational density;  // in [0, 1]
  std::uint64_t seed = 0;
};

}  // namespace family

using GeneratorSpec = std::variant<family::HalfGraph, family::CompleteBipartite,
                                   family::EmptyBipartite, family::RectangleUnion,
                                   family::RandomBipartite>;

/// PRNG algorithm identifier recorded in generator outputs.
inline constexpr const char* kPrngAlgorithm = "mt19937_64";

/// Pure function of the spec. Throws Errc::invalid_spec on empty sides,
/// out-of-range density, or mismatched block lists.
BipartiteGraph generate(const GeneratorSpec& spec);

}  // namespace stablereg
