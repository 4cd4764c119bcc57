#include "stablereg/generators.hpp"

#include <numeric>
#include <random>

namespace stablereg {

namespace {

BipartiteGraph make_half_graph(const family::HalfGraph& spec) {
  require(spec.k >= 1, Errc::invalid_spec, "half graph needs k >= 1");
  std::vector<Edge> edges;
  edges.reserve(std::size_t{spec.k} * (spec.k + 1) / 2);
  for (std::uint32_t i = 0; i < spec.k; ++i)
    for (std::uint32_t j = i; j < spec.k; ++j) edges.emplace_back(i, j);
  return BipartiteGraph::from_edges(spec.k, spec.k, edges);
}

BipartiteGraph make_complete(std::uint32_t n, std::uint32_t m) {
  require(n >= 1 && m >= 1, Errc::invalid_spec, "sides must be nonempty");
  std::vector<Edge> edges;
  edges.reserve(std::size_t{n} * m);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < m; ++b) edges.emplace_back(a, b);
  return BipartiteGraph::from_edges(n, m, edges);
}

BipartiteGraph make_rectangle_union(const family::RectangleUnion& spec) {
  require(!spec.left_sizes.empty() && spec.left_sizes.size() == spec.right_sizes.size(),
          Errc::invalid_spec, "rectangle union needs matching nonempty block size lists");
  for (std::size_t t = 0; t < spec.left_sizes.size(); ++t)
    require(spec.left_sizes[t] >= 1 && spec.right_sizes[t] >= 1, Errc::invalid_spec,
            "rectangle blocks must be nonempty on both sides");
  const std::uint32_t n = std::accumulate(spec.left_sizes.begin(), spec.left_sizes.end(), 0u);
  const std::uint32_t m = std::accumulate(spec.right_sizes.begin(), spec.right_sizes.end(), 0u);
  std::vector<Edge> edges;
  std::uint32_t a0 = 0, b0 = 0;
  for (std::size_t t = 0; t < spec.left_sizes.size(); ++t) {
    for (std::uint32_t a = a0; a < a0 + spec.left_sizes[t]; ++a)
      for (std::uint32_t b = b0; b < b0 + spec.right_sizes[t]; ++b) edges.emplace_back(a, b);
    a0 += spec.left_sizes[t];
    b0 += spec.right_sizes[t];
  }
  return BipartiteGraph::from_edges(n, m, edges);
}

BipartiteGraph make_random(const family::RandomBipartite& spec) {
  require(spec.n_left >= 1 && spec.n_right >= 1, Errc::invalid_spec, "sides must be nonempty");
  require(spec.density >= 0 && spec.density <= 1, Errc::invalid_spec, "density must be in [0,1]");
  // Edge iff the next mt19937_64 draw falls below floor(2^64 * density); draws
  // run in row-major order so the spec pins the graph bit-exactly.
  const bool always = spec.density == 1;
  std::uint64_t threshold = 0;
  if (!always) {
    const Int t = (Int(1) << 64) * numerator(spec.density) / denominator(spec.density);
    threshold = static_cast<std::uint64_t>(t);
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<Edge> edges;
  for (std::uint32_t a = 0; a < spec.n_left; ++a)
    for (std::uint32_t b = 0; b < spec.n_right; ++b) {
      const std::uint64_t draw = rng();
      if (always || draw < threshold) edges.emplace_back(a, b);
    }
  return BipartiteGraph::from_edges(spec.n_left, spec.n_right, edges);
}

}  // namespace

BipartiteGraph generate(const GeneratorSpec& spec) {
  return std::visit(
      [](const auto& s) -> BipartiteGraph {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, family::HalfGraph>) return make_half_graph(s);
        if constexpr (std::is_same_v<T, family::CompleteBipartite>)
          return make_complete(s.n_left, s.n_right);
        if constexpr (std::is_same_v<T, family::EmptyBipartite>) {
          require(s.n_left >= 1 && s.n_right >= 1, Errc::invalid_spec, "sides must be nonempty");
          return BipartiteGraph::from_edges(s.n_left, s.n_right, {});
        }
        if constexpr (std::is_same_v<T, family::RectangleUnion>) return make_rectangle_union(s);
        if constexpr (std::is_same_v<T, family::RandomBipartite>) return make_random(s);
      },
      spec);
}

}  // namespace stablereg
