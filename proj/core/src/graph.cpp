#include "stablereg/graph.hpp"

#include <algorithm>

namespace stablereg {

BipartiteGraph BipartiteGraph::from_edges(std::uint32_t n_left, std::uint32_t n_right,
                                          std::span<const Edge> edges) {
  require(n_left >= 1, Errc::empty_side, "left side must have at least one vertex");
  require(n_right >= 1, Errc::empty_side, "right side must have at least one vertex");
  BipartiteGraph g(n_left, n_right);
  g.rows_.assign(n_left, Bitset(n_right));
  g.cols_.assign(n_right, Bitset(n_left));
  for (const auto& [a, b] : edges) {
    if (a >= n_left || b >= n_right) [[unlikely]]
      raise(Errc::index_out_of_range, "edge (" + std::to_string(a) + "," + std::to_string(b) +
                                          ") exceeds the side sizes");
    g.rows_[a].set(b);
    g.cols_[b].set(a);
  }
  return g;
}

std::uint64_t BipartiteGraph::edge_count() const noexcept {
  std::uint64_t total = 0;
  for (const auto& r : rows_) total += r.count();
  return total;
}

std::vector<Edge> BipartiteGraph::edges_sorted() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::uint32_t a = 0; a < n_left_; ++a)
    rows_[a].for_each([&](std::uint32_t b) { out.emplace_back(a, b); });
  return out;  // row-major construction is already sorted
}

}  // namespace stablereg
