#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "stablereg/bitset.hpp"
#include "stablereg/errors.hpp"

namespace stablereg {

enum class Side { left, right };

constexpr Side opposite(Side s) noexcept { return s == Side::left ? Side::right : Side::left; }
constexpr const char* side_name(Side s) noexcept { return s == Side::left ? "left" : "right"; }

/// A subset of one side's vertices.
struct VertexSet {
  Side side = Side::left;
  Bitset bits;

  VertexSet() = default;
  VertexSet(Side s, Bitset b) : side(s), bits(std::move(b)) {}

  static VertexSet empty_set(Side s, std::uint32_t n) { return {s, Bitset(n)}; }
  static VertexSet full_set(Side s, std::uint32_t n) { return {s, Bitset::full(n)}; }

  std::uint32_t count() const noexcept { return bits.count(); }
  bool empty() const noexcept { return bits.empty(); }
  bool operator==(const VertexSet&) const = default;
};

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Finite bipartite graph (V, W, R) with dual bitset adjacency: one bitset over
/// W per V-vertex and one bitset over V per W-vertex. Immutable once built.
class BipartiteGraph {
 public:
  /// Duplicate edges collapse. Throws EmptySide / IndexOutOfRange.
  static BipartiteGraph from_edges(std::uint32_t n_left, std::uint32_t n_right,
                                   std::span<const Edge> edges);

  std::uint32_t n_left() const noexcept { return n_left_; }
  std::uint32_t n_right() const noexcept { return n_right_; }
  std::uint32_t side_size(Side s) const noexcept { return s == Side::left ? n_left_ : n_right_; }

  bool has_edge(std::uint32_t a, std::uint32_t b) const {
    require(a < n_left_ && b < n_right_, Errc::index_out_of_range, "edge endpoint out of range");
    return rows_[a].test(b);
  }

  /// N(a) as a subset of W.
  const Bitset& row(std::uint32_t a) const {
    require(a < n_left_, Errc::index_out_of_range, "left vertex out of range");
    return rows_[a];
  }

  /// N(b) as a subset of V.
  const Bitset& col(std::uint32_t b) const {
    require(b < n_right_, Errc::index_out_of_range, "right vertex out of range");
    return cols_[b];
  }

  /// Neighborhood of `v` (a vertex of `s`) as a subset of the opposite side.
  const Bitset& neighborhood(Side s, std::uint32_t v) const {
    return s == Side::left ? row(v) : col(v);
  }

  std::uint64_t edge_count() const noexcept;

  std::vector<Edge> edges_sorted() const;

 private:
  BipartiteGraph(std::uint32_t nl, std::uint32_t nr) : n_left_(nl), n_right_(nr) {}

  std::uint32_t n_left_ = 0;
  std::uint32_t n_right_ = 0;
  std::vector<Bitset> rows_;
  std::vector<Bitset> cols_;
};

}  // namespace stablereg
