#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "stablereg/graph.hpp"

namespace stablereg {

/// Vertex tuples witnessing the k-order property: R(a_i, b_j) holds iff i <= j.
/// Entries within each sequence are distinct. Construction via has_ladder
/// re-verifies the pattern against the graph.
struct LadderCertificate {
  std::vector<std::uint32_t> a_seq;
  std::vector<std::uint32_t> b_seq;

  std::uint32_t length() const noexcept { return static_cast<std::uint32_t>(a_seq.size()); }
};

/// True iff `cert` is a valid k-ladder in `g` (pattern, ranges, distinctness).
bool verify_ladder(const BipartiteGraph& g, const LadderCertificate& cert);

/// Exhaustive search for a k-ladder. Interleaves the choices a1,b1,a2,b2,...
/// keeping bitsets of the vertices still consistent with the pattern so far and
/// pruning branches whose candidate pools are too small. Requires k >= 1.
std::optional<LadderCertificate> has_ladder(const BipartiteGraph& g, std::uint32_t k);

struct LadderIndexResult {
  std::uint32_t k = 0;
  std::optional<LadderCertificate> certificate;
  /// True iff k == max_k and k+1 was never refuted (search stopped at the cap).
  bool capped = false;
};

/// Largest k <= max_k admitting a ladder. Requires max_k >= 1.
LadderIndexResult ladder_index(const BipartiteGraph& g, std::uint32_t max_k);

/// Binary splitting tree: each node splits its (implicit) vertex set by the
/// neighborhood of `param` into the in/out children. Leaves are null pointers.
struct SplitNode {
  std::uint32_t param = 0;
  std::unique_ptr<SplitNode> in_child;
  std::unique_ptr<SplitNode> out_child;
};

struct RankResult {
  std::uint32_t value = 0;
  std::unique_ptr<SplitNode> witness_tree;  // depth == value; null when value == 0
};

struct RankConfig {
  /// Memo entries kept per call; least-recently-used entries are evicted past
  /// the cap and recomputed on demand.
  std::size_t memo_cap = std::size_t{1} << 20;
};

/// Largest depth n of a complete binary tree rooted at `start` in which every
/// internal node's set is split by some opposite-side neighborhood into two
/// nonempty pieces. Memoized on the exact subset; requires `start` nonempty.
RankResult splitting_rank(const BipartiteGraph& g, const VertexSet& start, RankConfig cfg = {});

/// Replays `tree` from `start` and checks both children stay nonempty at every
/// node down to `depth`. A null tree verifies iff depth == 0.
bool verify_witness_tree(const BipartiteGraph& g, const VertexSet& start, const SplitNode* tree,
                         std::uint32_t depth);

}  // namespace stablereg
