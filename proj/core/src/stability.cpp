#include "stablereg/stability.hpp"

#include <algorithm>
#include <bit>
#include <list>
#include <unordered_map>
#include <unordered_set>

namespace stablereg {

bool verify_ladder(const BipartiteGraph& g, const LadderCertificate& cert) {
  const std::uint32_t k = cert.length();
  if (cert.b_seq.size() != k || k == 0) return false;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (cert.a_seq[i] >= g.n_left() || cert.b_seq[i] >= g.n_right()) return false;
    for (std::uint32_t j = i + 1; j < k; ++j)
      if (cert.a_seq[i] == cert.a_seq[j] || cert.b_seq[i] == cert.b_seq[j]) return false;
  }
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j)
      if (g.has_edge(cert.a_seq[i], cert.b_seq[j]) != (i <= j)) return false;
  return true;
}

namespace {

/// Depth-first search over interleaved choices a1,b1,a2,b2,... The candidate
/// pools encode all pattern constraints accumulated so far: future a's must
/// avoid every chosen b's neighborhood, future b's must lie in every chosen
/// a's neighborhood.
class LadderSearch {
 public:
  LadderSearch(const BipartiteGraph& g, std::uint32_t k) : g_(g), k_(k) {}

  std::optional<LadderCertificate> run() {
    a_seq_.reserve(k_);
    b_seq_.reserve(k_);
    if (extend(Bitset::full(g_.n_left()), Bitset::full(g_.n_right())))
      return LadderCertificate{std::move(a_seq_), std::move(b_seq_)};
    return std::nullopt;
  }

 private:
  bool extend(const Bitset& ca, const Bitset& cb) {
    const std::uint32_t chosen = static_cast<std::uint32_t>(a_seq_.size());
    if (chosen == k_) return true;
    const std::uint32_t need = k_ - chosen;
    if (ca.count() < need || cb.count() < need) return false;
    for (std::uint32_t a = ca.first_set(); a < ca.size(); a = ca.next_set(a + 1)) {
      Bitset cb_next = cb & g_.row(a);
      if (cb_next.count() < need) continue;
      a_seq_.push_back(a);
      for (std::uint32_t b = cb_next.first_set(); b < cb_next.size();
           b = cb_next.next_set(b + 1)) {
        Bitset ca_next = ca - g_.col(b);  // also drops a, which is adjacent to b
        if (ca_next.count() < need - 1) continue;
        Bitset cb_rest = cb_next;
        cb_rest.reset(b);
        b_seq_.push_back(b);
        if (extend(ca_next, cb_rest)) return true;
        b_seq_.pop_back();
      }
      a_seq_.pop_back();
    }
    return false;
  }

  const BipartiteGraph& g_;
  std::uint32_t k_;
  std::vector<std::uint32_t> a_seq_;
  std::vector<std::uint32_t> b_seq_;
};

}  // namespace

std::optional<LadderCertificate> has_ladder(const BipartiteGraph& g, std::uint32_t k) {
  require(k >= 1, Errc::invalid_spec, "ladder length must be at least 1");
  if (k > g.n_left() || k > g.n_right()) return std::nullopt;
  auto cert = LadderSearch(g, k).run();
  if (cert) require(verify_ladder(g, *cert), Errc::internal, "ladder search produced an invalid certificate");
  return cert;
}

LadderIndexResult ladder_index(const BipartiteGraph& g, std::uint32_t max_k) {
  require(max_k >= 1, Errc::invalid_spec, "max_k must be at least 1");
  LadderIndexResult result;
  for (std::uint32_t k = 1; k <= max_k; ++k) {
    auto cert = has_ladder(g, k);
    if (!cert) return result;  // k refuted, so capped stays false
    result.k = k;
    result.certificate = std::move(cert);
  }
  result.capped = true;  // found max_k and never attempted max_k + 1
  return result;
}

namespace {

bool words_less(const Bitset& x, const Bitset& y) {
  const auto wx = x.words(), wy = y.words();
  return std::lexicographical_compare(wx.begin(), wx.end(), wy.begin(), wy.end());
}

std::uint32_t log2_floor(std::uint32_t n) { return 31 - std::countl_zero(n); }

/// Memoized rank computation over exact subsets of one side, with an LRU cap
/// on the memo. Evicted entries are simply recomputed when needed again.
class RankEngine {
 public:
  RankEngine(const BipartiteGraph& g, Side side, std::size_t cap)
      : g_(g), side_(side), opp_count_(g.side_size(opposite(side))), cap_(std::max<std::size_t>(cap, 1)) {}

  std::uint32_t rank_of(const Bitset& set) {
    const std::uint32_t size = set.count();
    if (size < 2) return 0;
    if (auto it = memo_.find(set); it != memo_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second.pos);
      return it->second.rank;
    }
    const std::uint32_t bound = log2_floor(size);
    std::uint32_t best = 0;
    std::uint32_t best_param = 0;
    std::unordered_set<Bitset, BitsetHash> seen;
    for (std::uint32_t p = 0; p < opp_count_; ++p) {
      Bitset in = set & g_.neighborhood(opposite(side_), p);
      if (in.empty() || in == set) continue;
      Bitset out = set - in;
      // The unordered pair {in, out} determines the split; dedupe on the
      // lexicographically smaller piece.
      if (!seen.insert(words_less(in, out) ? in : out).second) continue;
      const std::uint32_t r = 1 + std::min(rank_of(in), rank_of(out));
      if (r > best) {
        best = r;
        best_param = p;
        if (best == bound) break;
      }
    }
    store(set, best, best_param);
    return best;
  }

  std::unique_ptr<SplitNode> build_tree(const Bitset& set, std::uint32_t depth) {
    if (depth == 0) return nullptr;
    rank_of(set);  // ensure a memo entry (recomputes after eviction)
    const auto it = memo_.find(set);
    require(it != memo_.end() && it->second.rank >= depth, Errc::internal,
            "witness tree reconstruction lost a memo entry");
    auto node = std::make_unique<SplitNode>();
    node->param = it->second.best_param;
    const Bitset in = set & g_.neighborhood(opposite(side_), node->param);
    node->in_child = build_tree(in, depth - 1);
    node->out_child = build_tree(set - in, depth - 1);
    return node;
  }

 private:
  struct Entry {
    std::uint32_t rank;
    std::uint32_t best_param;
    std::list<Bitset>::iterator pos;
  };

  void store(const Bitset& set, std::uint32_t rank, std::uint32_t best_param) {
    lru_.push_front(set);
    memo_.emplace(set, Entry{rank, best_param, lru_.begin()});
    if (memo_.size() > cap_) {
      memo_.erase(lru_.back());
      lru_.pop_back();
    }
  }

  const BipartiteGraph& g_;
  Side side_;
  std::uint32_t opp_count_;
  std::size_t cap_;
  std::unordered_map<Bitset, Entry, BitsetHash> memo_;
  std::list<Bitset> lru_;
};

}  // namespace

RankResult splitting_rank(const BipartiteGraph& g, const VertexSet& start, RankConfig cfg) {
  require(!start.empty(), Errc::empty_input, "splitting_rank requires a nonempty start set");
  require(start.bits.size() == g.side_size(start.side), Errc::side_mismatch,
          "start set does not match graph dimensions");
  RankEngine engine(g, start.side, cfg.memo_cap);
  RankResult result;
  result.value = engine.rank_of(start.bits);
  result.witness_tree = engine.build_tree(start.bits, result.value);
  return result;
}

namespace {

bool verify_tree_impl(const BipartiteGraph& g, Side side, const Bitset& set, const SplitNode* node,
                      std::uint32_t depth) {
  if (depth == 0) return !set.empty();
  if (node == nullptr || node->param >= g.side_size(opposite(side))) return false;
  const Bitset in = set & g.neighborhood(opposite(side), node->param);
  const Bitset out = set - in;
  if (in.empty() || out.empty()) return false;
  return verify_tree_impl(g, side, in, node->in_child.get(), depth - 1) &&
         verify_tree_impl(g, side, out, node->out_child.get(), depth - 1);
}

}  // namespace

bool verify_witness_tree(const BipartiteGraph& g, const VertexSet& start, const SplitNode* tree,
                         std::uint32_t depth) {
  if (start.bits.size() != g.side_size(start.side)) return false;
  return verify_tree_impl(g, start.side, start.bits, tree, depth);
}

}  // namespace stablereg
