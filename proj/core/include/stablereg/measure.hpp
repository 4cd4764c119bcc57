#pragma once

#include <cstdint>
#include <vector>

#include "stablereg/graph.hpp"
#include "stablereg/rational.hpp"

namespace stablereg {

/// Finitely additive probability measure on one side, with exact rational
/// weights. Weights are stored as integer numerators over one common
/// denominator so that set masses reduce to integer sums. Zero weights are
/// allowed; the total is always exactly 1.
class Measure {
 public:
  /// Uniform weight 1/n on the chosen side of `g`.
  static Measure counting(const BipartiteGraph& g, Side side);

  /// Validates count, nonnegativity and exact sum 1 (Errc::invalid_measure).
  static Measure from_weights(Side side, const std::vector<Rational>& weights);

  Side side() const noexcept { return side_; }
  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(nums_.size()); }
  bool uniform() const noexcept { return uniform_; }

  Rational weight(std::uint32_t v) const;

  /// Raw weight numerator of vertex `v` over den().
  const Int& num(std::uint32_t v) const {
    require(v < size(), Errc::index_out_of_range, "vertex out of range for measure");
    return nums_[v];
  }

  /// Numerator of the mass of `s` over den(); integer arithmetic only.
  Int mass_num(const Bitset& s) const;

  const Int& den() const noexcept { return den_; }

  /// measure_of: the exact mass of a vertex set. Throws SideMismatch.
  Rational mass(const VertexSet& s) const;

  std::vector<Rational> weights() const;

 private:
  Measure(Side side, std::vector<Int> nums, Int den, bool uniform)
      : side_(side), nums_(std::move(nums)), den_(std::move(den)), uniform_(uniform) {}

  Side side_ = Side::left;
  std::vector<Int> nums_;
  Int den_ = 1;
  bool uniform_ = false;
};

/// Total mu x nu product mass of the edge pairs (edges=true) or non-edge pairs
/// (edges=false) inside A x B. A must be a left set and B a right set.
Rational pair_mass(const Measure& mu, const Measure& nu, const VertexSet& A, const VertexSet& B,
                   const BipartiteGraph& g, bool edges);

}  // namespace stablereg
