#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stablereg/regularity.hpp"

namespace stablereg {

/// Result of re-deriving one pair's verdict from raw adjacency and measures.
struct PairCheck {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::optional<PairCase> recomputed_case;  // nullopt: neither clause holds
  bool recomputed_both_hold = false;
  Rational exc_left_mass;
  Rational exc_right_mass;
  bool pass = false;
  std::string failure;  // empty when pass
};

/// Everything here derives from recomputation; stored verdicts are only
/// compared against, never trusted.
struct VerificationReport {
  bool partition_laws = false;
  bool formula_faithful = false;
  std::vector<PairCheck> pairs;
  bool all_pass = false;
};

/// From-scratch checker for the partition contract: partition laws on both
/// sides, formula faithfulness, and per pair the recomputed exceptional sets,
/// masses and case against the stored verdict. Independent of the regularity
/// module's classification path. Throws Errc::shape_mismatch when the
/// partition does not fit the graph.
VerificationReport check_theorem(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
                                 const RegularityPartition& partition);

enum class DeltaMode { exhaustive, sampled };

struct DeltaViolation {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::vector<std::uint32_t> subset_left;
  std::vector<std::uint32_t> subset_right;
  Side direction = Side::left;  // side whose exceptional mass overflowed
};

struct DeltaRegularityReport {
  Rational delta;                     // rational upper bound of sqrt(2 eps)
  std::uint64_t pairs_checked = 0;    // part pairs examined
  std::uint64_t subset_pairs_tested = 0;
  std::vector<DeltaViolation> violations;
  DeltaMode mode = DeltaMode::exhaustive;
  std::uint64_t seed = 0;             // sampled mode only
};

/// Checks the delta-regularity consequence on every pair of parts: for subsets
/// A, B at relative mass >= delta (delta = sqrt(2 eps) rounded up at 1e-9
/// precision), the vertices of A exceptionally non-adjacent into B carry at
/// most delta of A's mass, and dually; sparse pairs use complemented adjacency.
/// Exhaustive mode enumerates all eligible subset pairs and requires every part
/// to have at most 12 vertices (Errc::part_too_large); sampled mode draws
/// `budget` uniform eligible subset pairs split across part pairs from `seed`.
DeltaRegularityReport check_delta_regularity(const BipartiteGraph& g, const Measure& mu,
                                             const Measure& nu,
                                             const RegularityPartition& partition, DeltaMode mode,
                                             std::uint64_t budget = 100000, std::uint64_t seed = 0);

/// Independent reimplementation of classify_pair by direct unfolding of the
/// clause definitions (per-vertex scans and rational sums; no bitset mass
/// machinery shared with the regularity module). Used for cross-validation.
std::optional<PairVerdict> oracle_goodness(const BipartiteGraph& g, const Measure& mu,
                                           const Measure& nu, const VertexSet& Vi,
                                           const VertexSet& Wj, const Rational& eps);

}  // namespace stablereg
