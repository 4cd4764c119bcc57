#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stablereg/formula.hpp"
#include "stablereg/graph.hpp"
#include "stablereg/measure.hpp"
#include "stablereg/rational.hpp"
#include "stablereg/type_partition.hpp"

namespace stablereg {

enum class PairCase { dense, sparse };

constexpr const char* pair_case_name(PairCase c) noexcept {
  return c == PairCase::dense ? "dense" : "sparse";
}

/// Verdict for one pair of parts (Vi, Wj).
///
/// Dense: exc_left  = {a in Vi : nu(Wj \ N(a)) >  eps * nu(Wj)}
///        exc_right = {b in Wj : mu(Vi \ N(b)) >  eps * mu(Vi)}
/// Sparse: the same with N replaced by the non-neighborhood.
/// The masses are relative to the part masses and are both <= eps.
struct PairVerdict {
  PairCase verdict_case = PairCase::dense;
  Rational exc_left_mass;
  Rational exc_right_mass;
  VertexSet exc_left;
  VertexSet exc_right;
  /// Set when both clauses held and dense took precedence; only possible for
  /// eps above (2 - sqrt(2)) / 2 or degenerate weights.
  bool both_hold = false;
};

/// Classifies (Vi, Wj) as dense or sparse, or nullopt when neither clause
/// holds and the pair needs refinement. Requires both parts nonempty with
/// positive measure (Errc::zero_measure_part) and eps > 0.
std::optional<PairVerdict> classify_pair(const BipartiteGraph& g, const Measure& mu,
                                         const Measure& nu, const VertexSet& Vi,
                                         const VertexSet& Wj, const Rational& eps);

struct WitnessChoice {
  Side side = Side::left;       // side the witness vertex lives on
  std::uint32_t vertex = 0;
};

/// Picks the vertex whose neighborhood best splits the opposite part:
/// candidates are b in Wj splitting Vi and a in Vi splitting Wj; the score is
/// min(mass of piece, mass of co-piece), ties broken by smaller mass gap, then
/// left side, then lowest vertex index. Intended for pairs classify_pair
/// rejected; throws Errc::no_splitter when no proper split exists (impossible
/// for an unclassifiable pair).
WitnessChoice find_witness(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
                           const VertexSet& Vi, const VertexSet& Wj);

enum class EpsPolicy { strict, permissive };

struct DecomposeConfig {
  /// 0 means the structural bound n_left + n_right - 2. A smaller explicit cap
  /// may trigger Errc::iteration_cap_exceeded.
  std::uint32_t max_iterations = 0;
  EpsPolicy eps_policy = EpsPolicy::strict;
};

struct Part {
  VertexSet members;
  DeltaFormula formula;
};

/// A Theorem-style regularity partition: parts with defining formulas on both
/// sides, the parameter set the formulas draw from, and a verdict per pair.
struct RegularityPartition {
  Rational epsilon;
  std::vector<Part> parts_left;
  std::vector<Part> parts_right;
  ParameterSet parameters;
  /// verdicts[i][j] is the verdict for (parts_left[i], parts_right[j]).
  std::vector<std::vector<PairVerdict>> verdicts;
  std::uint32_t iterations = 0;
  /// Diagnostic counters.
  std::uint32_t zero_measure_merges = 0;
};

/// Witness-driven refinement loop. Each round partitions both sides into type
/// classes over the current parameters (left side over m_right, right side over
/// m_left), merges zero-measure classes into the heaviest sibling, classifies
/// all pairs, and on failure adds the best balanced splitter of the heaviest
/// failing pair to the parameters. Strict part growth bounds the rounds by
/// n_left + n_right - 2.
///
/// eps must satisfy 0 < eps <= 29/100 under the strict policy and
/// 0 < eps < 1/2 under the permissive one (Errc::invalid_epsilon).
RegularityPartition decompose(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
                              const Rational& eps, const DecomposeConfig& config = {});

}  // namespace stablereg
