#include "stablereg/regularity.hpp"

#include <algorithm>
#include <utility>

namespace stablereg {

namespace {

void check_pair_shapes(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
                       const VertexSet& Vi, const VertexSet& Wj) {
  require(Vi.side == Side::left && Wj.side == Side::right, Errc::side_mismatch,
          "pair must be (left part, right part)");
  require(Vi.bits.size() == g.n_left() && Wj.bits.size() == g.n_right(), Errc::side_mismatch,
          "parts do not match graph dimensions");
  require(mu.side() == Side::left && mu.size() == g.n_left(), Errc::side_mismatch,
          "mu does not match the left side");
  require(nu.side() == Side::right && nu.size() == g.n_right(), Errc::side_mismatch,
          "nu does not match the right side");
}

struct ClauseSets {
  Bitset exc_left;
  Bitset exc_right;
  Int exc_left_num;
  Int exc_right_num;
  bool holds = false;
};

/// Exceptional sets of one clause. For the dense clause `misses` is the
/// non-neighborhood; for the sparse clause it is the neighborhood.
ClauseSets clause_sets(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
                       const VertexSet& Vi, const VertexSet& Wj, const Rational& eps, bool dense) {
  const Int vi_num = mu.mass_num(Vi.bits);
  const Int wj_num = nu.mass_num(Wj.bits);
  const Int& en = numerator(eps);
  const Int& ed = denominator(eps);

  ClauseSets out{Bitset(g.n_left()), Bitset(g.n_right()), 0, 0, false};
  Vi.bits.for_each([&](std::uint32_t a) {
    const Bitset bad = dense ? (Wj.bits - g.row(a)) : (Wj.bits & g.row(a));
    if (nu.mass_num(bad) * ed > en * wj_num) {
      out.exc_left.set(a);
      out.exc_left_num += mu.num(a);
    }
  });
  Wj.bits.for_each([&](std::uint32_t b) {
    const Bitset bad = dense ? (Vi.bits - g.col(b)) : (Vi.bits & g.col(b));
    if (mu.mass_num(bad) * ed > en * vi_num) {
      out.exc_right.set(b);
      out.exc_right_num += nu.num(b);
    }
  });
  out.holds = out.exc_left_num * ed <= en * vi_num && out.exc_right_num * ed <= en * wj_num;
  return out;
}

PairVerdict make_verdict(PairCase c, ClauseSets&& s, const Int& vi_num, const Int& wj_num,
                         bool both) {
  PairVerdict v;
  v.verdict_case = c;
  v.exc_left_mass = Rational(s.exc_left_num, vi_num);
  v.exc_right_mass = Rational(s.exc_right_num, wj_num);
  v.exc_left = VertexSet(Side::left, std::move(s.exc_left));
  v.exc_right = VertexSet(Side::right, std::move(s.exc_right));
  v.both_hold = both;
  return v;
}

}  // namespace

std::optional<PairVerdict> classify_pair(const BipartiteGraph& g, const Measure& mu,
                                         const Measure& nu, const VertexSet& Vi,
                                         const VertexSet& Wj, const Rational& eps) {
  check_pair_shapes(g, mu, nu, Vi, Wj);
  require(!Vi.empty() && !Wj.empty(), Errc::empty_input, "parts must be nonempty");
  require(eps > 0, Errc::invalid_epsilon, "epsilon must be positive");
  const Int vi_num = mu.mass_num(Vi.bits);
  const Int wj_num = nu.mass_num(Wj.bits);
  require(vi_num > 0, Errc::zero_measure_part, "mu(Vi) = 0");
  require(wj_num > 0, Errc::zero_measure_part, "nu(Wj) = 0");

  ClauseSets dense = clause_sets(g, mu, nu, Vi, Wj, eps, /*dense=*/true);
  ClauseSets sparse = clause_sets(g, mu, nu, Vi, Wj, eps, /*dense=*/false);
  if (dense.holds)
    return make_verdict(PairCase::dense, std::move(dense), vi_num, wj_num, sparse.holds);
  if (sparse.holds)
    return make_verdict(PairCase::sparse, std::move(sparse), vi_num, wj_num, false);
  return std::nullopt;
}

WitnessChoice find_witness(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
                           const VertexSet& Vi, const VertexSet& Wj) {
  check_pair_shapes(g, mu, nu, Vi, Wj);

  bool found = false;
  WitnessChoice best_choice;
  Rational best_score(-1);
  Rational best_gap(0);

  // Iteration order (left part candidates ascending, then right) realizes the
  // tie order: smaller gap, then left side, then lowest index; replacement
  // happens only on strict improvement.
  auto consider = [&](Side side, std::uint32_t vertex, const Rational& piece,
                      const Rational& copiece) {
    const Rational score = std::min(piece, copiece);
    const Rational gap = piece >= copiece ? piece - copiece : copiece - piece;
    if (!found || score > best_score || (score == best_score && gap < best_gap)) {
      found = true;
      best_choice = {side, vertex};
      best_score = score;
      best_gap = gap;
    }
  };

  const Rational wj_mass = Rational(nu.mass_num(Wj.bits), nu.den());
  Vi.bits.for_each([&](std::uint32_t a) {
    const Bitset piece = Wj.bits & g.row(a);
    if (piece.empty() || piece == Wj.bits) return;
    const Rational piece_mass(nu.mass_num(piece), nu.den());
    consider(Side::left, a, piece_mass, wj_mass - piece_mass);
  });
  const Rational vi_mass = Rational(mu.mass_num(Vi.bits), mu.den());
  Wj.bits.for_each([&](std::uint32_t b) {
    const Bitset piece = Vi.bits & g.col(b);
    if (piece.empty() || piece == Vi.bits) return;
    const Rational piece_mass(mu.mass_num(piece), mu.den());
    consider(Side::right, b, piece_mass, vi_mass - piece_mass);
  });

  require(found, Errc::no_splitter,
          "no vertex splits either part; the restriction is complete or empty");
  return best_choice;
}

namespace {

struct SidePartition {
  std::vector<Part> parts;
  std::vector<Int> mass_nums;  // aligned with parts
};

/// Turns type classes into parts, folding zero-measure classes into the
/// heaviest positive class (ties by class index). Merged formulas become flat
/// disjunctions of the signed conjunctions.
SidePartition build_parts(std::vector<TypeClass>&& classes, const Measure& m,
                          std::uint32_t& merge_events) {
  std::vector<Int> nums;
  nums.reserve(classes.size());
  for (const auto& c : classes) nums.push_back(m.mass_num(c.members.bits));

  std::size_t target = classes.size();
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (nums[i] > 0 && (target == classes.size() || nums[i] > nums[target])) target = i;
  require(target < classes.size(), Errc::internal, "all type classes have zero measure");

  SidePartition out;
  std::vector<DeltaFormula> merged_disjuncts;
  Bitset merged_bits = classes[target].members.bits;
  bool merged_any = false;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (nums[i] == 0) {
      merged_bits |= classes[i].members.bits;
      merged_disjuncts.push_back(std::move(classes[i].formula));
      ++merge_events;
      merged_any = true;
    }
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (nums[i] == 0) continue;
    Part p;
    if (i == target && merged_any) {
      merged_disjuncts.insert(merged_disjuncts.begin(), std::move(classes[i].formula));
      p.members = VertexSet(classes[i].side, std::move(merged_bits));
      p.formula = DeltaFormula::disjunction_of(std::move(merged_disjuncts));
    } else {
      p.members = std::move(classes[i].members);
      p.formula = std::move(classes[i].formula);
    }
    out.mass_nums.push_back(std::move(nums[i]));
    out.parts.push_back(std::move(p));
  }
  return out;
}

}  // namespace

RegularityPartition decompose(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
                              const Rational& eps, const DecomposeConfig& config) {
  require(eps > 0, Errc::invalid_epsilon, "epsilon must be positive");
  if (config.eps_policy == EpsPolicy::strict) {
    require(eps <= Rational(29, 100), Errc::invalid_epsilon,
            "epsilon must be at most 29/100 under the strict policy");
  } else {
    require(eps < Rational(1, 2), Errc::invalid_epsilon,
            "epsilon must be below 1/2 under the permissive policy");
  }
  require(mu.side() == Side::left && mu.size() == g.n_left(), Errc::side_mismatch,
          "mu does not match the left side");
  require(nu.side() == Side::right && nu.size() == g.n_right(), Errc::side_mismatch,
          "nu does not match the right side");

  const std::uint32_t structural_bound = g.n_left() + g.n_right() - 2;
  const std::uint32_t cap = config.max_iterations == 0 ? structural_bound : config.max_iterations;

  ParameterSet params = ParameterSet::empty_for(g);
  std::uint32_t iterations = 0;
  std::uint32_t merge_events = 0;
  std::size_t prev_total_parts = 0;

  while (true) {
    // Left types over the right parameters only, and dually; equality atoms
    // stay out of the default pipeline.
    const ParameterSet for_left{VertexSet::empty_set(Side::left, g.n_left()), params.m_right};
    const ParameterSet for_right{params.m_left, VertexSet::empty_set(Side::right, g.n_right())};
    SidePartition left = build_parts(type_partition(g, for_left, Side::left), mu, merge_events);
    SidePartition right = build_parts(type_partition(g, for_right, Side::right), nu, merge_events);

    const std::size_t total_parts = left.parts.size() + right.parts.size();
    require(iterations == 0 || total_parts > prev_total_parts, Errc::internal,
            "refinement round did not increase the part count");
    prev_total_parts = total_parts;

    const std::size_t m = left.parts.size();
    const std::size_t n = right.parts.size();
    std::vector<std::vector<PairVerdict>> verdicts(m);
    bool all_classified = true;
    std::size_t worst_i = 0, worst_j = 0;
    Int worst_product(-1);
    for (std::size_t i = 0; i < m; ++i) {
      verdicts[i].reserve(n);
      for (std::size_t j = 0; j < n; ++j) {
        auto verdict =
            classify_pair(g, mu, nu, left.parts[i].members, right.parts[j].members, eps);
        if (verdict) {
          verdicts[i].push_back(std::move(*verdict));
        } else {
          all_classified = false;
          verdicts[i].push_back(PairVerdict{});  // placeholder, never emitted
          Int product = left.mass_nums[i] * right.mass_nums[j];
          if (product > worst_product) {
            worst_product = std::move(product);
            worst_i = i;
            worst_j = j;
          }
        }
      }
    }

    if (all_classified) {
      RegularityPartition result;
      result.epsilon = eps;
      result.parts_left = std::move(left.parts);
      result.parts_right = std::move(right.parts);
      result.parameters = std::move(params);
      result.verdicts = std::move(verdicts);
      result.iterations = iterations;
      result.zero_measure_merges = merge_events;
      return result;
    }

    require(iterations < structural_bound, Errc::internal,
            "refinement exceeded the structural iteration bound");
    require(iterations < cap, Errc::iteration_cap_exceeded,
            "iteration cap " + std::to_string(cap) + " reached with unclassified pairs left");

    const WitnessChoice w = find_witness(g, mu, nu, left.parts[worst_i].members,
                                         right.parts[worst_j].members);
    if (w.side == Side::left)
      params.m_left.bits.set(w.vertex);
    else
      params.m_right.bits.set(w.vertex);
    ++iterations;
  }
}

}  // namespace stablereg
