// Acceptance suite: runs every gate end to end and prints one line per
// criterion. Gates 1-6, 8 and 9 are hard (a failure flips the exit code);
// gate 7 is a soft plateau check that reports [WARN] on regression.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "stablereg/generators.hpp"
#include "stablereg/io.hpp"
#include "stablereg/regularity.hpp"
#include "stablereg/stability.hpp"
#include "stablereg/verify.hpp"

using namespace stablereg;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  bool soft = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Fixture family
// ---------------------------------------------------------------------------

struct Fixture {
  std::string name;
  BipartiteGraph graph;
};

/// Rectangle-union spec with block proportions drawn once from `seed` and
/// scaled to each total size, so one seed names a whole size family.
family::RectangleUnion rect_spec(std::uint32_t blocks, std::uint32_t total, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> wl(blocks), wr(blocks);
  std::uint64_t sl = 0, sr = 0;
  for (auto& w : wl) sl += (w = 1 + rng() % 9);
  for (auto& w : wr) sr += (w = 1 + rng() % 9);
  family::RectangleUnion spec;
  spec.seed = seed;
  auto scale = [&](const std::vector<std::uint64_t>& ws, std::uint64_t sum) {
    std::vector<std::uint32_t> sizes(blocks);
    std::uint32_t used = 0;
    for (std::uint32_t t = 0; t < blocks; ++t) {
      sizes[t] = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(total * ws[t] / sum));
      used += sizes[t];
    }
    while (used < total) ++sizes[0], ++used;
    while (used > total) {
      for (std::uint32_t t = 0; t < blocks && used > total; ++t)
        if (sizes[t] > 1) --sizes[t], --used;
    }
    return sizes;
  };
  spec.left_sizes = scale(wl, sl);
  spec.right_sizes = scale(wr, sr);
  return spec;
}

std::vector<Fixture> criterion_fixtures() {
  std::vector<Fixture> out;
  out.push_back({"complete-16x16", generate(family::CompleteBipartite{16, 16})});
  out.push_back({"empty-16x16", generate(family::EmptyBipartite{16, 16})});
  for (std::uint32_t k = 1; k <= 8; ++k)
    out.push_back({"half-graph-" + std::to_string(k), generate(family::HalfGraph{k})});
  for (std::uint32_t r = 2; r <= 4; ++r)
    for (std::uint32_t n : {64u, 128u, 256u, 512u})
      out.push_back({"rect-r" + std::to_string(r) + "-n" + std::to_string(n),
                     generate(rect_spec(r, n, 7))});
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    out.push_back({"random-32x32-s" + std::to_string(seed),
                   generate(family::RandomBipartite{32, 32, Rational(1, 2), 9000 + seed})});
  return out;
}

const std::vector<Rational>& epsilons() {
  static const std::vector<Rational> eps{Rational(1, 4), Rational(1, 10), Rational(1, 20)};
  return eps;
}

struct Run {
  std::string fixture;
  Rational eps;
  RegularityPartition partition;
};

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

Outcome criterion_1_and_2(const std::vector<Fixture>& fixtures, std::vector<Run>& runs,
                          Outcome& exclusivity) {
  Outcome out;
  double worst_time = 0;
  std::string worst_name;
  for (const auto& fixture : fixtures) {
    const auto mu = Measure::counting(fixture.graph, Side::left);
    const auto nu = Measure::counting(fixture.graph, Side::right);
    const std::uint32_t bound = fixture.graph.n_left() + fixture.graph.n_right() - 2;
    for (const auto& eps : epsilons()) {
      const auto start = Clock::now();
      RegularityPartition p = decompose(fixture.graph, mu, nu, eps);
      const double elapsed = seconds_since(start);
      if (elapsed > worst_time) {
        worst_time = elapsed;
        worst_name = fixture.name;
      }
      if (p.iterations > bound) {
        out.pass = false;
        out.detail = fixture.name + " exceeded the round bound";
        return out;
      }
      const auto report = check_theorem(fixture.graph, mu, nu, p);
      if (!report.all_pass) {
        out.pass = false;
        out.detail = fixture.name + " at eps " + to_fraction_string(eps) + " failed check_theorem";
        return out;
      }
      for (const auto& row : p.verdicts)
        for (const auto& v : row)
          if (v.both_hold && eps <= Rational(29, 100)) {
            exclusivity.pass = false;
            exclusivity.detail = "both_hold set on " + fixture.name;
          }
      runs.push_back({fixture.name, eps, std::move(p)});
    }
  }
  std::ostringstream detail;
  detail << runs.size() << " decompositions verified; slowest instance " << worst_name << " at "
         << worst_time << "s";
  out.detail = detail.str();
  if (worst_time >= 10.0) out.detail += " [expected < 10s]";
  return out;
}

Outcome criterion_3(const std::map<std::string, const BipartiteGraph*>& graphs,
                    const std::vector<Run>& runs) {
  Outcome out;
  const auto start = Clock::now();
  std::uint64_t exhaustive_runs = 0, sampled_runs = 0, tested = 0;
  for (const auto& run : runs) {
    const BipartiteGraph& g = *graphs.at(run.fixture);
    const auto mu = Measure::counting(g, Side::left);
    const auto nu = Measure::counting(g, Side::right);
    std::uint32_t max_part = 0;
    for (const auto& part : run.partition.parts_left)
      max_part = std::max(max_part, part.members.count());
    for (const auto& part : run.partition.parts_right)
      max_part = std::max(max_part, part.members.count());
    const DeltaMode mode = max_part <= 12 ? DeltaMode::exhaustive : DeltaMode::sampled;
    const auto report =
        check_delta_regularity(g, mu, nu, run.partition, mode, 100000, 20260809);
    mode == DeltaMode::exhaustive ? ++exhaustive_runs : ++sampled_runs;
    tested += report.subset_pairs_tested;
    if (!report.violations.empty()) {
      out.pass = false;
      out.detail = "delta violation on " + run.fixture + " at eps " +
                   to_fraction_string(run.partition.epsilon);
      return out;
    }
  }
  std::ostringstream detail;
  detail << exhaustive_runs << " exhaustive + " << sampled_runs << " sampled checks, " << tested
         << " subset pairs, 0 violations in " << seconds_since(start) << "s";
  out.detail = detail.str();
  if (seconds_since(start) >= 60.0) out.detail += " [expected < 60s]";
  return out;
}

Outcome criterion_4() {
  Outcome out;
  const auto start = Clock::now();
  for (std::uint32_t k = 1; k <= 8; ++k) {
    const auto g = generate(family::HalfGraph{k});
    const auto idx = ladder_index(g, k + 1);
    if (idx.k != k || idx.capped) {
      out.pass = false;
      out.detail =
          "half-graph " + std::to_string(k) + " gave ladder index " + std::to_string(idx.k);
      return out;
    }
    if (!verify_ladder(g, *idx.certificate)) {
      out.pass = false;
      out.detail = "certificate for half-graph " + std::to_string(k) + " failed re-verification";
      return out;
    }
  }
  const auto complete_idx = ladder_index(generate(family::CompleteBipartite{16, 16}), 8);
  const auto empty_idx = ladder_index(generate(family::EmptyBipartite{16, 16}), 8);
  if (complete_idx.k != 1 || empty_idx.k != 0) {
    out.pass = false;
    out.detail = "complete/empty ladder indices were " + std::to_string(complete_idx.k) + "/" +
                 std::to_string(empty_idx.k);
    return out;
  }
  std::ostringstream detail;
  detail << "half-graphs 1..8 exact, complete=1, empty=0 in " << seconds_since(start) << "s";
  out.detail = detail.str();
  return out;
}

Outcome criterion_5() {
  Outcome out;
  std::vector<Fixture> instances;
  instances.push_back({"complete-16x16", generate(family::CompleteBipartite{16, 16})});
  instances.push_back({"empty-12x12", generate(family::EmptyBipartite{12, 12})});
  for (std::uint32_t k = 2; k <= 8; ++k)
    instances.push_back({"half-graph-" + std::to_string(k), generate(family::HalfGraph{k})});
  instances.push_back({"rect-2x8", generate(family::RectangleUnion{{8, 8}, {8, 8}, 0})});
  instances.push_back({"rect-3x16", generate(rect_spec(3, 16, 7))});
  for (std::uint64_t seed = 0; seed < 4; ++seed)
    instances.push_back({"random-10x10-s" + std::to_string(seed),
                         generate(family::RandomBipartite{10, 10, Rational(1, 2), 500 + seed})});
  for (std::uint64_t seed = 0; seed < 2; ++seed)
    instances.push_back({"random-12x12-s" + std::to_string(seed),
                         generate(family::RandomBipartite{12, 12, Rational(1, 2), 700 + seed})});

  // Spot values first.
  const auto complete = generate(family::CompleteBipartite{16, 16});
  if (splitting_rank(complete, VertexSet::full_set(Side::left, 16)).value != 0) {
    out.pass = false;
    out.detail = "complete graph rank was nonzero";
    return out;
  }
  const auto hg3 = generate(family::HalfGraph{3});
  if (splitting_rank(hg3, VertexSet::full_set(Side::left, 3)).value != 1) {
    out.pass = false;
    out.detail = "half-graph-3 rank was not 1";
    return out;
  }

  std::uint32_t checked = 0;
  for (const auto& inst : instances) {
    for (const Side side : {Side::left, Side::right}) {
      const auto full = VertexSet::full_set(side, inst.graph.side_size(side));
      const auto fast = splitting_rank(inst.graph, full);
      const auto brute = test_oracles::brute_splitting_rank(inst.graph, side, full.bits);
      if (fast.value != brute) {
        out.pass = false;
        out.detail = inst.name + " " + side_name(side) + ": rank " + std::to_string(fast.value) +
                     " vs brute " + std::to_string(brute);
        return out;
      }
      if (!verify_witness_tree(inst.graph, full, fast.witness_tree.get(), fast.value)) {
        out.pass = false;
        out.detail = inst.name + " witness tree failed replay";
        return out;
      }
      ++checked;
    }
  }
  out.detail = std::to_string(checked) + " full-side ranks match the unmemoized recursion";
  return out;
}

Outcome criterion_6() {
  Outcome out;
  std::mt19937_64 rng(424242);
  const std::uint64_t instances = 10000;
  std::uint64_t classified = 0;
  for (std::uint64_t round = 0; round < instances; ++round) {
    const std::uint32_t n = 4 + rng() % 9;
    const std::uint32_t m = 4 + rng() % 9;
    const Rational density(1 + rng() % 9, 10);
    const auto g = generate(family::RandomBipartite{n, m, density, rng()});
    const bool weighted = round % 4 == 0;
    Measure mu = Measure::counting(g, Side::left);
    Measure nu = Measure::counting(g, Side::right);
    if (weighted) {
      auto draw = [&](Side side, std::uint32_t count) {
        std::vector<Int> nums(count);
        for (auto& x : nums) x = Int(1 + rng() % 8);
        nums[rng() % count] = 0;
        Int total = 0;
        for (const auto& x : nums) total += x;
        std::vector<Rational> w;
        w.reserve(count);
        for (const auto& x : nums) w.emplace_back(x, total);
        return Measure::from_weights(side, w);
      };
      mu = draw(Side::left, n);
      nu = draw(Side::right, m);
    }
    auto pick_part = [&](Side side, std::uint32_t count, const Measure& measure) {
      while (true) {
        Bitset bits(count);
        for (std::uint32_t v = 0; v < count; ++v)
          if (rng() & 1) bits.set(v);
        if (!bits.empty() && measure.mass_num(bits) > 0) return VertexSet(side, bits);
      }
    };
    const VertexSet Vi = pick_part(Side::left, n, mu);
    const VertexSet Wj = pick_part(Side::right, m, nu);
    const Rational eps(1 + rng() % 45, 100);
    const auto fast = classify_pair(g, mu, nu, Vi, Wj, eps);
    const auto slow = oracle_goodness(g, mu, nu, Vi, Wj, eps);
    const bool agree =
        fast.has_value() == slow.has_value() &&
        (!fast || (fast->verdict_case == slow->verdict_case &&
                   fast->exc_left_mass == slow->exc_left_mass &&
                   fast->exc_right_mass == slow->exc_right_mass &&
                   fast->exc_left == slow->exc_left && fast->exc_right == slow->exc_right &&
                   fast->both_hold == slow->both_hold));
    if (!agree) {
      out.pass = false;
      out.detail = "disagreement at instance " + std::to_string(round);
      return out;
    }
    if (fast) ++classified;
  }
  out.detail = std::to_string(instances) + " instances agree exactly (" +
               std::to_string(classified) + " classifiable)";
  return out;
}

Outcome criterion_7() {
  Outcome out;
  out.soft = true;
  const Rational eps(1, 10);
  std::map<std::uint32_t, std::size_t> parts_at;
  for (const std::uint32_t n : {64u, 128u, 256u, 512u}) {
    const auto g = generate(rect_spec(3, n, 1234));
    const auto p =
        decompose(g, Measure::counting(g, Side::left), Measure::counting(g, Side::right), eps);
    parts_at[n] = p.parts_left.size() + p.parts_right.size();
  }
  std::ostringstream detail;
  detail << "total parts:";
  for (const auto& [n, parts] : parts_at) detail << " n=" << n << ":" << parts;
  out.detail = detail.str();
  if (parts_at[512] > parts_at[64]) {
    out.pass = false;
    out.detail += " (plateau violated)";
  }
  return out;
}

Outcome criterion_8() {
  Outcome out;

  // Weighted rerun of criterion 1 on a two-block rectangle union, with one
  // zero-weight vertex on each side.
  const auto g = generate(rect_spec(2, 64, 7));
  std::mt19937_64 rng(55);
  auto weights = [&](std::uint32_t count, std::uint32_t zero_at) {
    std::vector<Int> nums(count);
    for (auto& x : nums) x = Int(1 + rng() % 8);
    nums[zero_at] = 0;
    Int total = 0;
    for (const auto& x : nums) total += x;
    std::vector<Rational> w;
    w.reserve(count);
    for (const auto& x : nums) w.emplace_back(x, total);
    return w;
  };
  const auto mu = Measure::from_weights(Side::left, weights(g.n_left(), 3));
  const auto nu = Measure::from_weights(Side::right, weights(g.n_right(), 11));
  for (const auto& eps : epsilons()) {
    const auto p = decompose(g, mu, nu, eps);
    if (p.iterations > g.n_left() + g.n_right() - 2) {
      out.pass = false;
      out.detail = "weighted rectangle run exceeded the round bound";
      return out;
    }
    if (!check_theorem(g, mu, nu, p).all_pass) {
      out.pass = false;
      out.detail = "weighted rectangle run failed check_theorem at eps " + to_fraction_string(eps);
      return out;
    }
  }

  // The zero-measure merge path. On pure rectangle unions the balanced-witness
  // loop never isolates a zero-measure class (zero-mass vertices never block
  // classification), so the path is exercised on an instance whose refinement
  // splits a bystander part along a zero-weight vertex.
  const std::vector<Edge> edges{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 5}, {2, 0}, {2, 1}};
  const auto mg = BipartiteGraph::from_edges(4, 6, edges);
  const auto mmu = Measure::from_weights(
      Side::left, {Rational(7, 10), Rational(1, 10), Rational(1, 10), Rational(1, 10)});
  const auto mnu = Measure::from_weights(
      Side::right, {Rational(1, 8), Rational(1, 4), Rational(3, 8), Rational(1, 8), Rational(1, 8),
                    Rational(0)});
  const auto mp = decompose(mg, mmu, mnu, Rational(1, 10));
  if (mp.zero_measure_merges == 0) {
    out.pass = false;
    out.detail = "zero-measure merge path was never exercised";
    return out;
  }
  if (!check_theorem(mg, mmu, mnu, mp).all_pass) {
    out.pass = false;
    out.detail = "merge-path instance failed check_theorem";
    return out;
  }
  out.detail = "weighted rectangle verified at 3 epsilons; merge path exercised " +
               std::to_string(mp.zero_measure_merges) + " times";
  return out;
}

Outcome criterion_9() {
  Outcome out;
  const std::vector<std::pair<std::string, BipartiteGraph>> fixtures = {
      {"rect-r3-n64", generate(rect_spec(3, 64, 7))},
      {"half-graph-6", generate(family::HalfGraph{6})},
      {"random-24x24", generate(family::RandomBipartite{24, 24, Rational(1, 2), 77})},
  };
  for (const auto& [name, g] : fixtures) {
    const auto mu = Measure::counting(g, Side::left);
    const auto nu = Measure::counting(g, Side::right);
    const auto p1 = decompose(g, mu, nu, Rational(1, 10));
    const auto p2 = decompose(g, mu, nu, Rational(1, 10));
    const std::string r1 = io::partition_report_string(p1);
    const std::string r2 = io::partition_report_string(p2);
    if (r1 != r2) {
      out.pass = false;
      out.detail = name + " reports are not byte-identical";
      return out;
    }
    const auto doc = nlohmann::json::parse(r1);
    const auto parsed = io::partition_from_report(doc, g);
    for (std::size_t i = 0; i < parsed.parts_left.size(); ++i)
      if (evaluate(parsed.parts_left[i].formula, g, Side::left) != parsed.parts_left[i].members) {
        out.pass = false;
        out.detail = name + " left part " + std::to_string(i) + " formula drifted";
        return out;
      }
    for (std::size_t j = 0; j < parsed.parts_right.size(); ++j)
      if (evaluate(parsed.parts_right[j].formula, g, Side::right) !=
          parsed.parts_right[j].members) {
        out.pass = false;
        out.detail = name + " right part " + std::to_string(j) + " formula drifted";
        return out;
      }
  }
  out.detail = "3 fixtures: byte-identical reports, all serialized formulas re-evaluate";
  return out;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, Outcome>> results;

  const auto fixtures = criterion_fixtures();
  std::map<std::string, const BipartiteGraph*> graph_index;
  for (const auto& f : fixtures) graph_index[f.name] = &f.graph;

  std::vector<Run> runs;
  Outcome exclusivity;
  exclusivity.detail = "both_hold never set across criterion-1 runs";

  results.emplace_back("criterion 1 — theorem conclusion end to end",
                       criterion_1_and_2(fixtures, runs, exclusivity));
  results.emplace_back("criterion 2 — dense/sparse mutual exclusivity", exclusivity);
  results.emplace_back("criterion 3 — delta regularity at sqrt(2*eps)",
                       criterion_3(graph_index, runs));
  results.emplace_back("criterion 4 — ladder oracle on named families", criterion_4());
  results.emplace_back("criterion 5 — splitting rank vs brute force", criterion_5());
  results.emplace_back("criterion 6 — classifier/oracle cross-validation", criterion_6());
  results.emplace_back("criterion 7 — part-count plateau (soft gate)", criterion_7());
  results.emplace_back("criterion 8 — weighted measures and zero-measure merge", criterion_8());
  results.emplace_back("criterion 9 — formula faithfulness and canonical reports", criterion_9());

  bool hard_fail = false;
  for (const auto& [label, outcome] : results) {
    const char* tag = outcome.pass ? "[PASS]" : (outcome.soft ? "[WARN]" : "[FAIL]");
    if (!outcome.pass && !outcome.soft) hard_fail = true;
    std::cout << tag << " " << label;
    if (!outcome.detail.empty()) std::cout << " — " << outcome.detail;
    std::cout << "\n";
  }
  return hard_fail ? 1 : 0;
}
