#include "stablereg/verify.hpp"

#include <algorithm>
#include <boost/multiprecision/integer.hpp>
#include <random>

#include "stablereg/parallel.hpp"

namespace stablereg {

namespace {

// ---------------------------------------------------------------------------
// Theorem clause recomputation. Deliberately written over per-vertex index
// scans and has_edge tests so it shares no machinery with the classification
// path in the regularity module.
// ---------------------------------------------------------------------------

struct RecomputedClause {
  std::vector<std::uint32_t> exc_left;
  std::vector<std::uint32_t> exc_right;
  Rational exc_left_mass;   // relative to mu(Vi)
  Rational exc_right_mass;  // relative to nu(Wj)
  bool holds = false;
};

RecomputedClause recompute_clause(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
                                  const std::vector<std::uint32_t>& vi,
                                  const std::vector<std::uint32_t>& wj, const Rational& eps,
                                  bool dense) {
  Rational vi_mass(0), wj_mass(0);
  for (auto a : vi) vi_mass += mu.weight(a);
  for (auto b : wj) wj_mass += nu.weight(b);

  RecomputedClause out;
  Rational exc_left_abs(0), exc_right_abs(0);
  for (auto a : vi) {
    Rational bad(0);
    for (auto b : wj)
      if (g.has_edge(a, b) != dense) bad += nu.weight(b);
    if (bad > eps * wj_mass) {
      out.exc_left.push_back(a);
      exc_left_abs += mu.weight(a);
    }
  }
  for (auto b : wj) {
    Rational bad(0);
    for (auto a : vi)
      if (g.has_edge(a, b) != dense) bad += mu.weight(a);
    if (bad > eps * vi_mass) {
      out.exc_right.push_back(b);
      exc_right_abs += nu.weight(b);
    }
  }
  out.exc_left_mass = vi_mass > 0 ? Rational(exc_left_abs / vi_mass) : Rational(0);
  out.exc_right_mass = wj_mass > 0 ? Rational(exc_right_abs / wj_mass) : Rational(0);
  out.holds = out.exc_left_mass <= eps && out.exc_right_mass <= eps;
  return out;
}

bool same_members(const std::vector<std::uint32_t>& indices, const VertexSet& stored) {
  if (indices.size() != stored.count()) return false;
  for (auto v : indices)
    if (v >= stored.bits.size() || !stored.bits.test(v)) return false;
  return true;
}

}  // namespace

std::optional<PairVerdict> oracle_goodness(const BipartiteGraph& g, const Measure& mu,
                                           const Measure& nu, const VertexSet& Vi,
                                           const VertexSet& Wj, const Rational& eps) {
  require(Vi.side == Side::left && Wj.side == Side::right, Errc::side_mismatch,
          "pair must be (left part, right part)");
  require(Vi.bits.size() == g.n_left() && Wj.bits.size() == g.n_right(), Errc::side_mismatch,
          "parts do not match graph dimensions");
  require(!Vi.empty() && !Wj.empty(), Errc::empty_input, "parts must be nonempty");
  require(eps > 0, Errc::invalid_epsilon, "epsilon must be positive");
  const auto vi = Vi.bits.to_indices();
  const auto wj = Wj.bits.to_indices();
  Rational vi_mass(0), wj_mass(0);
  for (auto a : vi) vi_mass += mu.weight(a);
  for (auto b : wj) wj_mass += nu.weight(b);
  require(vi_mass > 0, Errc::zero_measure_part, "mu(Vi) = 0");
  require(wj_mass > 0, Errc::zero_measure_part, "nu(Wj) = 0");

  const RecomputedClause dense = recompute_clause(g, mu, nu, vi, wj, eps, true);
  const RecomputedClause sparse = recompute_clause(g, mu, nu, vi, wj, eps, false);
  const RecomputedClause* pick = nullptr;
  PairVerdict v;
  if (dense.holds) {
    pick = &dense;
    v.verdict_case = PairCase::dense;
    v.both_hold = sparse.holds;
  } else if (sparse.holds) {
    pick = &sparse;
    v.verdict_case = PairCase::sparse;
    v.both_hold = false;
  } else {
    return std::nullopt;
  }
  v.exc_left_mass = pick->exc_left_mass;
  v.exc_right_mass = pick->exc_right_mass;
  v.exc_left = VertexSet(Side::left, Bitset::from_indices(g.n_left(), pick->exc_left));
  v.exc_right = VertexSet(Side::right, Bitset::from_indices(g.n_right(), pick->exc_right));
  return v;
}

namespace {

void check_partition_shape(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
                           const RegularityPartition& p) {
  require(mu.side() == Side::left && mu.size() == g.n_left() && nu.side() == Side::right &&
              nu.size() == g.n_right(),
          Errc::shape_mismatch, "measures do not match the graph");
  require(!p.parts_left.empty() && !p.parts_right.empty(), Errc::shape_mismatch,
          "partition has an empty side");
  for (const auto& part : p.parts_left)
    require(part.members.side == Side::left && part.members.bits.size() == g.n_left(),
            Errc::shape_mismatch, "left part does not match the graph");
  for (const auto& part : p.parts_right)
    require(part.members.side == Side::right && part.members.bits.size() == g.n_right(),
            Errc::shape_mismatch, "right part does not match the graph");
  require(p.verdicts.size() == p.parts_left.size(), Errc::shape_mismatch,
          "verdict matrix row count mismatch");
  for (const auto& row : p.verdicts)
    require(row.size() == p.parts_right.size(), Errc::shape_mismatch,
            "verdict matrix column count mismatch");
}

bool partition_laws_hold(const std::vector<Part>& parts, std::uint32_t n) {
  Bitset seen(n);
  for (const auto& part : parts) {
    if (part.members.bits.empty()) return false;
    if (seen.intersects(part.members.bits)) return false;
    seen |= part.members.bits;
  }
  return seen == Bitset::full(n);
}

}  // namespace

VerificationReport check_theorem(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
                                 const RegularityPartition& p) {
  check_partition_shape(g, mu, nu, p);

  VerificationReport report;
  report.partition_laws =
      partition_laws_hold(p.parts_left, g.n_left()) && partition_laws_hold(p.parts_right, g.n_right());

  report.formula_faithful = true;
  for (const auto& part : p.parts_left)
    if (evaluate(part.formula, g, Side::left) != part.members) report.formula_faithful = false;
  for (const auto& part : p.parts_right)
    if (evaluate(part.formula, g, Side::right) != part.members) report.formula_faithful = false;

  const Rational& eps = p.epsilon;
  bool pairs_pass = true;
  for (std::uint32_t i = 0; i < p.parts_left.size(); ++i) {
    const auto vi = p.parts_left[i].members.bits.to_indices();
    for (std::uint32_t j = 0; j < p.parts_right.size(); ++j) {
      const auto wj = p.parts_right[j].members.bits.to_indices();
      const PairVerdict& stored = p.verdicts[i][j];

      PairCheck check;
      check.i = i;
      check.j = j;
      const RecomputedClause dense = recompute_clause(g, mu, nu, vi, wj, eps, true);
      const RecomputedClause sparse = recompute_clause(g, mu, nu, vi, wj, eps, false);
      check.recomputed_both_hold = dense.holds && sparse.holds;
      const RecomputedClause* pick = nullptr;
      if (dense.holds) {
        check.recomputed_case = PairCase::dense;
        pick = &dense;
      } else if (sparse.holds) {
        check.recomputed_case = PairCase::sparse;
        pick = &sparse;
      }

      if (!pick) {
        check.failure = "neither clause holds for this pair";
      } else {
        check.exc_left_mass = pick->exc_left_mass;
        check.exc_right_mass = pick->exc_right_mass;
        if (*check.recomputed_case != stored.verdict_case)
          check.failure = "stored case disagrees with recomputation";
        else if (!same_members(pick->exc_left, stored.exc_left) ||
                 !same_members(pick->exc_right, stored.exc_right))
          check.failure = "stored exceptional sets disagree with recomputation";
        else if (stored.exc_left_mass != pick->exc_left_mass ||
                 stored.exc_right_mass != pick->exc_right_mass)
          check.failure = "stored exceptional masses disagree with recomputation";
        else if (pick->exc_left_mass > eps || pick->exc_right_mass > eps)
          check.failure = "exceptional mass exceeds epsilon";
        else if (stored.both_hold != (dense.holds && sparse.holds))
          check.failure = "stored both_hold flag disagrees with recomputation";
      }
      check.pass = check.failure.empty();
      pairs_pass = pairs_pass && check.pass;
      report.pairs.push_back(std::move(check));
    }
  }
  report.all_pass = report.partition_laws && report.formula_faithful && pairs_pass;
  return report;
}

// ---------------------------------------------------------------------------
// Delta regularity
// ---------------------------------------------------------------------------

namespace {

/// Uniform 64-bit draw below `k` (rejection, no modulo bias).
std::uint64_t draw_below_u64(std::mt19937_64& rng, std::uint64_t k) {
  const std::uint64_t limit = k == 0 ? 0 : (~std::uint64_t{0} - ~std::uint64_t{0} % k);
  while (true) {
    const std::uint64_t r = rng();
    if (r < limit) return r % k;
  }
}

/// Uniform draw in [0, bound) for arbitrary-precision bounds.
Int draw_below_int(std::mt19937_64& rng, const Int& bound) {
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  const unsigned words = (bits + 63) / 64;
  while (true) {
    Int r = 0;
    for (unsigned w = 0; w < words; ++w) {
      r <<= 64;
      r |= Int(rng());
    }
    r >>= (64 - bits % 64) % 64;
    if (r < bound) return r;
  }
}

/// Mass comparisons run on a caller-chosen integer type: int64 whenever the
/// denominators fit comfortably (vastly faster), cpp_int otherwise. The logic
/// is written once and instantiated for both.
template <typename I>
class DeltaChecker {
 public:
  DeltaChecker(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
               const RegularityPartition& p, const Rational& delta)
      : g_(g),
        mu_(mu),
        nu_(nu),
        p_(p),
        dn_(to_i(numerator(delta))),
        dd_(to_i(denominator(delta))) {
    wl_.reserve(g.n_left());
    for (std::uint32_t v = 0; v < g.n_left(); ++v) wl_.push_back(to_i(mu.num(v)));
    wr_.reserve(g.n_right());
    for (std::uint32_t v = 0; v < g.n_right(); ++v) wr_.push_back(to_i(nu.num(v)));
  }

  /// Exhaustive subset-pair enumeration over one part pair.
  void run_exhaustive(std::uint32_t i, std::uint32_t j, std::uint64_t& tested,
                      std::vector<DeltaViolation>& out) const {
    const auto vi = p_.parts_left[i].members.bits.to_indices();
    const auto wj = p_.parts_right[j].members.bits.to_indices();
    const bool dense = p_.verdicts[i][j].verdict_case == PairCase::dense;
    const auto np = static_cast<std::uint32_t>(vi.size());
    const auto nq = static_cast<std::uint32_t>(wj.size());

    // Local neighborhood masks between the two parts.
    std::vector<std::uint32_t> adj(np, 0);
    for (std::uint32_t x = 0; x < np; ++x)
      for (std::uint32_t y = 0; y < nq; ++y)
        if (g_.has_edge(vi[x], wj[y])) adj[x] |= std::uint32_t{1} << y;

    const auto table = [](const std::vector<std::uint32_t>& idx, const std::vector<I>& w) {
      std::vector<I> t(std::size_t{1} << idx.size());
      t[0] = 0;
      for (std::size_t mask = 1; mask < t.size(); ++mask) {
        const auto low = static_cast<std::uint32_t>(std::countr_zero(mask));
        t[mask] = t[mask & (mask - 1)] + w[idx[low]];
      }
      return t;
    };
    const std::vector<I> mass_a = table(vi, wl_);
    const std::vector<I> mass_b = table(wj, wr_);

    std::vector<std::uint32_t> elig_a, elig_b;
    for (std::uint32_t mask = 0; mask < mass_a.size(); ++mask)
      if (mass_a[mask] * dd_ >= dn_ * mass_a.back()) elig_a.push_back(mask);
    for (std::uint32_t mask = 0; mask < mass_b.size(); ++mask)
      if (mass_b[mask] * dd_ >= dn_ * mass_b.back()) elig_b.push_back(mask);

    // Exceptional membership only depends on the opposite subset; precompute
    // one exceptional mask per eligible opposite subset.
    std::vector<std::uint32_t> excl(mass_b.size(), 0);  // a-exceptional per B
    for (const std::uint32_t bm : elig_b) {
      const I rhs = dn_ * mass_b[bm];
      std::uint32_t mask = 0;
      for (std::uint32_t x = 0; x < np; ++x) {
        const std::uint32_t bad = dense ? (bm & ~adj[x]) : (bm & adj[x]);
        if (mass_b[bad] * dd_ > rhs) mask |= std::uint32_t{1} << x;
      }
      excl[bm] = mask;
    }
    std::vector<std::uint32_t> cols(nq, 0);
    for (std::uint32_t x = 0; x < np; ++x)
      for (std::uint32_t y = 0; y < nq; ++y)
        if (adj[x] & (std::uint32_t{1} << y)) cols[y] |= std::uint32_t{1} << x;
    std::vector<std::uint32_t> excr(mass_a.size(), 0);  // b-exceptional per A
    for (const std::uint32_t am : elig_a) {
      const I rhs = dn_ * mass_a[am];
      std::uint32_t mask = 0;
      for (std::uint32_t y = 0; y < nq; ++y) {
        const std::uint32_t bad = dense ? (am & ~cols[y]) : (am & cols[y]);
        if (mass_a[bad] * dd_ > rhs) mask |= std::uint32_t{1} << y;
      }
      excr[am] = mask;
    }

    const auto to_global = [](std::uint32_t mask, const std::vector<std::uint32_t>& idx) {
      std::vector<std::uint32_t> out_idx;
      for (std::uint32_t x = 0; x < idx.size(); ++x)
        if (mask & (std::uint32_t{1} << x)) out_idx.push_back(idx[x]);
      return out_idx;
    };

    for (const std::uint32_t am : elig_a) {
      const I rhs_a = dn_ * mass_a[am];
      for (const std::uint32_t bm : elig_b) {
        ++tested;
        if (mass_a[am & excl[bm]] * dd_ > rhs_a)
          out.push_back({i, j, to_global(am, vi), to_global(bm, wj), Side::left});
        if (mass_b[bm & excr[am]] * dd_ > dn_ * mass_b[bm])
          out.push_back({i, j, to_global(am, vi), to_global(bm, wj), Side::right});
      }
    }
  }

  void run_sampled(std::uint32_t i, std::uint32_t j, std::uint64_t samples, std::uint64_t seed,
                   std::uint64_t& tested, std::vector<DeltaViolation>& out) const {
    const bool dense = p_.verdicts[i][j].verdict_case == PairCase::dense;
    const PartContext actx = make_context(p_.parts_left[i], wl_, mu_.uniform());
    const PartContext bctx = make_context(p_.parts_right[j], wr_, nu_.uniform());
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> pool;
    Bitset scratch_r(g_.n_right());
    Bitset scratch_l(g_.n_left());
    for (std::uint64_t t = 0; t < samples; ++t) {
      const Bitset A = sample_subset(actx, g_.n_left(), rng, pool);
      const Bitset B = sample_subset(bctx, g_.n_right(), rng, pool);
      ++tested;
      if (!direction_ok(Side::left, A, B, dense, scratch_r))
        out.push_back({i, j, A.to_indices(), B.to_indices(), Side::left});
      if (!direction_ok(Side::right, B, A, dense, scratch_l))
        out.push_back({i, j, A.to_indices(), B.to_indices(), Side::right});
    }
  }

 private:
  struct PartContext {
    std::vector<std::uint32_t> indices;
    bool uniform = false;
    I threshold_rhs{};           // delta_num * part mass
    std::vector<Int> cum_sizes;  // uniform sampling: cumulative C(n, s) for s >= smin
    std::uint32_t smin = 0;
  };

  static I to_i(const Int& x) {
    if constexpr (std::is_same_v<I, Int>)
      return x;
    else
      return x.template convert_to<I>();
  }

  I subset_mass(const Bitset& s, const std::vector<I>& w, bool uniform) const {
    if (uniform) return w.front() * I(s.count());
    I total{};
    s.for_each([&](std::uint32_t v) { total += w[v]; });
    return total;
  }

  PartContext make_context(const Part& part, const std::vector<I>& w, bool uniform) const {
    PartContext ctx;
    ctx.indices = part.members.bits.to_indices();
    ctx.uniform = uniform;
    ctx.threshold_rhs = dn_ * subset_mass(part.members.bits, w, uniform);
    if (uniform) {
      // Uniform weights make the mass threshold a pure size threshold:
      // mass(A) = |A| * mass/n, so mass(A)*dd >= dn*mass  <=>  |A|*dd >= dn*n.
      const auto n = static_cast<std::uint32_t>(ctx.indices.size());
      std::uint32_t smin = 0;
      while (smin <= n && Int(smin) * Int(dd_) < Int(dn_) * n) ++smin;
      ctx.smin = smin;
      std::vector<Int> binom(n + 1);
      binom[0] = 1;
      for (std::uint32_t s = 1; s <= n; ++s) binom[s] = binom[s - 1] * (n - s + 1) / s;
      Int cum = 0;
      ctx.cum_sizes.reserve(n + 1 - smin);
      for (std::uint32_t s = smin; s <= n; ++s) {
        cum += binom[s];
        ctx.cum_sizes.push_back(cum);
      }
    }
    return ctx;
  }

  /// Draws a uniform eligible subset. Uniform measures sample a size
  /// proportionally to the subset counts and then a uniform subset of that
  /// size; general measures retry coin-flip subsets and fall back to the full
  /// part when eligibility is too rare to hit.
  Bitset sample_subset(const PartContext& ctx, std::uint32_t universe, std::mt19937_64& rng,
                       std::vector<std::uint32_t>& pool) const {
    if (ctx.uniform) {
      const Int pick = draw_below_int(rng, ctx.cum_sizes.back());
      const auto it = std::upper_bound(ctx.cum_sizes.begin(), ctx.cum_sizes.end(), pick);
      const std::uint32_t s =
          ctx.smin + static_cast<std::uint32_t>(std::distance(ctx.cum_sizes.begin(), it));
      pool = ctx.indices;
      Bitset subset(universe);
      for (std::uint32_t t = 0; t < s; ++t) {
        const std::uint64_t r = draw_below_u64(rng, pool.size() - t);
        std::swap(pool[t], pool[t + r]);
        subset.set(pool[t]);
      }
      return subset;
    }
    const std::vector<I>& w = universe == g_.n_left() ? wl_ : wr_;
    for (int attempt = 0; attempt < 256; ++attempt) {
      Bitset subset(universe);
      std::uint64_t word = 0;
      int bits_left = 0;
      for (const std::uint32_t v : ctx.indices) {
        if (bits_left == 0) {
          word = rng();
          bits_left = 64;
        }
        if (word & 1) subset.set(v);
        word >>= 1;
        --bits_left;
      }
      if (subset_mass(subset, w, false) * dd_ >= ctx.threshold_rhs) return subset;
    }
    return Bitset::from_indices(universe, ctx.indices);  // the full part is always eligible
  }

  /// Mass of B minus/intersect N(a), fused over the raw words.
  I bad_mass(const Bitset& B, const Bitset& nbr, bool dense, const std::vector<I>& w,
             bool uniform) const {
    const auto wb = B.words();
    const auto wn = nbr.words();
    if (uniform) {
      std::uint32_t cnt = 0;
      for (std::size_t k = 0; k < wb.size(); ++k)
        cnt += static_cast<std::uint32_t>(std::popcount(dense ? wb[k] & ~wn[k] : wb[k] & wn[k]));
      return w.front() * I(cnt);
    }
    I total{};
    for (std::size_t k = 0; k < wb.size(); ++k) {
      std::uint64_t word = dense ? wb[k] & ~wn[k] : wb[k] & wn[k];
      while (word != 0) {
        total += w[(k << 6) + static_cast<std::uint32_t>(std::countr_zero(word))];
        word &= word - 1;
      }
    }
    return total;
  }

  /// One direction of the delta check: exceptional members of A (w.r.t.
  /// adjacency into B) must carry at most delta of A's mass.
  bool direction_ok(Side a_side, const Bitset& A, const Bitset& B, bool dense) const {
    const std::vector<I>& wa = a_side == Side::left ? wl_ : wr_;
    const std::vector<I>& wb = a_side == Side::left ? wr_ : wl_;
    const bool ua = a_side == Side::left ? mu_.uniform() : nu_.uniform();
    const bool ub = a_side == Side::left ? nu_.uniform() : mu_.uniform();
    const I rhs_inner = dn_ * subset_mass(B, wb, ub);
    I exc{};
    A.for_each([&](std::uint32_t a) {
      if (bad_mass(B, g_.neighborhood(a_side, a), dense, wb, ub) * dd_ > rhs_inner) exc += wa[a];
    });
    return exc * dd_ <= dn_ * subset_mass(A, wa, ua);
  }

  const BipartiteGraph& g_;
  const Measure& mu_;
  const Measure& nu_;
  const RegularityPartition& p_;
  I dn_;
  I dd_;
  std::vector<I> wl_;
  std::vector<I> wr_;
};

template <typename I>
void run_delta_checks(const BipartiteGraph& g, const Measure& mu, const Measure& nu,
                      const RegularityPartition& p, DeltaMode mode, std::uint64_t budget,
                      std::uint64_t seed, DeltaRegularityReport& report) {
  const std::size_t n = p.parts_right.size();
  const std::size_t pairs = p.parts_left.size() * n;
  report.pairs_checked = pairs;

  const DeltaChecker<I> checker(g, mu, nu, p, report.delta);
  std::vector<std::uint64_t> tested(pairs, 0);
  std::vector<std::vector<DeltaViolation>> violations(pairs);

  parallel_for_index(pairs, [&](std::size_t pair_index) {
    const auto i = static_cast<std::uint32_t>(pair_index / n);
    const auto j = static_cast<std::uint32_t>(pair_index % n);
    if (mode == DeltaMode::exhaustive) {
      checker.run_exhaustive(i, j, tested[pair_index], violations[pair_index]);
    } else {
      const std::uint64_t base = budget / pairs;
      const std::uint64_t samples = base + (pair_index < budget % pairs ? 1 : 0);
      // Distinct stream per pair, independent of scheduling.
      const std::uint64_t pair_seed = seed ^ (0x9E3779B97F4A7C15ULL * (pair_index + 1));
      checker.run_sampled(i, j, samples, pair_seed, tested[pair_index], violations[pair_index]);
    }
  });

  for (std::size_t k = 0; k < pairs; ++k) {
    report.subset_pairs_tested += tested[k];
    for (auto& v : violations[k]) report.violations.push_back(std::move(v));
  }
}

}  // namespace

DeltaRegularityReport check_delta_regularity(const BipartiteGraph& g, const Measure& mu,
                                             const Measure& nu, const RegularityPartition& p,
                                             DeltaMode mode, std::uint64_t budget,
                                             std::uint64_t seed) {
  check_partition_shape(g, mu, nu, p);
  DeltaRegularityReport report;
  report.mode = mode;
  report.seed = seed;
  report.delta = sqrt_upper_bound(Rational(2) * p.epsilon);

  if (mode == DeltaMode::exhaustive) {
    for (const auto& part : p.parts_left)
      require(part.members.count() <= 12, Errc::part_too_large,
              "exhaustive mode requires parts of at most 12 vertices");
    for (const auto& part : p.parts_right)
      require(part.members.count() <= 12, Errc::part_too_large,
              "exhaustive mode requires parts of at most 12 vertices");
  }

  // Products in the checker are bounded by denominator * delta_denominator, so
  // int64 is safe (and much faster) whenever everything stays below 2^31.
  const Int limit = Int(1) << 31;
  const bool fits_i64 = mu.den() < limit && nu.den() < limit &&
                        numerator(report.delta) < limit && denominator(report.delta) < limit;
  if (fits_i64)
    run_delta_checks<std::int64_t>(g, mu, nu, p, mode, budget, seed, report);
  else
    run_delta_checks<Int>(g, mu, nu, p, mode, budget, seed, report);
  return report;
}

}  // namespace stablereg
