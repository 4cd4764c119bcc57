#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "stablereg/graph.hpp"
#include "stablereg/measure.hpp"
#include "stablereg/rational.hpp"

using namespace stablereg;
using namespace test_helpers;

TEST_CASE("from_edges builds the complete 2x2 graph") {
  const std::vector<Edge> edges{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const auto g = BipartiteGraph::from_edges(2, 2, edges);
  CHECK(g.n_left() == 2);
  CHECK(g.n_right() == 2);
  CHECK(g.edge_count() == 4);
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b) CHECK(g.has_edge(a, b));
}

TEST_CASE("from_edges accepts the single non-edge graph") {
  const auto g = BipartiteGraph::from_edges(1, 1, {});
  CHECK_FALSE(g.has_edge(0, 0));
  CHECK(g.edge_count() == 0);
}

TEST_CASE("half graph rows match the i <= j rule") {
  const auto g = half_graph(3);
  CHECK(g.row(0).to_indices() == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(g.row(1).to_indices() == std::vector<std::uint32_t>{1, 2});
  CHECK(g.row(2).to_indices() == std::vector<std::uint32_t>{2});
}

TEST_CASE("from_edges rejects bad input") {
  CHECK_THROWS_AS(BipartiteGraph::from_edges(0, 3, {}), Error);
  CHECK_THROWS_AS(BipartiteGraph::from_edges(3, 0, {}), Error);
  const std::vector<Edge> bad{{3, 0}};
  CHECK_THROWS_AS(BipartiteGraph::from_edges(3, 3, bad), Error);
  const std::vector<Edge> bad2{{0, 7}};
  CHECK_THROWS_AS(BipartiteGraph::from_edges(3, 3, bad2), Error);
}

TEST_CASE("duplicate edges collapse") {
  const std::vector<Edge> edges{{0, 1}, {0, 1}, {0, 1}};
  const auto g = BipartiteGraph::from_edges(2, 2, edges);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("row/column duality holds on random graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_graph(13, 9, seed);
    for (std::uint32_t a = 0; a < g.n_left(); ++a)
      for (std::uint32_t b = 0; b < g.n_right(); ++b)
        CHECK(g.row(a).test(b) == g.col(b).test(a));
  }
}

TEST_CASE("counting measure is uniform and exact") {
  const auto g = complete_graph(4, 7);
  const auto mu = Measure::counting(g, Side::left);
  const auto nu = Measure::counting(g, Side::right);
  for (std::uint32_t v = 0; v < 4; ++v) CHECK(mu.weight(v) == Rational(1, 4));
  for (std::uint32_t v = 0; v < 7; ++v) CHECK(nu.weight(v) == Rational(1, 7));

  VertexSet three(Side::left, Bitset::from_indices(4, std::vector<std::uint32_t>{0, 2, 3}));
  CHECK(mu.mass(three) == Rational(3, 4));
}

TEST_CASE("measure_of full and empty sets") {
  const auto g = complete_graph(8, 5);
  const auto mu = Measure::counting(g, Side::left);
  CHECK(mu.mass(VertexSet::full_set(Side::left, 8)) == Rational(1));
  CHECK(mu.mass(VertexSet::empty_set(Side::left, 8)) == Rational(0));
  VertexSet three(Side::left, Bitset::from_indices(8, std::vector<std::uint32_t>{1, 4, 6}));
  CHECK(mu.mass(three) == Rational(3, 8));
  CHECK_THROWS_AS(mu.mass(VertexSet::full_set(Side::right, 5)), Error);
}

TEST_CASE("measure additivity over random disjoint sets") {
  std::mt19937_64 rng(11);
  const auto g = complete_graph(24, 3);
  for (int round = 0; round < 40; ++round) {
    const Measure mu = round % 2 == 0 ? Measure::counting(g, Side::left)
                                      : random_measure(rng, Side::left, 24);
    const Bitset s = random_subset(rng, 24);
    Bitset t = random_subset(rng, 24);
    t -= s;
    const VertexSet vs(Side::left, s), vt(Side::left, t), vu(Side::left, s | t);
    CHECK(mu.mass(vs) + mu.mass(vt) == mu.mass(vu));
  }
}

TEST_CASE("from_weights validates the measure contract") {
  CHECK_THROWS_AS(Measure::from_weights(Side::left, {Rational(1, 2), Rational(1, 3)}), Error);
  CHECK_THROWS_AS(Measure::from_weights(Side::left, {Rational(3, 2), Rational(-1, 2)}), Error);
  // zero weights are fine as long as the total is 1
  const auto m = Measure::from_weights(Side::left, {Rational(0), Rational(1, 3), Rational(2, 3)});
  CHECK(m.weight(0) == 0);
  CHECK(m.mass(VertexSet::full_set(Side::left, 3)) == 1);
  CHECK_FALSE(m.uniform());
}

TEST_CASE("pair_mass on canonical graphs") {
  const auto complete = complete_graph(3, 4);
  const auto mu = Measure::counting(complete, Side::left);
  const auto nu = Measure::counting(complete, Side::right);
  const auto full_l = VertexSet::full_set(Side::left, 3);
  const auto full_r = VertexSet::full_set(Side::right, 4);
  CHECK(pair_mass(mu, nu, full_l, full_r, complete, true) == Rational(1));
  CHECK(pair_mass(mu, nu, full_l, full_r, complete, false) == Rational(0));

  const auto empty = empty_graph(3, 4);
  CHECK(pair_mass(mu, nu, full_l, full_r, empty, true) == Rational(0));

  const auto hg = half_graph(3);
  const auto hmu = Measure::counting(hg, Side::left);
  const auto hnu = Measure::counting(hg, Side::right);
  const auto fl = VertexSet::full_set(Side::left, 3);
  const auto fr = VertexSet::full_set(Side::right, 3);
  CHECK(pair_mass(hmu, hnu, fl, fr, hg, true) == Rational(2, 3));
}

TEST_CASE("pair_mass complements to the product mass") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 30; ++round) {
    const auto g = random_graph(10, 12, 100 + round);
    const Measure mu = round % 2 == 0 ? Measure::counting(g, Side::left)
                                      : random_measure(rng, Side::left, 10);
    const Measure nu = round % 3 == 0 ? Measure::counting(g, Side::right)
                                      : random_measure(rng, Side::right, 12);
    const VertexSet A(Side::left, random_subset(rng, 10));
    const VertexSet B(Side::right, random_subset(rng, 12));
    const Rational with = pair_mass(mu, nu, A, B, g, true);
    const Rational without = pair_mass(mu, nu, A, B, g, false);
    CHECK(with + without == mu.mass(A) * nu.mass(B));
  }
}

TEST_CASE("rational string round trips") {
  CHECK(to_fraction_string(Rational(0)) == "0/1");
  CHECK(to_fraction_string(Rational(2, 4)) == "1/2");
  CHECK(parse_rational("3/9").value() == Rational(1, 3));
  CHECK(parse_rational("7").value() == Rational(7));
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK_FALSE(parse_rational("").has_value());
  CHECK_FALSE(parse_rational("a/b").has_value());
  CHECK_FALSE(parse_rational("1/2/3").has_value());
}

TEST_CASE("sqrt_upper_bound is exact on perfect squares and tight otherwise") {
  // 2 * 1/8 = 1/4 has the exact root 1/2
  CHECK(sqrt_upper_bound(Rational(1, 4)) == Rational(1, 2));
  CHECK(sqrt_upper_bound(Rational(0)) == Rational(0));
  CHECK(sqrt_upper_bound(Rational(1)) == Rational(1));

  for (const auto& x : {Rational(1, 5), Rational(1, 10), Rational(2, 10), Rational(29, 50)}) {
    const Rational d = sqrt_upper_bound(x);
    CHECK(d * d >= x);
    const Rational step(1, 1000000000);
    CHECK((d - step) * (d - step) < x);
  }
}

TEST_CASE("bitset iteration and algebra basics") {
  Bitset b(130);
  b.set(0);
  b.set(64);
  b.set(129);
  CHECK(b.count() == 3);
  CHECK(b.to_indices() == std::vector<std::uint32_t>{0, 64, 129});
  CHECK((~b).count() == 127);
  CHECK(((~b) & b).empty());
  CHECK((b | ~b) == Bitset::full(130));
  CHECK(b.is_subset_of(Bitset::full(130)));
  CHECK_THROWS_AS(b.set(130), Error);
  CHECK_THROWS_AS((void)(b & Bitset(10)), Error);
}
