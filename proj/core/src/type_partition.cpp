#include "stablereg/type_partition.hpp"

#include <map>
#include <utility>

namespace stablereg {

namespace {

DeltaFormula formula_for_trace(const std::vector<bool>& trace,
                               const std::vector<std::uint32_t>& opposite_params,
                               const std::vector<std::uint32_t>& same_params) {
  if (trace.empty()) return DeltaFormula::truth();
  std::vector<DeltaFormula> literals;
  literals.reserve(trace.size());
  std::size_t t = 0;
  for (std::uint32_t p : opposite_params) {
    DeltaFormula atom = DeltaFormula::edge_atom(p);
    literals.push_back(trace[t++] ? std::move(atom) : DeltaFormula::negation_of(std::move(atom)));
  }
  for (std::uint32_t p : same_params) {
    DeltaFormula atom = DeltaFormula::equals_atom(p);
    literals.push_back(trace[t++] ? std::move(atom) : DeltaFormula::negation_of(std::move(atom)));
  }
  return DeltaFormula::conjunction_of(std::move(literals));
}

}  // namespace

std::vector<TypeClass> type_partition(const BipartiteGraph& g, const ParameterSet& m, Side side) {
  require(m.m_left.side == Side::left && m.m_right.side == Side::right, Errc::side_mismatch,
          "parameter set sides are swapped");
  require(m.m_left.bits.size() == g.n_left() && m.m_right.bits.size() == g.n_right(),
          Errc::side_mismatch, "parameter set does not match graph dimensions");

  const std::uint32_t n = g.side_size(side);
  const VertexSet& opp_set = side == Side::left ? m.m_right : m.m_left;
  const VertexSet& same_set = side == Side::left ? m.m_left : m.m_right;
  const std::vector<std::uint32_t> opp_params = opp_set.bits.to_indices();
  const std::vector<std::uint32_t> same_params = same_set.bits.to_indices();

  // std::map keys are compared lexicographically, which fixes the class order.
  std::map<std::vector<bool>, Bitset> buckets;
  std::vector<bool> trace(opp_params.size() + same_params.size());
  for (std::uint32_t v = 0; v < n; ++v) {
    std::size_t t = 0;
    for (std::uint32_t p : opp_params) trace[t++] = g.neighborhood(opposite(side), p).test(v);
    for (std::uint32_t p : same_params) trace[t++] = (v == p);
    auto [it, inserted] = buckets.try_emplace(trace, n);
    it->second.set(v);
  }

  std::vector<TypeClass> classes;
  classes.reserve(buckets.size());
  for (auto& [tr, bits] : buckets) {
    TypeClass c;
    c.side = side;
    c.members = VertexSet(side, std::move(bits));
    c.trace = tr;
    c.formula = formula_for_trace(tr, opp_params, same_params);
    // Self-test: the synthesized formula must reproduce the bucket bit-exactly.
    require(evaluate(c.formula, g, side) == c.members, Errc::internal,
            "type class formula does not evaluate to its members");
    classes.push_back(std::move(c));
  }
  return classes;
}

TypeClass type_of(const BipartiteGraph& g, const ParameterSet& m, std::uint32_t vertex, Side side) {
  require(vertex < g.side_size(side), Errc::index_out_of_range, "vertex out of range");
  auto classes = type_partition(g, m, side);
  for (auto& c : classes)
    if (c.members.bits.test(vertex)) return std::move(c);
  raise(Errc::internal, "type classes failed to cover the side");
}

}  // namespace stablereg
