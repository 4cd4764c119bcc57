#pragma once

#include <cstdint>
#include <vector>

#include "stablereg/formula.hpp"
#include "stablereg/graph.hpp"

namespace stablereg {

/// A finite parameter set M: chosen vertices on each side. Formulas over M use
/// right parameters as edge atoms for left subjects (and vice versa) and
/// same-side parameters as equality atoms.
struct ParameterSet {
  VertexSet m_left;
  VertexSet m_right;

  static ParameterSet empty_for(const BipartiteGraph& g) {
    return {VertexSet::empty_set(Side::left, g.n_left()),
            VertexSet::empty_set(Side::right, g.n_right())};
  }
};

/// One complete type class over M: the vertices sharing a trace, the trace
/// itself (opposite-side membership bits then same-side equality bits, each in
/// ascending parameter order), and a defining formula in signed-conjunction
/// form that evaluates exactly to the members.
struct TypeClass {
  Side side = Side::left;
  VertexSet members;
  std::vector<bool> trace;
  DeltaFormula formula;
};

/// Complete type classes of `side` over M, ordered lexicographically by trace.
/// Classes are nonempty, pairwise disjoint, and cover the side. Each formula is
/// synthesized from the trace and re-checked against the member set.
std::vector<TypeClass> type_partition(const BipartiteGraph& g, const ParameterSet& m, Side side);

/// The unique class of `type_partition(g, m, side)` containing `vertex`.
TypeClass type_of(const BipartiteGraph& g, const ParameterSet& m, std::uint32_t vertex, Side side);

}  // namespace stablereg
