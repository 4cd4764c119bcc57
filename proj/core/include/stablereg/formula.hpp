#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stablereg/graph.hpp"

namespace stablereg {

/// Boolean-combination formula over one free variable ranging over a graph
/// side. Atoms are edge tests against an opposite-side vertex and equality
/// tests against a same-side vertex. The subject side is contextual: the same
/// tree denotes a subset of V or of W depending on how it is evaluated.
struct DeltaFormula {
  enum class Kind { truth, edge, equals, negation, conjunction, disjunction };

  Kind kind = Kind::truth;
  std::uint32_t param = 0;               // edge / equals only
  std::vector<DeltaFormula> children;    // negation: exactly one; and/or: any

  static DeltaFormula truth() { return {}; }
  static DeltaFormula edge_atom(std::uint32_t opposite_vertex);
  static DeltaFormula equals_atom(std::uint32_t same_side_vertex);
  static DeltaFormula negation_of(DeltaFormula f);
  static DeltaFormula conjunction_of(std::vector<DeltaFormula> fs);
  static DeltaFormula disjunction_of(std::vector<DeltaFormula> fs);

  bool operator==(const DeltaFormula&) const = default;
};

/// Standard set semantics on `subject`: edge atoms evaluate to neighborhoods,
/// equality atoms to singletons. Parameters are range-checked against `g`.
VertexSet evaluate(const DeltaFormula& f, const BipartiteGraph& g, Side subject);

/// Compact display form, e.g. "R(x,b3) & !x=a0".
std::string to_display_string(const DeltaFormula& f, Side subject);

}  // namespace stablereg
