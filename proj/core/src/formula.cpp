#include "stablereg/formula.hpp"

#include <utility>

namespace stablereg {

DeltaFormula DeltaFormula::edge_atom(std::uint32_t opposite_vertex) {
  DeltaFormula f;
  f.kind = Kind::edge;
  f.param = opposite_vertex;
  return f;
}

DeltaFormula DeltaFormula::equals_atom(std::uint32_t same_side_vertex) {
  DeltaFormula f;
  f.kind = Kind::equals;
  f.param = same_side_vertex;
  return f;
}

DeltaFormula DeltaFormula::negation_of(DeltaFormula child) {
  DeltaFormula f;
  f.kind = Kind::negation;
  f.children.push_back(std::move(child));
  return f;
}

DeltaFormula DeltaFormula::conjunction_of(std::vector<DeltaFormula> fs) {
  DeltaFormula f;
  f.kind = Kind::conjunction;
  f.children = std::move(fs);
  return f;
}

DeltaFormula DeltaFormula::disjunction_of(std::vector<DeltaFormula> fs) {
  DeltaFormula f;
  f.kind = Kind::disjunction;
  f.children = std::move(fs);
  return f;
}

namespace {

Bitset eval_bits(const DeltaFormula& f, const BipartiteGraph& g, Side subject) {
  const std::uint32_t n = g.side_size(subject);
  switch (f.kind) {
    case DeltaFormula::Kind::truth:
      return Bitset::full(n);
    case DeltaFormula::Kind::edge: {
      require(f.param < g.side_size(opposite(subject)), Errc::index_out_of_range,
              "edge atom parameter out of range");
      return g.neighborhood(opposite(subject), f.param);
    }
    case DeltaFormula::Kind::equals: {
      require(f.param < n, Errc::index_out_of_range, "equality atom parameter out of range");
      return Bitset::singleton(n, f.param);
    }
    case DeltaFormula::Kind::negation: {
      require(f.children.size() == 1, Errc::internal, "negation node must have one child");
      return ~eval_bits(f.children.front(), g, subject);
    }
    case DeltaFormula::Kind::conjunction: {
      Bitset acc = Bitset::full(n);
      for (const auto& c : f.children) acc &= eval_bits(c, g, subject);
      return acc;
    }
    case DeltaFormula::Kind::disjunction: {
      Bitset acc(n);
      for (const auto& c : f.children) acc |= eval_bits(c, g, subject);
      return acc;
    }
  }
  raise(Errc::internal, "unknown formula node kind");
}

}  // namespace

VertexSet evaluate(const DeltaFormula& f, const BipartiteGraph& g, Side subject) {
  return {subject, eval_bits(f, g, subject)};
}

namespace {

void display(const DeltaFormula& f, Side subject, std::string& out) {
  const char* var = subject == Side::left ? "x" : "y";
  const char* opp = subject == Side::left ? "b" : "a";
  const char* same = subject == Side::left ? "a" : "b";
  switch (f.kind) {
    case DeltaFormula::Kind::truth:
      out += "true";
      return;
    case DeltaFormula::Kind::edge:
      out += "R(";
      if (subject == Side::left) {
        out += var;
        out += ",";
        out += opp + std::to_string(f.param);
      } else {
        out += opp + std::to_string(f.param);
        out += ",";
        out += var;
      }
      out += ")";
      return;
    case DeltaFormula::Kind::equals:
      out += var;
      out += "=";
      out += same + std::to_string(f.param);
      return;
    case DeltaFormula::Kind::negation:
      out += "!";
      display(f.children.front(), subject, out);
      return;
    case DeltaFormula::Kind::conjunction:
    case DeltaFormula::Kind::disjunction: {
      const char* op = f.kind == DeltaFormula::Kind::conjunction ? " & " : " | ";
      out += "(";
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i > 0) out += op;
        display(f.children[i], subject, out);
      }
      out += ")";
      return;
    }
  }
}

}  // namespace

std::string to_display_string(const DeltaFormula& f, Side subject) {
  std::string out;
  display(f, subject, out);
  return out;
}

}  // namespace stablereg
