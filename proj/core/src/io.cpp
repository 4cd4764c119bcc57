#include "stablereg/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace stablereg::io {

using nlohmann::json;

namespace {

json parse_json(std::istream& in) {
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  require(!j.is_discarded(), Errc::parse_error, "malformed JSON document");
  return j;
}

std::uint32_t get_u32(const json& j, const char* key) {
  require(j.is_object() && j.contains(key) && j[key].is_number_unsigned(), Errc::parse_error,
          std::string("expected unsigned integer field '") + key + "'");
  return j[key].get<std::uint32_t>();
}

std::uint64_t get_u64(const json& j, const char* key) {
  require(j.is_object() && j.contains(key) && j[key].is_number_unsigned(), Errc::parse_error,
          std::string("expected unsigned integer field '") + key + "'");
  return j[key].get<std::uint64_t>();
}

std::string get_string(const json& j, const char* key) {
  require(j.is_object() && j.contains(key) && j[key].is_string(), Errc::parse_error,
          std::string("expected string field '") + key + "'");
  return j[key].get<std::string>();
}

Rational get_rational(const json& j, const char* key) {
  auto r = parse_rational(get_string(j, key));
  require(r.has_value(), Errc::parse_error, std::string("field '") + key + "' is not a valid p/q rational");
  return *r;
}

std::vector<std::uint32_t> get_index_array(const json& j, const char* key) {
  require(j.is_object() && j.contains(key) && j[key].is_array(), Errc::parse_error,
          std::string("expected array field '") + key + "'");
  std::vector<std::uint32_t> out;
  out.reserve(j[key].size());
  for (const auto& e : j[key]) {
    require(e.is_number_unsigned(), Errc::parse_error, "vertex indices must be unsigned integers");
    out.push_back(e.get<std::uint32_t>());
  }
  return out;
}

BipartiteGraph graph_from_json(const json& j) {
  const std::uint32_t n = get_u32(j, "num_left");
  const std::uint32_t m = get_u32(j, "num_right");
  require(j.contains("edges") && j["edges"].is_array(), Errc::parse_error,
          "graph document needs an 'edges' array");
  std::vector<Edge> edges;
  edges.reserve(j["edges"].size());
  for (const auto& e : j["edges"]) {
    require(e.is_array() && e.size() == 2 && e[0].is_number_unsigned() && e[1].is_number_unsigned(),
            Errc::parse_error, "each edge must be a [left,right] index pair");
    edges.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
  }
  return BipartiteGraph::from_edges(n, m, edges);
}

BipartiteGraph graph_from_dense_text(std::istream& in) {
  std::uint32_t n = 0, m = 0;
  in >> n >> m;
  require(static_cast<bool>(in), Errc::parse_error, "dense graph header must be 'n m'");
  std::vector<Edge> edges;
  std::string row;
  for (std::uint32_t a = 0; a < n; ++a) {
    in >> row;
    require(static_cast<bool>(in) && row.size() == m, Errc::parse_error,
            "dense graph row " + std::to_string(a) + " must have exactly " + std::to_string(m) +
                " characters");
    for (std::uint32_t b = 0; b < m; ++b) {
      require(row[b] == '0' || row[b] == '1', Errc::parse_error,
              "dense graph rows may only contain '0' and '1'");
      if (row[b] == '1') edges.emplace_back(a, b);
    }
  }
  return BipartiteGraph::from_edges(n, m, edges);
}

}  // namespace

BipartiteGraph read_graph(std::istream& in) {
  // Sniff the format from the first non-space byte.
  int c = in.peek();
  while (c != std::char_traits<char>::eof() && std::isspace(c)) {
    in.get();
    c = in.peek();
  }
  require(c != std::char_traits<char>::eof(), Errc::parse_error, "empty graph input");
  if (c == '{') return graph_from_json(parse_json(in));
  return graph_from_dense_text(in);
}

BipartiteGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::parse_error, "cannot open graph file: " + path);
  return read_graph(in);
}

std::string write_graph_json(const BipartiteGraph& g) {
  json j;
  j["num_left"] = g.n_left();
  j["num_right"] = g.n_right();
  json edges = json::array();
  for (const auto& [a, b] : g.edges_sorted()) edges.push_back(json::array({a, b}));
  j["edges"] = std::move(edges);
  return j.dump() + "\n";
}

Measure read_measure_file(const std::string& path, Side side, const BipartiteGraph& g) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::parse_error, "cannot open measure file: " + path);
  json j = parse_json(in);
  require(j.is_array(), Errc::parse_error, "measure file must be a JSON array of 'p/q' strings");
  std::vector<Rational> weights;
  weights.reserve(j.size());
  for (const auto& e : j) {
    require(e.is_string(), Errc::parse_error, "measure weights must be 'p/q' strings");
    auto r = parse_rational(e.get<std::string>());
    require(r.has_value(), Errc::parse_error, "invalid rational weight: " + e.get<std::string>());
    weights.push_back(std::move(*r));
  }
  require(weights.size() == g.side_size(side), Errc::invalid_measure,
          "weight count does not match the " + std::string(side_name(side)) + " side");
  return Measure::from_weights(side, weights);
}

// -- formulas -----------------------------------------------------------------

json formula_to_json(const DeltaFormula& f) {
  json j;
  switch (f.kind) {
    case DeltaFormula::Kind::truth:
      j["kind"] = "true";
      return j;
    case DeltaFormula::Kind::edge:
      j["kind"] = "edge";
      j["param"] = f.param;
      return j;
    case DeltaFormula::Kind::equals:
      j["kind"] = "equals";
      j["param"] = f.param;
      return j;
    case DeltaFormula::Kind::negation:
      j["kind"] = "not";
      j["child"] = formula_to_json(f.children.front());
      return j;
    case DeltaFormula::Kind::conjunction:
    case DeltaFormula::Kind::disjunction: {
      j["kind"] = f.kind == DeltaFormula::Kind::conjunction ? "and" : "or";
      json kids = json::array();
      for (const auto& c : f.children) kids.push_back(formula_to_json(c));
      j["children"] = std::move(kids);
      return j;
    }
  }
  raise(Errc::internal, "unknown formula kind");
}

DeltaFormula formula_from_json(const json& j) {
  const std::string kind = get_string(j, "kind");
  if (kind == "true") return DeltaFormula::truth();
  if (kind == "edge") return DeltaFormula::edge_atom(get_u32(j, "param"));
  if (kind == "equals") return DeltaFormula::equals_atom(get_u32(j, "param"));
  if (kind == "not") {
    require(j.contains("child"), Errc::parse_error, "'not' node needs a 'child'");
    return DeltaFormula::negation_of(formula_from_json(j["child"]));
  }
  if (kind == "and" || kind == "or") {
    require(j.contains("children") && j["children"].is_array(), Errc::parse_error,
            "'" + kind + "' node needs a 'children' array");
    std::vector<DeltaFormula> kids;
    kids.reserve(j["children"].size());
    for (const auto& c : j["children"]) kids.push_back(formula_from_json(c));
    return kind == "and" ? DeltaFormula::conjunction_of(std::move(kids))
                         : DeltaFormula::disjunction_of(std::move(kids));
  }
  raise(Errc::parse_error, "unknown formula kind: " + kind);
}

// -- generator specs ----------------------------------------------------------

GeneratorSpec spec_from_json(const json& j) {
  const std::string fam = get_string(j, "family");
  if (fam == "half_graph") return family::HalfGraph{get_u32(j, "k")};
  if (fam == "complete")
    return family::CompleteBipartite{get_u32(j, "num_left"), get_u32(j, "num_right")};
  if (fam == "empty")
    return family::EmptyBipartite{get_u32(j, "num_left"), get_u32(j, "num_right")};
  if (fam == "rectangle_union") {
    family::RectangleUnion spec;
    spec.left_sizes = get_index_array(j, "left_sizes");
    spec.right_sizes = get_index_array(j, "right_sizes");
    spec.seed = j.contains("seed") ? get_u64(j, "seed") : 0;
    return spec;
  }
  if (fam == "random") {
    family::RandomBipartite spec;
    spec.n_left = get_u32(j, "num_left");
    spec.n_right = get_u32(j, "num_right");
    spec.density = get_rational(j, "density");
    spec.seed = j.contains("seed") ? get_u64(j, "seed") : 0;
    return spec;
  }
  raise(Errc::parse_error, "unknown generator family: " + fam);
}

json spec_to_json(const GeneratorSpec& spec) {
  json j;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, family::HalfGraph>) {
          j["family"] = "half_graph";
          j["k"] = s.k;
        } else if constexpr (std::is_same_v<T, family::CompleteBipartite>) {
          j["family"] = "complete";
          j["num_left"] = s.n_left;
          j["num_right"] = s.n_right;
        } else if constexpr (std::is_same_v<T, family::EmptyBipartite>) {
          j["family"] = "empty";
          j["num_left"] = s.n_left;
          j["num_right"] = s.n_right;
        } else if constexpr (std::is_same_v<T, family::RectangleUnion>) {
          j["family"] = "rectangle_union";
          j["left_sizes"] = s.left_sizes;
          j["right_sizes"] = s.right_sizes;
          j["seed"] = s.seed;
        } else if constexpr (std::is_same_v<T, family::RandomBipartite>) {
          j["family"] = "random";
          j["num_left"] = s.n_left;
          j["num_right"] = s.n_right;
          j["density"] = to_fraction_string(s.density);
          j["seed"] = s.seed;
        }
      },
      spec);
  return j;
}

// -- partition reports ---------------------------------------------------------

namespace {

json part_to_json(const Part& part) {
  json j;
  j["members"] = part.members.bits.to_indices();
  j["formula"] = formula_to_json(part.formula);
  return j;
}

json verdict_to_json(const PairVerdict& v) {
  json j;
  j["case"] = pair_case_name(v.verdict_case);
  j["exc_left"] = v.exc_left.bits.to_indices();
  j["exc_right"] = v.exc_right.bits.to_indices();
  j["exc_left_mass"] = to_fraction_string(v.exc_left_mass);
  j["exc_right_mass"] = to_fraction_string(v.exc_right_mass);
  j["both_hold"] = v.both_hold;
  return j;
}

}  // namespace

json partition_report(const RegularityPartition& p) {
  json j;
  j["tool_version"] = kToolVersion;
  j["epsilon"] = to_fraction_string(p.epsilon);
  j["iterations"] = p.iterations;
  j["parameters"] = {{"left", p.parameters.m_left.bits.to_indices()},
                     {"right", p.parameters.m_right.bits.to_indices()}};
  json left = json::array();
  for (const auto& part : p.parts_left) left.push_back(part_to_json(part));
  j["parts_left"] = std::move(left);
  json right = json::array();
  for (const auto& part : p.parts_right) right.push_back(part_to_json(part));
  j["parts_right"] = std::move(right);
  json verdicts = json::array();
  for (const auto& row : p.verdicts) {
    json jrow = json::array();
    for (const auto& v : row) jrow.push_back(verdict_to_json(v));
    verdicts.push_back(std::move(jrow));
  }
  j["verdicts"] = std::move(verdicts);
  return j;
}

std::string partition_report_string(const RegularityPartition& p) {
  return partition_report(p).dump(2) + "\n";
}

namespace {

VertexSet vertex_set_from_indices(Side side, std::uint32_t n,
                                  const std::vector<std::uint32_t>& indices) {
  for (auto v : indices)
    require(v < n, Errc::shape_mismatch,
            "vertex index " + std::to_string(v) + " out of range for the graph");
  return {side, Bitset::from_indices(n, indices)};
}

}  // namespace

RegularityPartition partition_from_report(const json& j, const BipartiteGraph& g) {
  RegularityPartition p;
  p.epsilon = get_rational(j, "epsilon");
  p.iterations = get_u32(j, "iterations");

  require(j.contains("parameters") && j["parameters"].is_object(), Errc::parse_error,
          "report needs a 'parameters' object");
  p.parameters.m_left =
      vertex_set_from_indices(Side::left, g.n_left(), get_index_array(j["parameters"], "left"));
  p.parameters.m_right =
      vertex_set_from_indices(Side::right, g.n_right(), get_index_array(j["parameters"], "right"));

  auto read_parts = [&](const char* key, Side side) {
    require(j.contains(key) && j[key].is_array(), Errc::parse_error,
            std::string("report needs a '") + key + "' array");
    std::vector<Part> parts;
    for (const auto& pj : j[key]) {
      Part part;
      part.members = vertex_set_from_indices(side, g.side_size(side), get_index_array(pj, "members"));
      require(pj.contains("formula"), Errc::parse_error, "part needs a 'formula'");
      part.formula = formula_from_json(pj["formula"]);
      parts.push_back(std::move(part));
    }
    return parts;
  };
  p.parts_left = read_parts("parts_left", Side::left);
  p.parts_right = read_parts("parts_right", Side::right);

  require(j.contains("verdicts") && j["verdicts"].is_array(), Errc::parse_error,
          "report needs a 'verdicts' matrix");
  require(j["verdicts"].size() == p.parts_left.size(), Errc::shape_mismatch,
          "verdict matrix rows do not match parts_left");
  for (const auto& jrow : j["verdicts"]) {
    require(jrow.is_array() && jrow.size() == p.parts_right.size(), Errc::shape_mismatch,
            "verdict matrix columns do not match parts_right");
    std::vector<PairVerdict> row;
    for (const auto& vj : jrow) {
      PairVerdict v;
      const std::string c = get_string(vj, "case");
      require(c == "dense" || c == "sparse", Errc::parse_error, "verdict case must be dense or sparse");
      v.verdict_case = c == "dense" ? PairCase::dense : PairCase::sparse;
      v.exc_left = vertex_set_from_indices(Side::left, g.n_left(), get_index_array(vj, "exc_left"));
      v.exc_right =
          vertex_set_from_indices(Side::right, g.n_right(), get_index_array(vj, "exc_right"));
      v.exc_left_mass = get_rational(vj, "exc_left_mass");
      v.exc_right_mass = get_rational(vj, "exc_right_mass");
      require(vj.contains("both_hold") && vj["both_hold"].is_boolean(), Errc::parse_error,
              "verdict needs a boolean 'both_hold'");
      v.both_hold = vj["both_hold"].get<bool>();
      row.push_back(std::move(v));
    }
    p.verdicts.push_back(std::move(row));
  }
  return p;
}

// -- verification reports -------------------------------------------------------

json verification_report_json(const VerificationReport& r) {
  json j;
  j["all_pass"] = r.all_pass;
  j["partition_laws"] = r.partition_laws;
  j["formula_faithful"] = r.formula_faithful;
  json pairs = json::array();
  for (const auto& c : r.pairs) {
    json pj;
    pj["i"] = c.i;
    pj["j"] = c.j;
    pj["pass"] = c.pass;
    pj["recomputed_case"] =
        c.recomputed_case ? json(pair_case_name(*c.recomputed_case)) : json(nullptr);
    pj["exc_left_mass"] = to_fraction_string(c.exc_left_mass);
    pj["exc_right_mass"] = to_fraction_string(c.exc_right_mass);
    pj["failure"] = c.failure;
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

json delta_report_json(const DeltaRegularityReport& r) {
  json j;
  j["delta"] = to_fraction_string(r.delta);
  j["mode"] = r.mode == DeltaMode::exhaustive ? "exhaustive" : "sampled";
  j["pairs_checked"] = r.pairs_checked;
  j["subset_pairs_tested"] = r.subset_pairs_tested;
  j["seed"] = r.seed;
  json viol = json::array();
  for (const auto& v : r.violations) {
    json vj;
    vj["i"] = v.i;
    vj["j"] = v.j;
    vj["subset_left"] = v.subset_left;
    vj["subset_right"] = v.subset_right;
    vj["direction"] = side_name(v.direction);
    viol.push_back(std::move(vj));
  }
  j["violations"] = std::move(viol);
  return j;
}

// -- stability results ------------------------------------------------------------

json ladder_result_json(const LadderIndexResult& r) {
  json j;
  j["k"] = r.k;
  j["capped"] = r.capped;
  if (r.certificate) {
    j["certificate"] = {{"a_seq", r.certificate->a_seq}, {"b_seq", r.certificate->b_seq}};
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

namespace {

json split_tree_json(const SplitNode* node) {
  if (node == nullptr) return nullptr;
  json j;
  j["param"] = node->param;
  j["in"] = split_tree_json(node->in_child.get());
  j["out"] = split_tree_json(node->out_child.get());
  return j;
}

}  // namespace

json rank_result_json(const RankResult& r, Side side) {
  json j;
  j["side"] = side_name(side);
  j["value"] = r.value;
  j["witness_tree"] = split_tree_json(r.witness_tree.get());
  return j;
}

}  // namespace stablereg::io
