#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "stablereg/generators.hpp"
#include "stablereg/graph.hpp"
#include "stablereg/measure.hpp"
#include "stablereg/regularity.hpp"
#include "stablereg/stability.hpp"
#include "stablereg/verify.hpp"

namespace stablereg::io {

inline constexpr const char* kToolVersion = "1.0.0";

/// Graph files: either the canonical JSON document
///   {"edges": [[a,b],...], "num_left": n, "num_right": m}
/// or the dense text form "n m" followed by n rows of m '0'/'1' characters.
/// The format is sniffed from the first non-space byte. Parse failures raise
/// Errc::parse_error.
BipartiteGraph read_graph(std::istream& in);
BipartiteGraph read_graph_file(const std::string& path);

/// Canonical JSON serialization: edges sorted ascending, fixed key order,
/// byte-identical for equal graphs.
std::string write_graph_json(const BipartiteGraph& g);

/// Measure files: a JSON array of "p/q" weight strings, one per vertex.
Measure read_measure_file(const std::string& path, Side side, const BipartiteGraph& g);

// -- formula JSON ------------------------------------------------------------
// {"kind":"true"} | {"kind":"edge","param":i} | {"kind":"equals","param":i}
// | {"kind":"not","child":f} | {"kind":"and","children":[...]}
// | {"kind":"or","children":[...]}
nlohmann::json formula_to_json(const DeltaFormula& f);
DeltaFormula formula_from_json(const nlohmann::json& j);

// -- generator specs ---------------------------------------------------------
// {"family":"half_graph","k":3}
// {"family":"complete","num_left":2,"num_right":3}
// {"family":"empty","num_left":2,"num_right":3}
// {"family":"rectangle_union","left_sizes":[...],"right_sizes":[...],"seed":0}
// {"family":"random","num_left":8,"num_right":8,"density":"1/2","seed":1}
GeneratorSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const GeneratorSpec& spec);

// -- partition reports -------------------------------------------------------

/// Canonical report document; all rationals appear as exact "p/q" strings and
/// all index arrays ascend, so equal partitions serialize byte-identically.
nlohmann::json partition_report(const RegularityPartition& p);
std::string partition_report_string(const RegularityPartition& p);

/// Rebuilds a partition (including stored verdicts) from a report document.
/// Shape errors against `g` raise Errc::shape_mismatch, malformed documents
/// Errc::parse_error.
RegularityPartition partition_from_report(const nlohmann::json& j, const BipartiteGraph& g);

// -- verification reports ----------------------------------------------------
nlohmann::json verification_report_json(const VerificationReport& r);
nlohmann::json delta_report_json(const DeltaRegularityReport& r);

// -- stability results -------------------------------------------------------
nlohmann::json ladder_result_json(const LadderIndexResult& r);
nlohmann::json rank_result_json(const RankResult& r, Side side);

}  // namespace stablereg::io
