// stablereg: stable regularity partitions of finite bipartite graphs.
//
// Subcommands: gen, decompose, verify, ladder, rank. Graphs, measures and
// reports cross the CLI boundary as JSON with rationals encoded as exact
// "p/q" strings; see the README for the file schemas.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "stablereg/generators.hpp"
#include "stablereg/io.hpp"
#include "stablereg/regularity.hpp"
#include "stablereg/stability.hpp"
#include "stablereg/verify.hpp"

namespace {

using nlohmann::json;
using namespace stablereg;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::parse_error:
    case Errc::index_out_of_range:
    case Errc::empty_side:
    case Errc::empty_input:
    case Errc::invalid_spec:
      return 2;
    case Errc::invalid_epsilon:
      return 3;
    case Errc::invalid_measure:
      return 4;
    case Errc::iteration_cap_exceeded:
      return 5;
    case Errc::shape_mismatch:
      return 6;
    case Errc::part_too_large:
      return 7;
    default:
      return 9;
  }
}

Rational parse_rational_flag(const std::string& text, const std::string& flag) {
  auto r = parse_rational(text);
  require(r.has_value(), Errc::parse_error, flag + " expects an exact 'p/q' rational");
  return *r;
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
  if (!path) {
    std::cout << content;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  require(static_cast<bool>(out), Errc::parse_error, "cannot open output file: " + *path);
  out << content;
}

struct DecomposeArgs {
  std::string input;
  std::string epsilon;
  std::optional<std::string> mu_path;
  std::optional<std::string> nu_path;
  std::uint32_t max_iterations = 0;
  std::string eps_policy = "strict";
  std::optional<std::string> output;
};

int run_decompose(const DecomposeArgs& args) {
  const BipartiteGraph g = io::read_graph_file(args.input);
  const Measure mu = args.mu_path ? io::read_measure_file(*args.mu_path, Side::left, g)
                                  : Measure::counting(g, Side::left);
  const Measure nu = args.nu_path ? io::read_measure_file(*args.nu_path, Side::right, g)
                                  : Measure::counting(g, Side::right);
  DecomposeConfig config;
  config.max_iterations = args.max_iterations;
  config.eps_policy = args.eps_policy == "permissive" ? EpsPolicy::permissive : EpsPolicy::strict;
  const Rational eps = parse_rational_flag(args.epsilon, "--epsilon");
  const RegularityPartition partition = decompose(g, mu, nu, eps, config);
  write_output(args.output, io::partition_report_string(partition));
  return 0;
}

struct VerifyArgs {
  std::string input;
  std::string report;
  std::optional<std::string> mu_path;
  std::optional<std::string> nu_path;
  std::string delta_mode = "sampled";
  std::uint64_t budget = 100000;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& args) {
  const BipartiteGraph g = io::read_graph_file(args.input);
  const Measure mu = args.mu_path ? io::read_measure_file(*args.mu_path, Side::left, g)
                                  : Measure::counting(g, Side::left);
  const Measure nu = args.nu_path ? io::read_measure_file(*args.nu_path, Side::right, g)
                                  : Measure::counting(g, Side::right);
  std::ifstream report_in(args.report);
  require(static_cast<bool>(report_in), Errc::parse_error,
          "cannot open report file: " + args.report);
  json report_json = json::parse(report_in, nullptr, false);
  require(!report_json.is_discarded(), Errc::parse_error, "malformed report JSON");
  const RegularityPartition partition = io::partition_from_report(report_json, g);

  const VerificationReport theorem = check_theorem(g, mu, nu, partition);
  const DeltaMode mode =
      args.delta_mode == "exhaustive" ? DeltaMode::exhaustive : DeltaMode::sampled;
  const DeltaRegularityReport delta =
      check_delta_regularity(g, mu, nu, partition, mode, args.budget, args.seed);

  json out;
  out["all_pass"] = theorem.all_pass && delta.violations.empty();
  out["theorem"] = io::verification_report_json(theorem);
  out["delta"] = io::delta_report_json(delta);
  std::cout << out.dump(2) << "\n";
  return out["all_pass"].get<bool>() ? 0 : 1;
}

int run_ladder(const std::string& input, std::uint32_t max_k) {
  const BipartiteGraph g = io::read_graph_file(input);
  const LadderIndexResult result = ladder_index(g, max_k);
  std::cout << io::ladder_result_json(result).dump(2) << "\n";
  return 0;
}

int run_rank(const std::string& input, const std::string& side_name) {
  const BipartiteGraph g = io::read_graph_file(input);
  const Side side = side_name == "right" ? Side::right : Side::left;
  const RankResult result = splitting_rank(g, VertexSet::full_set(side, g.side_size(side)));
  std::cout << io::rank_result_json(result, side).dump(2) << "\n";
  return 0;
}

int run_gen(const std::string& spec_text, const std::optional<std::string>& output) {
  json spec_json = json::parse(spec_text, nullptr, false);
  require(!spec_json.is_discarded(), Errc::parse_error, "--spec expects a JSON object");
  const GeneratorSpec spec = io::spec_from_json(spec_json);
  const BipartiteGraph g = generate(spec);
  write_output(output, io::write_graph_json(g));
  if (output) {
    json summary;
    summary["spec"] = io::spec_to_json(spec);
    summary["prng"] = kPrngAlgorithm;
    summary["num_left"] = g.n_left();
    summary["num_right"] = g.n_right();
    summary["num_edges"] = g.edge_count();
    summary["output"] = *output;
    std::cout << summary.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable regularity partitions of finite bipartite graphs"};
  app.set_version_flag("--version", stablereg::io::kToolVersion);
  app.require_subcommand(1);

  DecomposeArgs dec;
  auto* cmd_dec = app.add_subcommand("decompose", "compute a regularity partition");
  cmd_dec->add_option("--input", dec.input, "graph file (JSON or dense text)")->required();
  cmd_dec->add_option("--epsilon", dec.epsilon, "epsilon as p/q")->required();
  cmd_dec->add_option("--mu", dec.mu_path, "left measure file (default: counting)");
  cmd_dec->add_option("--nu", dec.nu_path, "right measure file (default: counting)");
  cmd_dec->add_option("--max-iterations", dec.max_iterations,
                      "refinement round cap (0 = structural bound)");
  cmd_dec->add_option("--eps-policy", dec.eps_policy, "strict | permissive")
      ->check(CLI::IsMember({"strict", "permissive"}));
  cmd_dec->add_option("--output", dec.output, "report path (default: stdout)");

  VerifyArgs ver;
  auto* cmd_ver = app.add_subcommand("verify", "re-check a partition report");
  cmd_ver->add_option("--input", ver.input, "graph file")->required();
  cmd_ver->add_option("--report", ver.report, "partition report to verify")->required();
  cmd_ver->add_option("--mu", ver.mu_path, "left measure file (default: counting)");
  cmd_ver->add_option("--nu", ver.nu_path, "right measure file (default: counting)");
  cmd_ver->add_option("--delta-mode", ver.delta_mode, "exhaustive | sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  cmd_ver->add_option("--budget", ver.budget, "subset pairs tested in sampled mode");
  cmd_ver->add_option("--seed", ver.seed, "seed for sampled verification");

  std::string ladder_input;
  std::uint32_t max_k = 8;
  auto* cmd_lad = app.add_subcommand("ladder", "ladder index with certificate");
  cmd_lad->add_option("--input", ladder_input, "graph file")->required();
  cmd_lad->add_option("--max-k", max_k, "search cap")->required();

  std::string rank_input;
  std::string rank_side = "left";
  auto* cmd_rank = app.add_subcommand("rank", "splitting rank of a full side");
  cmd_rank->add_option("--input", rank_input, "graph file")->required();
  cmd_rank->add_option("--side", rank_side, "left | right")
      ->check(CLI::IsMember({"left", "right"}));

  std::string gen_spec;
  std::optional<std::string> gen_output;
  auto* cmd_gen = app.add_subcommand("gen", "generate an instance family member");
  cmd_gen->add_option("--spec", gen_spec, "generator spec as JSON")->required();
  cmd_gen->add_option("--output", gen_output, "graph path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(cmd_dec)) return run_decompose(dec);
    if (app.got_subcommand(cmd_ver)) return run_verify(ver);
    if (app.got_subcommand(cmd_lad)) return run_ladder(ladder_input, max_k);
    if (app.got_subcommand(cmd_rank)) return run_rank(rank_input, rank_side);
    if (app.got_subcommand(cmd_gen)) return run_gen(gen_spec, gen_output);
  } catch (const stablereg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 9;
  }
  return 2;
}
