#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmerge/cli.hpp"

int main(int argc, char** argv) {
  using namespace mmerge;

  CLI::App app{"Belief merging by inverting hypothesized acquisition mistakes"};
  app.require_subcommand(1);

  const std::map<std::string, Operator> operators{
      {"rmel", Operator::kRmel}, {"rm", Operator::kRm}, {"general", Operator::kGeneral}};
  const std::map<std::string, DeltaMode> modes{
      {"linear", DeltaMode::kLinear}, {"quotient", DeltaMode::kQuotient}, {"restricted", DeltaMode::kRestricted}};
  const std::map<std::string, Ranking> rankings{{"equal", Ranking::kEqualLikeliness},
                                                {"heuristic", Ranking::kHeuristic}};
  const std::map<std::string, RankScope> scopes{{"minimal", RankScope::kMinimalSize}, {"all", RankScope::kAllSizes}};

  // merge
  cli::MergeOptions merge;
  std::string merge_kinds = "renaming,generalization,particularization";
  auto* merge_cmd = app.add_subcommand("merge", "Merge the knowledge bases of a problem file");
  merge_cmd->add_option("file", merge.file, "Problem file")->required()->check(CLI::ExistingFile);
  merge_cmd->add_option("--operator", merge.op, "rmel, rm or general")
      ->transform(CLI::CheckedTransformer(operators, CLI::ignore_case))
      ->default_str("rmel");
  merge_cmd->add_option("--delta-mode", merge.config.delta_mode, "linear, quotient or restricted")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
      ->default_str("linear");
  merge_cmd->add_option("--ranking", merge.config.ranking, "general operator ranking: equal or heuristic")
      ->transform(CLI::CheckedTransformer(rankings, CLI::ignore_case))
      ->default_str("heuristic");
  merge_cmd->add_option("--rank-scope", merge.config.rank_scope, "rank among minimal-size candidates or all")
      ->transform(CLI::CheckedTransformer(scopes, CLI::ignore_case))
      ->default_str("minimal");
  merge_cmd->add_option("--budget", merge.config.budget_per_base, "General operator: transformations per base")
      ->default_val(2);
  merge_cmd->add_option("--kinds", merge_kinds, "General operator: mistake kinds to invert")->capture_default_str();
  merge_cmd->add_option("--max-universe", merge.config.max_universe, "Variable cap including fresh names")
      ->default_val(Universe::kDefaultMaxVars);
  merge_cmd->add_flag("--explain", merge.explain, "Print provenance and score of each disjunct");

  // check
  std::string check_file;
  std::size_t check_max_universe = Universe::kDefaultMaxVars;
  auto* check_cmd = app.add_subcommand("check", "Validate the bounds of a problem file");
  check_cmd->add_option("file", check_file, "Problem file")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--max-universe", check_max_universe, "Variable cap")->capture_default_str();

  // rank
  cli::RankOptions rank;
  auto* rank_cmd = app.add_subcommand("rank", "Score substitution pairs for a two-base problem");
  rank_cmd->add_option("file", rank.file, "Problem file")->required()->check(CLI::ExistingFile);
  rank_cmd->add_option("--pair", rank.pairs, "Substitution pair 'Y|Z', e.g. \"a->a'|\"")->required();
  rank_cmd->add_option("--delta-mode", rank.mode, "linear, quotient or restricted")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
      ->default_str("linear");
  rank_cmd->add_option("--max-universe", rank.max_universe, "Variable cap")->capture_default_str();

  // parse
  std::string parse_text;
  auto* parse_cmd = app.add_subcommand("parse", "Print the canonical form of a formula");
  parse_cmd->add_option("formula", parse_text, "Formula text")->required();

  // simulate
  cli::SimulateOptions sim;
  std::string sim_kinds = "renaming";
  std::string sim_op;
  auto* sim_cmd = app.add_subcommand("simulate", "Inject known mistakes into random bases and score recovery");
  sim_cmd->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
  sim_cmd->add_option("--vars", sim.vars, "Variables per scenario (at most 8)")->capture_default_str();
  sim_cmd->add_option("--sources", sim.sources, "Sources per scenario")->capture_default_str();
  sim_cmd->add_option("--budget", sim.budget, "Mistakes per source (at most 2)")->capture_default_str();
  sim_cmd->add_option("--kinds", sim_kinds, "Mistake kinds to inject")->capture_default_str();
  sim_cmd->add_option("--runs", sim.runs, "Number of scenarios")->capture_default_str();
  sim_cmd->add_option("--operator", sim_op, "rmel, rm or general (default: rmel for 2 sources)")
      ->check(CLI::IsMember({"rmel", "rm", "general"}));
  sim_cmd->add_option("--merge-budget", sim.config.budget_per_base, "General operator budget per base")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::kExitOk : cli::kExitInputError;
  }

  try {
    if (*merge_cmd) {
      merge.config.kinds = MistakeKinds::parse(merge_kinds);
      return cli::cmd_merge(merge, std::cout, std::cerr);
    }
    if (*check_cmd) return cli::cmd_check(check_file, check_max_universe, std::cout, std::cerr);
    if (*rank_cmd) return cli::cmd_rank(rank, std::cout, std::cerr);
    if (*parse_cmd) return cli::cmd_parse(parse_text, std::cout, std::cerr);
    if (*sim_cmd) {
      sim.kinds = MistakeKinds::parse(sim_kinds);
      if (!sim_op.empty()) sim.op = parse_operator(sim_op);
      return cli::cmd_simulate(sim, std::cout, std::cerr);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInputError;
  }
  return cli::kExitInputError;
}
