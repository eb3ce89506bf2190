#include <iostream>

#include "CLI11.hpp"
#include "agree/commands.hpp"
#include "agree/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dialogues, consensus and common knowledge over partitions"};
  app.require_subcommand(1);
  int code = 0;

  std::string path;

  auto* check = app.add_subcommand("check", "Check the sure-thing principle and graph conditions");
  check->add_option("scenario", path, "Scenario file or bundled fixture name")->required();
  check->callback([&] { code = agree::cmd_check(path, std::cout, std::cerr); });

  agree::RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run the dialogue to a fixed point");
  run->add_option("scenario", path, "Scenario file or bundled fixture name")->required();
  run->add_option("--true-state", run_opts.true_state, "True state (label, index or positive integer)");
  run->add_option("--budget", run_opts.budget, "Successor-step budget (finite scenarios)");
  run->add_option("--ordinal-budget", run_opts.ordinal_budget, "Ordinal budget such as w*16 (symbolic)");
  run->add_option("--trace", run_opts.trace_path, "Write one JSON record per stage ('-' for stdout)");
  run->callback([&] { code = agree::cmd_run(path, run_opts, std::cout, std::cerr); });

  agree::OracleOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "Compare symbolic stages with a truncated finite run");
  oracle->add_option("scenario", path, "Symbolic scenario")->required();
  oracle->add_option("--window", oracle_opts.window, "Reporting window N0")->capture_default_str();
  oracle->add_option("--stages", oracle_opts.stages, "Finite stages T")->capture_default_str();
  oracle->add_option("--corrupt-stage", oracle_opts.corrupt_stage)->group("");
  oracle->callback([&] { code = agree::cmd_oracle(path, oracle_opts, std::cout, std::cerr); });

  std::string dot_path = "-";
  auto* exp = app.add_subcommand("export", "Write the communication graph as DOT");
  exp->add_option("scenario", path, "Scenario file or bundled fixture name")->required();
  exp->add_option("--dot", dot_path, "Output file ('-' for stdout)")->capture_default_str();
  exp->callback([&] { code = agree::cmd_export(path, dot_path, std::cout, std::cerr); });

  std::string suite_name;
  agree::SuiteCommandOptions suite_opts;
  auto* suite = app.add_subcommand("suite", "Run a property suite over random scenarios");
  suite->add_option("name", suite_name, "Suite name")
      ->required()
      ->check(CLI::IsMember(agree::suite_names()));
  suite->add_option("--cases", suite_opts.cases, "Number of cases")->capture_default_str();
  suite->add_option("--seed", suite_opts.seed, "Seed")->capture_default_str();
  suite->add_option("--inject", suite_opts.inject, "Scenario whose message function is used");
  suite->add_option("--report", suite_opts.report_path, "Write the JSONL report to a file");
  suite->callback([&] { code = agree::cmd_suite(suite_name, suite_opts, std::cout, std::cerr); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : agree::kExitError;
  }
  return code;
}
