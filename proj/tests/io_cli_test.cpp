#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "agree/commands.hpp"
#include "agree/error.hpp"
#include "agree/scenario_io.hpp"

using namespace agree;

namespace {

ErrorCode parse_code(std::string_view text, ErrorCode* cause = nullptr) {
  try {
    parse_scenario_text(text);
  } catch (const Error& e) {
    if (cause) *cause = e.cause();
    return e.code();
  }
  return ErrorCode::None;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(ScenarioIo, FixturesRoundTrip) {
  ASSERT_GE(fixture_names().size(), 7u);
  for (const auto& name : fixture_names()) {
    auto sc = parse_scenario(name);
    auto again = parse_scenario_text(serialize_scenario(sc));
    EXPECT_EQ(sc, again) << name;
  }
}

TEST(ScenarioIo, Errors) {
  std::string text = "{\n  \"kind\": \"finite\",\n  \"agents\": [1,\n}";
  try {
    parse_scenario_text(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  EXPECT_EQ(parse_code(R"({"kind": "other"})"), ErrorCode::Validation);

  ErrorCode cause = ErrorCode::None;
  std::string overlap = R"({"kind": "finite", "agents": ["a", "b"], "num_states": 2,
    "partitions": {"a": [[0, 1], [1]], "b": [[0, 1]]},
    "message_function": {"name": "known_state"}, "graph": []})";
  EXPECT_EQ(parse_code(overlap, &cause), ErrorCode::Validation);
  EXPECT_EQ(cause, ErrorCode::Overlap);

  std::string floaty = R"({"kind": "finite", "agents": ["a", "b"], "num_states": 2,
    "partitions": {"a": [[0, 1]], "b": [[0, 1]]},
    "message_function": {"name": "expected_value", "payoffs": [0.5, 1]}, "graph": []})";
  EXPECT_EQ(parse_code(floaty), ErrorCode::Validation);

  std::string symbolic_family = R"({"kind": "symbolic", "agents": ["a", "b"],
    "partitions": {"a": {"modulus": 1, "template_families": [[1]]},
                   "b": {"modulus": 1, "template_families": [[1]]}},
    "message_function": {"name": "injective"}, "graph": []})";
  EXPECT_EQ(parse_code(symbolic_family, &cause), ErrorCode::Validation);
  EXPECT_EQ(cause, ErrorCode::UnknownFamily);

  EXPECT_THROW(parse_scenario("/no/such/file.scenario"), Error);
}

TEST(ScenarioIo, TraceLines) {
  auto sc = std::get<Scenario>(parse_scenario("remark_nonmonotone"));
  auto trace = run_dialogue(sc);
  auto line = trace_line(sc, trace.final_stage());
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_NE(line.find("\"ordinal\":\"1\""), std::string::npos) << line;
  EXPECT_NE(line.find("\"consensus\":true"), std::string::npos) << line;
}

TEST(Cli, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_check("example_sec2", out, err), kExitOk);
  EXPECT_EQ(cmd_check("remark_nonmonotone", out, err), kExitOk);
  EXPECT_EQ(cmd_check("sec52_instance1", out, err), kExitCheckFailed);
  EXPECT_EQ(cmd_check("cycle3_no_a3", out, err), kExitCheckFailed);
  EXPECT_EQ(cmd_check("/no/such/file", out, err), kExitError);

  EXPECT_EQ(cmd_run("remark_nonmonotone", {}, out, err), kExitOk);
  EXPECT_EQ(cmd_run("sec55_broadcast", {}, out, err), kExitOk);
  EXPECT_EQ(cmd_run("isolated_pair", {}, out, err), kExitNoConsensus);
  EXPECT_EQ(cmd_run("sec52_instance1", {}, out, err), kExitNoConsensus);
  RunOptions tight;
  tight.budget = 0;
  EXPECT_EQ(cmd_run("remark_nonmonotone", tight, out, err), kExitBudget);
  RunOptions short_ord;
  short_ord.ordinal_budget = "w*1";
  EXPECT_EQ(cmd_run("example_sec2", short_ord, out, err), kExitBudget);

  OracleOptions oracle;
  EXPECT_EQ(cmd_oracle("example_sec2", oracle, out, err), kExitOk);
  oracle.corrupt_stage = 3;
  EXPECT_EQ(cmd_oracle("example_sec2", oracle, out, err), kExitCheckFailed);
  EXPECT_EQ(cmd_oracle("remark_nonmonotone", {}, out, err), kExitError);
}

TEST(Cli, RunWritesTrace) {
  auto path = std::filesystem::temp_directory_path() / "agree_cli_trace.jsonl";
  RunOptions opts;
  opts.trace_path = path.string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run("example_sec2", opts, out, err), kExitOk);
  std::ifstream in(path);
  std::string line, last;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    last = line;
  }
  EXPECT_GT(lines, 3u);
  EXPECT_NE(last.find("\"ordinal\":\"w*2+2\""), std::string::npos) << last;
  EXPECT_NE(out.str().find("w*2+2"), std::string::npos);
}

TEST(Cli, ExportAndSuite) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_export("example_sec2", "-", out, err), kExitOk);
  EXPECT_NE(out.str().find("digraph"), std::string::npos);

  std::ostringstream sout;
  SuiteCommandOptions opts;
  opts.cases = 50;
  EXPECT_EQ(cmd_suite("corollary1", opts, sout, err), kExitOk);
  EXPECT_NE(sout.str().find("\"passed\":true"), std::string::npos) << sout.str();

  opts.inject = "sec52_instance1";
  opts.report_path = temp_file("agree_suite_report.jsonl", "").string();
  std::ostringstream iout;
  EXPECT_EQ(cmd_suite("prop1_equivalence", opts, iout, err), kExitOk);
  std::ifstream report(*opts.report_path);
  std::string first;
  std::getline(report, first);
  EXPECT_FALSE(first.empty());
}
