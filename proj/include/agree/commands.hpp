#pragma once

// The command-line operations, returning process exit codes:
//   0 success, 1 unusable input, 2 failed check or oracle mismatch,
//   3 fixed point without consensus, 4 budget exhausted or no certificate.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace agree {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitNoConsensus = 3;
inline constexpr int kExitBudget = 4;

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err);

struct RunOptions {
  std::optional<std::string> true_state;
  std::optional<std::size_t> budget;          // finite scenarios
  std::optional<std::string> ordinal_budget;  // symbolic scenarios, "w*A+B"
  std::optional<std::string> trace_path;      // "-" for stdout
};
int cmd_run(const std::string& path, const RunOptions& opts, std::ostream& out, std::ostream& err);

struct OracleOptions {
  std::uint64_t window = 20;
  std::size_t stages = 8;
  std::optional<std::size_t> corrupt_stage;  // negative testing
};
int cmd_oracle(const std::string& path, const OracleOptions& opts, std::ostream& out,
               std::ostream& err);

int cmd_export(const std::string& path, const std::string& dot_path, std::ostream& out,
               std::ostream& err);

struct SuiteCommandOptions {
  std::size_t cases = 1000;
  std::uint64_t seed = 1;
  std::optional<std::string> inject;  // scenario whose message function replaces the generated one
  std::optional<std::string> report_path;
};
int cmd_suite(const std::string& name, const SuiteCommandOptions& opts, std::ostream& out,
              std::ostream& err);

}  // namespace agree
