#pragma once

// Dialogues over the positive integers with the known-state message, run
// through limit stages below w^2.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "agree/engine.hpp"
#include "agree/graph.hpp"
#include "agree/ordinal.hpp"
#include "agree/periodic.hpp"

namespace agree {

using SymbolicProfile = std::vector<PeriodicPartition>;

struct SymbolicScenario {
  std::vector<std::string> agents;
  SymbolicProfile initial;
  CommGraph graph;
  std::optional<Nat> true_state;

  void validate() const;

  bool operator==(const SymbolicScenario&) const = default;
};

bool profile_equal(const SymbolicProfile& a, const SymbolicProfile& b);

SymbolicProfile symbolic_apply_g(const SymbolicProfile& profile, const CommGraph& g);

// x -> x+s maps the traces of stage t0 above D onto the traces of stage
// t0+p above D+s, both stages have the same trace on [1, D], and the same
// holds one period later (t0+p against t0+2p) with the same D.
struct ShiftCertificate {
  std::size_t t0 = 0;  // index into the history
  std::size_t p = 1;
  Nat s = 1;
  Nat d = 0;

  bool operator==(const ShiftCertificate&) const = default;
};

struct CertificateBounds {
  std::size_t max_stage_period = 8;
  std::size_t max_shift_multiple = 8;
};

// history: consecutive successor stages, at least 4. Throws Malformed on a
// shorter history.
std::optional<ShiftCertificate> detect_shift_certificate(
    const std::vector<SymbolicProfile>& history, CertificateBounds bounds = {});

// The join of all stages of the history's w-block. Extends the history with
// further successor stages as needed. Throws CertificateInvalid when the
// extrapolated profile fails its checks.
SymbolicProfile limit_profile(std::vector<SymbolicProfile>& history,
                              const ShiftCertificate& cert, const CommGraph& g);

struct SymbolicStage {
  Ordinal ordinal;
  StageKind kind = StageKind::Initial;
  SymbolicProfile profile;
  std::vector<std::string> messages;  // per agent, at the true state
  StageFlags flags;
  std::optional<ShiftCertificate> certificate;  // limit stages only
};

struct SymbolicTrace {
  std::vector<SymbolicStage> stages;

  const SymbolicStage& final_stage() const { return stages.back(); }
};

struct TransfiniteOptions {
  Ordinal budget{16, 0};
  std::size_t successor_window = 32;
  std::size_t max_limits = 16;
  CertificateBounds bounds;
};

// Throws OrdinalBudgetExceeded or NoCertificateFound.
SymbolicTrace run_transfinite(const SymbolicScenario& sc, TransfiniteOptions opts = {});

// Message of the block containing x: "state:x" or "unknown".
std::string symbolic_message(const PeriodicPartition& pp, Nat x);

// Whether the message profile at x is common knowledge at x. Empty when the
// search exceeds its bound without a verdict.
std::optional<bool> symbolic_ck_message_profile(const SymbolicProfile& profile, Nat x);

struct OracleReport {
  Nat window = 0;       // N0
  std::size_t stages = 0;
  Nat margin = 0;       // c
  Nat truncation = 0;   // N = N0 + c*t
  std::size_t comparisons = 0;  // stage x agent x state checks
};

// Called on every symbolic stage before comparison. Tests use it to corrupt
// a stage.
using StageTamper = std::function<void(std::size_t stage, SymbolicProfile&)>;

// Runs t finite stages on the truncation to [1, N] and compares with the
// symbolic stages on [1, N0]. Throws Mismatch on the first disagreement.
OracleReport truncation_oracle(const SymbolicScenario& sc, Nat window, std::size_t stages,
                               const StageTamper& tamper = {});

}  // namespace agree
