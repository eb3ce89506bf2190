#pragma once

// Finite dialogues: the one-round update map, iteration to a fixed point, and
// executable forms of the consensus results.

#include <optional>
#include <string>
#include <vector>

#include "agree/graph.hpp"
#include "agree/lattice.hpp"
#include "agree/message.hpp"
#include "agree/ordinal.hpp"

namespace agree {

struct Scenario {
  std::vector<std::string> agents;
  std::size_t num_states = 0;
  std::vector<std::string> state_labels;  // empty: states are shown as indices
  Profile initial;
  MessageFunction mf = MessageFunction::known_state();
  CommGraph graph;
  std::optional<StateId> true_state;

  // Throws Validation with the breached invariant as cause.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

enum class StageKind { Initial, Successor, Limit };
std::string_view to_string(StageKind k);

struct StageFlags {
  bool consensus = false;
  // Evaluated at the true state when one is set.
  std::optional<bool> partial_consensus;
  std::optional<bool> ck_message_profile;
  bool fixed_point = false;
};

struct FiniteStage {
  Ordinal ordinal;
  StageKind kind = StageKind::Initial;
  Profile profile;
  std::vector<std::vector<Message>> messages;  // per agent, per state
  StageFlags flags;
};

struct FiniteTrace {
  std::vector<FiniteStage> stages;

  const FiniteStage& final_stage() const { return stages.back(); }
  // Number of successor steps taken before the fixed point.
  std::size_t steps() const { return stages.size() - 1; }
};

struct StageBudget {
  std::size_t max_steps = 0;

  // n * N + 1: one more than the bound on strict refinements.
  static StageBudget for_scenario(const Scenario& sc);
};

// One round: every receiver joins her partition with the working partitions
// of all her senders, all computed from the input profile.
Profile apply_g(const Profile& profile, const CommGraph& g, const MessageFunction& mf);

// Iterates apply_g from the initial profile until g(P) = P. Throws
// BudgetExceeded if more than budget.max_steps rounds are needed.
FiniteTrace run_dialogue(const Scenario& sc, std::optional<StageBudget> budget = std::nullopt);

bool consensus_holds(const Profile& profile, const MessageFunction& mf);
bool partial_consensus_at(const Profile& profile, const MessageFunction& mf, StateId x);

// E(x): states where every agent sends what she sends at x.
Event message_profile_event(const Profile& profile, const MessageFunction& mf, StateId x);
bool message_profile_is_common_knowledge(const Profile& profile,
                                         const MessageFunction& mf, StateId x);

struct Prop1Flags {
  bool a = false;  // the message profile is common knowledge at every state
  bool b = false;  // all message vectors coincide
  bool c = false;  // all working partitions coincide

  bool operator==(const Prop1Flags&) const = default;
};

// The three conditions evaluated independently of one another.
Prop1Flags check_prop1(const Profile& profile, const MessageFunction& mf);

struct Corollary1Verdict {
  bool applicable = false;  // f_i != f_j
  bool i_learns = false;    // P_i < P_i v W_j
  bool j_learns = false;    // P_j < P_j v W_i
};

Corollary1Verdict check_corollary1(const Profile& profile, const MessageFunction& mf,
                                   AgentId i, AgentId j);

bool in_fix_g(const Profile& profile, const CommGraph& g, const MessageFunction& mf);
inline bool in_cons_f(const Profile& profile, const MessageFunction& mf) {
  return consensus_holds(profile, mf);
}

}  // namespace agree
