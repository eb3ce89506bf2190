#include "agree/engine.hpp"

#include <algorithm>
#include <set>

#include "agree/error.hpp"

namespace agree {

namespace {

[[noreturn]] void invalid(ErrorCode cause, const std::string& what) {
  throw Error(ErrorCode::Validation, what, cause);
}

void require_profile_size(const Profile& profile, const CommGraph& g) {
  if (profile.size() != g.num_agents()) {
    throw Error(ErrorCode::SizeMismatch,
                std::to_string(profile.size()) + " partitions for a graph on " +
                    std::to_string(g.num_agents()) + " agents");
  }
}

StageFlags evaluate_flags(const Profile& profile, const MessageFunction& mf,
                          const std::vector<std::vector<Message>>& messages,
                          std::optional<StateId> true_state) {
  StageFlags flags;
  flags.consensus = std::all_of(messages.begin(), messages.end(),
                                [&](const auto& m) { return m == messages.front(); });
  if (true_state) {
    flags.partial_consensus = partial_consensus_at(profile, mf, *true_state);
    flags.ck_message_profile =
        message_profile_is_common_knowledge(profile, mf, *true_state);
  }
  return flags;
}

}  // namespace

std::string_view to_string(StageKind k) {
  switch (k) {
    case StageKind::Initial: return "initial";
    case StageKind::Successor: return "successor";
    case StageKind::Limit: return "limit";
  }
  return "unknown";
}

void Scenario::validate() const {
  if (agents.size() < 2) invalid(ErrorCode::Malformed, "need at least two agents");
  if (std::set<std::string>(agents.begin(), agents.end()).size() != agents.size()) {
    invalid(ErrorCode::LabelMismatch, "agent labels are not unique");
  }
  if (!state_labels.empty()) {
    if (state_labels.size() != num_states) {
      invalid(ErrorCode::LabelMismatch, "state label count differs from num_states");
    }
    if (std::set<std::string>(state_labels.begin(), state_labels.end()).size() !=
        state_labels.size()) {
      invalid(ErrorCode::LabelMismatch, "state labels are not unique");
    }
  }
  if (num_states == 0) invalid(ErrorCode::Malformed, "empty state set");
  if (initial.size() != agents.size()) {
    invalid(ErrorCode::SizeMismatch, "one partition per agent required");
  }
  for (const Partition& p : initial) {
    if (p.num_states() != num_states) {
      invalid(ErrorCode::SizeMismatch, "partition over the wrong number of states");
    }
  }
  if (graph.num_agents() != agents.size()) {
    invalid(ErrorCode::SizeMismatch, "graph and agent list sizes differ");
  }
  if (true_state && *true_state >= num_states) {
    invalid(ErrorCode::Index, "true state outside the state set");
  }
  switch (mf.family()) {
    case Family::Posterior:
      if (mf.weights().size() != num_states || mf.target().num_states() != num_states) {
        invalid(ErrorCode::SizeMismatch, "posterior parameters sized for another state set");
      }
      break;
    case Family::ExpectedValue:
      if (mf.payoffs().size() != num_states) {
        invalid(ErrorCode::SizeMismatch, "payoff vector sized for another state set");
      }
      break;
    case Family::Lookup:
      if (mf.table_size() != num_states) {
        invalid(ErrorCode::SizeMismatch, "lookup table sized for another state set");
      }
      break;
    default:
      break;
  }
}

StageBudget StageBudget::for_scenario(const Scenario& sc) {
  return {sc.agents.size() * sc.num_states + 1};
}

Profile apply_g(const Profile& profile, const CommGraph& g, const MessageFunction& mf) {
  require_profile_size(profile, g);
  std::vector<Partition> working;
  working.reserve(profile.size());
  for (const Partition& p : profile) working.push_back(working_partition(mf, p));

  Profile next;
  next.reserve(profile.size());
  for (AgentId i = 0; i < profile.size(); ++i) {
    Partition updated = profile[i];
    for (AgentId j : senders(g, i)) updated = join(updated, working[j]);
    next.push_back(std::move(updated));
  }
  return next;
}

FiniteTrace run_dialogue(const Scenario& sc, std::optional<StageBudget> budget) {
  sc.validate();
  const StageBudget limit = budget.value_or(StageBudget::for_scenario(sc));

  FiniteTrace trace;
  Profile current = sc.initial;
  for (std::size_t step = 0;; ++step) {
    FiniteStage stage;
    stage.ordinal = Ordinal{0, step};
    stage.kind = step == 0 ? StageKind::Initial : StageKind::Successor;
    for (const Partition& p : current) stage.messages.push_back(message_vector(sc.mf, p));
    stage.flags = evaluate_flags(current, sc.mf, stage.messages, sc.true_state);

    Profile next = apply_g(current, sc.graph, sc.mf);
    stage.flags.fixed_point = next == current;
    stage.profile = std::move(current);
    trace.stages.push_back(std::move(stage));
    if (trace.stages.back().flags.fixed_point) return trace;
    if (step + 1 > limit.max_steps) {
      throw Error(ErrorCode::BudgetExceeded,
                  "no fixed point within " + std::to_string(limit.max_steps) +
                      " rounds");
    }
    current = std::move(next);
  }
}

bool consensus_holds(const Profile& profile, const MessageFunction& mf) {
  if (profile.empty()) return true;
  const auto first = message_vector(mf, profile.front());
  for (std::size_t i = 1; i < profile.size(); ++i) {
    if (profile[i].num_states() != profile.front().num_states()) {
      throw Error(ErrorCode::SizeMismatch, "profile mixes state-set sizes");
    }
    if (message_vector(mf, profile[i]) != first) return false;
  }
  return true;
}

bool partial_consensus_at(const Profile& profile, const MessageFunction& mf, StateId x) {
  std::optional<Message> shared;
  for (const Partition& p : profile) {
    const Message m = mf.evaluate(p.block_of(x));
    if (!shared) {
      shared = m;
    } else if (m != *shared) {
      return false;
    }
  }
  return true;
}

Event message_profile_event(const Profile& profile, const MessageFunction& mf,
                            StateId x) {
  if (profile.empty()) throw Error(ErrorCode::EmptyList, "empty profile");
  std::vector<Partition> working;
  for (const Partition& p : profile) working.push_back(working_partition(mf, p));
  return join_all(working).block_of(x);
}

bool message_profile_is_common_knowledge(const Profile& profile,
                                         const MessageFunction& mf, StateId x) {
  return is_common_knowledge(profile, message_profile_event(profile, mf, x), x);
}

Prop1Flags check_prop1(const Profile& profile, const MessageFunction& mf) {
  if (profile.empty()) throw Error(ErrorCode::EmptyList, "empty profile");
  const std::size_t n = profile.front().num_states();

  Prop1Flags flags;
  flags.a = true;
  for (StateId x = 0; x < n && flags.a; ++x) {
    flags.a = message_profile_is_common_knowledge(profile, mf, x);
  }

  flags.b = consensus_holds(profile, mf);

  const Partition w0 = working_partition(mf, profile.front());
  flags.c = std::all_of(profile.begin() + 1, profile.end(), [&](const Partition& p) {
    return working_partition(mf, p) == w0;
  });
  return flags;
}

Corollary1Verdict check_corollary1(const Profile& profile, const MessageFunction& mf,
                                   AgentId i, AgentId j) {
  if (i == j) throw Error(ErrorCode::Malformed, "corollary needs two distinct agents");
  if (i >= profile.size() || j >= profile.size()) {
    throw Error(ErrorCode::Index, "agent outside the profile");
  }
  Corollary1Verdict verdict;
  verdict.applicable = message_vector(mf, profile[i]) != message_vector(mf, profile[j]);
  if (!verdict.applicable) return verdict;
  const Partition wi = working_partition(mf, profile[i]);
  const Partition wj = working_partition(mf, profile[j]);
  verdict.i_learns = is_strictly_coarser(profile[i], join(profile[i], wj));
  verdict.j_learns = is_strictly_coarser(profile[j], join(profile[j], wi));
  return verdict;
}

bool in_fix_g(const Profile& profile, const CommGraph& g, const MessageFunction& mf) {
  return apply_g(profile, g, mf) == profile;
}

}  // namespace agree
