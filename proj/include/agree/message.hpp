#pragma once

// Message functions: the common map f from non-empty sets of states to
// messages, and the per-agent quantities derived from it.
//
// An agent with partition P sends f(P(x)) at state x. The working partition
// groups states by the message sent there; it is what a receiver learns.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "agree/lattice.hpp"
#include "agree/rational.hpp"

namespace agree {

using Message = std::variant<std::int64_t, Rational, std::string>;

std::string to_string(const Message& m);

enum class Family { KnownState, Maximin, Posterior, ExpectedValue, Injective, Lookup };

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

// Largest ground set for which lookup tables and exhaustive checks are used.
inline constexpr std::size_t kExhaustiveLimit = 12;
inline constexpr std::size_t kUnionSamples = 100000;

class MessageFunction {
 public:
  // "state:<k>" for a singleton {k}, "unknown" otherwise. When labels are
  // given the token carries the label instead of the index.
  static MessageFunction known_state(std::vector<std::string> labels = {});
  // utility[d][k] = payoff of action d in state k. Emits the action id with
  // the best worst-case payoff; ties go to the smallest id.
  static MessageFunction maximin(std::vector<std::vector<Rational>> utility);
  // The safe-action game: action 0 pays 0 everywhere, action d >= 1 pays 1
  // in state d-1 and -1 elsewhere.
  static MessageFunction maximin_guessing(std::size_t num_states);
  // p(target | S) under the (unnormalised) prior weights.
  static MessageFunction posterior(std::vector<Rational> prior, Event target);
  // Weighted mean of the payoff over S; uniform weights when `weights` is empty.
  static MessageFunction expected_value(std::vector<Rational> payoffs,
                                        std::vector<Rational> weights = {});
  // A distinct message for every set: the sorted member list.
  static MessageFunction injective();
  // Explicit table keyed by bitmask over at most kExhaustiveLimit states.
  // Sets missing from the table map to `fallback` when one is given.
  static MessageFunction lookup(std::size_t num_states,
                                std::map<std::uint32_t, Message> table,
                                std::optional<Message> fallback = std::nullopt);

  Family family() const { return m_family; }

  // Throws EmptyBlock, UndefinedUtility or ZeroMassBlock.
  Message evaluate(const Event& s) const;

  const std::vector<std::string>& labels() const { return m_labels; }
  const std::vector<std::vector<Rational>>& utility() const { return m_utility; }
  const std::vector<Rational>& weights() const { return m_weights; }
  const std::vector<Rational>& payoffs() const { return m_payoffs; }
  const Event& target() const { return m_target; }
  std::size_t table_size() const { return m_num_states; }
  const std::map<std::uint32_t, Message>& table() const { return m_table; }
  const std::optional<Message>& fallback() const { return m_fallback; }

  bool operator==(const MessageFunction&) const = default;

 private:
  explicit MessageFunction(Family f) : m_family(f) {}

  Family m_family;
  std::vector<std::string> m_labels;
  std::vector<std::vector<Rational>> m_utility;
  std::vector<Rational> m_weights;  // prior for Posterior, weights for ExpectedValue
  std::vector<Rational> m_payoffs;
  Event m_target;
  std::size_t m_num_states = 0;
  std::map<std::uint32_t, Message> m_table;
  std::optional<Message> m_fallback;
};

// f_i: the message sent at each state by an agent with partition p.
std::vector<Message> message_vector(const MessageFunction& mf, const Partition& p);

// W_i: states grouped by the message sent there.
Partition working_partition(const MessageFunction& mf, const Partition& p);

struct UnionVerdict {
  bool holds = true;
  bool exhaustive = true;
  std::size_t pairs_checked = 0;
  // First disjoint pair with f(S) = f(S') != f(S u S').
  std::optional<std::pair<Event, Event>> witness;
};

// Exhaustive over all disjoint non-empty pairs; SizeLimitExceeded when
// num_states > kExhaustiveLimit.
UnionVerdict check_union_consistency(const MessageFunction& mf, std::size_t num_states);

// Random disjoint pairs, for ground sets beyond the exhaustive limit.
UnionVerdict sample_union_consistency(const MessageFunction& mf,
                                      std::size_t num_states, std::mt19937_64& rng,
                                      std::size_t samples = kUnionSamples);

}  // namespace agree
