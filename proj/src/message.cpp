#include "agree/message.hpp"

#include <algorithm>

#include "agree/error.hpp"

namespace agree {

namespace {

std::uint32_t to_mask(const Event& s) {
  std::uint32_t mask = 0;
  for (StateId x : s.members()) mask |= std::uint32_t{1} << x;
  return mask;
}

Event from_mask(std::uint32_t mask, std::size_t num_states) {
  Event e(num_states);
  for (std::size_t x = 0; x < num_states; ++x) {
    if (mask & (std::uint32_t{1} << x)) e.insert(x);
  }
  return e;
}

Rational weight_of(const std::vector<Rational>& w, StateId x) {
  if (x >= w.size()) {
    throw Error(ErrorCode::Index,
                "no weight for state " + std::to_string(x));
  }
  return w[x];
}

// Interns messages to dense ids so that equality tests are integer compares.
class MessageIds {
 public:
  std::size_t id(const Message& m) {
    return m_ids.try_emplace(m, m_ids.size()).first->second;
  }

 private:
  std::map<Message, std::size_t> m_ids;
};

}  // namespace

std::string to_string(const Message& m) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, Rational>) {
          return format_rational(v);
        } else {
          return v;
        }
      },
      m);
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::KnownState: return "known_state";
    case Family::Maximin: return "maximin";
    case Family::Posterior: return "posterior";
    case Family::ExpectedValue: return "expected_value";
    case Family::Injective: return "injective";
    case Family::Lookup: return "lookup";
  }
  return "unknown";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (Family f : {Family::KnownState, Family::Maximin, Family::Posterior,
                   Family::ExpectedValue, Family::Injective, Family::Lookup}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

MessageFunction MessageFunction::known_state(std::vector<std::string> labels) {
  MessageFunction mf(Family::KnownState);
  mf.m_labels = std::move(labels);
  return mf;
}

MessageFunction MessageFunction::maximin(std::vector<std::vector<Rational>> utility) {
  if (utility.empty()) {
    throw Error(ErrorCode::UndefinedUtility, "maximin needs at least one action");
  }
  MessageFunction mf(Family::Maximin);
  mf.m_utility = std::move(utility);
  return mf;
}

MessageFunction MessageFunction::maximin_guessing(std::size_t num_states) {
  std::vector<std::vector<Rational>> u(num_states + 1,
                                       std::vector<Rational>(num_states, Rational(-1)));
  std::fill(u[0].begin(), u[0].end(), Rational(0));
  for (std::size_t k = 0; k < num_states; ++k) u[k + 1][k] = 1;
  return maximin(std::move(u));
}

MessageFunction MessageFunction::posterior(std::vector<Rational> prior, Event target) {
  if (target.num_states() != prior.size()) {
    throw Error(ErrorCode::SizeMismatch, "posterior target and prior sizes differ");
  }
  for (const Rational& p : prior) {
    if (p < 0) throw Error(ErrorCode::Malformed, "negative prior weight");
  }
  MessageFunction mf(Family::Posterior);
  mf.m_weights = std::move(prior);
  mf.m_target = std::move(target);
  return mf;
}

MessageFunction MessageFunction::expected_value(std::vector<Rational> payoffs,
                                                std::vector<Rational> weights) {
  if (!weights.empty() && weights.size() != payoffs.size()) {
    throw Error(ErrorCode::SizeMismatch, "payoff and weight vectors differ in length");
  }
  for (const Rational& w : weights) {
    if (w < 0) throw Error(ErrorCode::Malformed, "negative weight");
  }
  MessageFunction mf(Family::ExpectedValue);
  mf.m_payoffs = std::move(payoffs);
  mf.m_weights = std::move(weights);
  return mf;
}

MessageFunction MessageFunction::injective() {
  return MessageFunction(Family::Injective);
}

MessageFunction MessageFunction::lookup(std::size_t num_states,
                                        std::map<std::uint32_t, Message> table,
                                        std::optional<Message> fallback) {
  if (num_states == 0 || num_states > kExhaustiveLimit) {
    throw Error(ErrorCode::SizeLimitExceeded,
                "lookup tables support 1.." + std::to_string(kExhaustiveLimit) +
                    " states, got " + std::to_string(num_states));
  }
  const std::uint32_t full = (std::uint32_t{1} << num_states) - 1;
  for (const auto& [mask, msg] : table) {
    if (mask == 0 || (mask & ~full) != 0) {
      throw Error(ErrorCode::Malformed, "lookup key is not a non-empty subset");
    }
  }
  if (!fallback && table.size() != full) {
    throw Error(ErrorCode::Malformed,
                "lookup table covers " + std::to_string(table.size()) + " of " +
                    std::to_string(full) + " non-empty sets and has no default");
  }
  MessageFunction mf(Family::Lookup);
  mf.m_num_states = num_states;
  mf.m_table = std::move(table);
  mf.m_fallback = std::move(fallback);
  return mf;
}

Message MessageFunction::evaluate(const Event& s) const {
  const std::vector<StateId> members = s.members();
  if (members.empty()) throw Error(ErrorCode::EmptyBlock, "message of an empty set");

  switch (m_family) {
    case Family::KnownState: {
      if (members.size() != 1) return std::string("unknown");
      const StateId k = members.front();
      if (k < m_labels.size()) return "state:" + m_labels[k];
      return "state:" + std::to_string(k);
    }
    case Family::Maximin: {
      std::optional<Rational> best;
      std::int64_t best_action = 0;
      for (std::size_t d = 0; d < m_utility.size(); ++d) {
        const auto& row = m_utility[d];
        std::optional<Rational> worst;
        for (StateId k : members) {
          if (k >= row.size()) {
            throw Error(ErrorCode::UndefinedUtility,
                        "u(" + std::to_string(d) + ", " + std::to_string(k) +
                            ") is not defined");
          }
          if (!worst || row[k] < *worst) worst = row[k];
        }
        if (!best || *worst > *best) {
          best = worst;
          best_action = static_cast<std::int64_t>(d);
        }
      }
      return best_action;
    }
    case Family::Posterior: {
      Rational mass = 0;
      Rational hit = 0;
      for (StateId x : members) {
        const Rational w = weight_of(m_weights, x);
        mass += w;
        if (m_target.contains(x)) hit += w;
      }
      if (mass == 0) throw Error(ErrorCode::ZeroMassBlock, "block has prior mass 0");
      return Rational(hit / mass);
    }
    case Family::ExpectedValue: {
      Rational mass = 0;
      Rational total = 0;
      for (StateId x : members) {
        const Rational w = m_weights.empty() ? Rational(1) : weight_of(m_weights, x);
        mass += w;
        total += w * weight_of(m_payoffs, x);
      }
      if (mass == 0) throw Error(ErrorCode::ZeroMassBlock, "block has weight 0");
      return Rational(total / mass);
    }
    case Family::Injective: {
      std::string out = "{";
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(members[i]);
      }
      return out + "}";
    }
    case Family::Lookup: {
      if (s.num_states() != m_num_states) {
        throw Error(ErrorCode::SizeMismatch, "lookup table is over " +
                                                 std::to_string(m_num_states) +
                                                 " states");
      }
      const auto it = m_table.find(to_mask(s));
      if (it != m_table.end()) return it->second;
      return *m_fallback;
    }
  }
  throw Error(ErrorCode::UnknownFamily, "unhandled message family");
}

std::vector<Message> message_vector(const MessageFunction& mf, const Partition& p) {
  std::vector<Message> per_block;
  per_block.reserve(p.num_blocks());
  for (const auto& block : p.blocks()) {
    per_block.push_back(mf.evaluate(Event::of(p.num_states(), block)));
  }
  std::vector<Message> out;
  out.reserve(p.num_states());
  for (StateId x = 0; x < p.num_states(); ++x) out.push_back(per_block[p.block_id(x)]);
  return out;
}

Partition working_partition(const MessageFunction& mf, const Partition& p) {
  MessageIds ids;
  std::vector<std::size_t> labels;
  labels.reserve(p.num_states());
  for (const Message& m : message_vector(mf, p)) labels.push_back(ids.id(m));
  return Partition(labels);
}

UnionVerdict check_union_consistency(const MessageFunction& mf, std::size_t num_states) {
  if (num_states > kExhaustiveLimit) {
    throw Error(ErrorCode::SizeLimitExceeded,
                "exhaustive union-consistency check supports at most " +
                    std::to_string(kExhaustiveLimit) + " states");
  }
  UnionVerdict verdict;
  if (num_states == 0) return verdict;
  const std::uint32_t full = (std::uint32_t{1} << num_states) - 1;
  MessageIds ids;
  std::vector<std::size_t> id(full + 1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    id[mask] = ids.id(mf.evaluate(from_mask(mask, num_states)));
  }
  for (std::uint32_t u = 1; u <= full; ++u) {
    // Each unordered split {s, u\s} is visited once: s holds u's lowest bit.
    const std::uint32_t low = u & (~u + 1);
    for (std::uint32_t s = (u - 1) & u; s != 0; s = (s - 1) & u) {
      if (!(s & low)) continue;
      const std::uint32_t t = u ^ s;
      ++verdict.pairs_checked;
      if (id[s] == id[t] && id[u] != id[s]) {
        verdict.holds = false;
        verdict.witness.emplace(from_mask(s, num_states), from_mask(t, num_states));
        return verdict;
      }
    }
  }
  return verdict;
}

UnionVerdict sample_union_consistency(const MessageFunction& mf,
                                      std::size_t num_states, std::mt19937_64& rng,
                                      std::size_t samples) {
  UnionVerdict verdict;
  verdict.exhaustive = false;
  if (num_states < 2) return verdict;
  std::uniform_int_distribution<int> side(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, num_states - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    Event s(num_states), t(num_states);
    for (StateId x = 0; x < num_states; ++x) {
      const int v = side(rng);
      if (v == 1) s.insert(x);
      if (v == 2) t.insert(x);
    }
    // Force both sides non-empty.
    if (s.empty() || t.empty()) {
      const StateId a = pick(rng);
      StateId b = pick(rng);
      while (b == a) b = pick(rng);
      s = Event(num_states);
      t = Event(num_states);
      s.insert(a);
      t.insert(b);
    }
    Event u = s;
    for (StateId x : t.members()) u.insert(x);
    ++verdict.pairs_checked;
    const Message ms = mf.evaluate(s);
    if (ms == mf.evaluate(t) && mf.evaluate(u) != ms) {
      verdict.holds = false;
      verdict.witness.emplace(std::move(s), std::move(t));
      return verdict;
    }
  }
  return verdict;
}

}  // namespace agree
