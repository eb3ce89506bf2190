#include "agree/symbolic.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "agree/error.hpp"

namespace agree {

namespace {

[[noreturn]] void invalid(ErrorCode cause, const std::string& what) {
  throw Error(ErrorCode::Validation, what, cause);
}

Nat profile_lcm(const SymbolicProfile& p) {
  Nat l = 1;
  for (const auto& pp : p) l = std::lcm(l, pp.modulus());
  return l;
}

Nat profile_largest(const SymbolicProfile& p) {
  Nat h = 0;
  for (const auto& pp : p) h = std::max(h, pp.largest_constant());
  return h;
}

Nat profile_diameter(const SymbolicProfile& p) {
  Nat d = 0;
  for (const auto& pp : p) d = std::max(d, pp.max_finite_diameter());
  return d;
}

// Largest D <= cap such that a and b have the same trace on [1, D].
Nat prefix_agreement(const PeriodicPartition& a, const PeriodicPartition& b, Nat cap) {
  for (Nat x = 2; x <= cap; ++x)
    for (Nat y = 1; y < x; ++y)
      if (a.same_block(x, y) != b.same_block(x, y)) return x - 1;
  return cap;
}

// Least D such that x -> x+s carries the trace of a above D onto the trace of
// b above D+s, checked for states up to `bound`.
Nat shift_floor(const PeriodicPartition& a, const PeriodicPartition& b, Nat s, Nat bound) {
  for (Nat x = bound; x >= 1; --x)
    for (Nat y = x + 1; y <= bound; ++y)
      if (a.same_block(x, y) != b.same_block(x + s, y + s)) return x;
  return 0;
}

bool known(const PeriodicPartition& pp, Nat x) { return pp.block_of(x).is_singleton(); }

StageFlags symbolic_flags(const SymbolicProfile& profile, std::optional<Nat> true_state,
                          std::vector<std::string>& messages) {
  StageFlags flags;
  std::vector<PeriodicPartition> working;
  for (const auto& pp : profile) working.push_back(pp_working_partition_known_state(pp));
  flags.consensus = std::all_of(working.begin(), working.end(),
                                [&](const auto& w) { return pp_equal(w, working.front()); });
  messages.clear();
  if (true_state) {
    for (const auto& pp : profile) messages.push_back(symbolic_message(pp, *true_state));
    flags.partial_consensus = std::all_of(messages.begin(), messages.end(),
                                          [&](const auto& m) { return m == messages.front(); });
    flags.ck_message_profile = symbolic_ck_message_profile(profile, *true_state);
  }
  return flags;
}

}  // namespace

void SymbolicScenario::validate() const {
  if (agents.size() < 2) invalid(ErrorCode::Malformed, "need at least two agents");
  if (std::set<std::string>(agents.begin(), agents.end()).size() != agents.size())
    invalid(ErrorCode::LabelMismatch, "agent labels are not unique");
  if (initial.size() != agents.size()) invalid(ErrorCode::SizeMismatch, "one partition per agent required");
  if (graph.num_agents() != agents.size()) invalid(ErrorCode::SizeMismatch, "graph and agent list sizes differ");
  if (true_state && *true_state == 0) invalid(ErrorCode::Index, "states start at 1");
}

bool profile_equal(const SymbolicProfile& a, const SymbolicProfile& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!pp_equal(a[i], b[i])) return false;
  return true;
}

SymbolicProfile symbolic_apply_g(const SymbolicProfile& profile, const CommGraph& g) {
  if (profile.size() != g.num_agents())
    throw Error(ErrorCode::SizeMismatch, "profile and graph sizes differ");
  std::vector<PeriodicPartition> working;
  for (const auto& pp : profile) working.push_back(pp_working_partition_known_state(pp));
  SymbolicProfile next;
  for (AgentId i = 0; i < profile.size(); ++i) {
    PeriodicPartition acc = profile[i];
    for (AgentId j : senders(g, i)) acc = pp_join(acc, working[j]);
    next.push_back(std::move(acc));
  }
  return next;
}

std::optional<ShiftCertificate> detect_shift_certificate(
    const std::vector<SymbolicProfile>& history, CertificateBounds bounds) {
  if (history.size() < 4) throw Error(ErrorCode::Malformed, "certificate search needs four stages");
  const std::size_t last = history.size() - 1;
  for (std::size_t p = 1; p <= bounds.max_stage_period && 2 * p <= last; ++p) {
    for (std::size_t t0 = 0; t0 + 2 * p <= last; ++t0) {
      const auto& s0 = history[t0];
      const auto& s1 = history[t0 + p];
      const auto& s2 = history[t0 + 2 * p];
      if (profile_equal(s0, s1) || profile_equal(s1, s2)) continue;
      const Nat m = std::lcm(profile_lcm(s0), std::lcm(profile_lcm(s1), profile_lcm(s2)));
      const Nat h = std::max({profile_largest(s0), profile_largest(s1), profile_largest(s2)});
      const Nat span = std::max({profile_diameter(s0), profile_diameter(s1), profile_diameter(s2)});
      for (std::size_t mult = 1; mult <= bounds.max_shift_multiple; ++mult) {
        const Nat s = m * mult;
        const Nat cap = h + s;
        const Nat bound = h + s + span + 2 * m;
        Nat ceiling = cap;
        Nat floor = 0;
        for (std::size_t i = 0; i < s0.size() && floor <= ceiling; ++i) {
          ceiling = std::min({ceiling, prefix_agreement(s0[i], s1[i], cap),
                              prefix_agreement(s1[i], s2[i], cap)});
          floor = std::max({floor, shift_floor(s0[i], s1[i], s, bound),
                            shift_floor(s1[i], s2[i], s, bound)});
        }
        if (floor <= ceiling) return ShiftCertificate{t0, p, s, floor};
      }
    }
  }
  return std::nullopt;
}

SymbolicProfile limit_profile(std::vector<SymbolicProfile>& history,
                              const ShiftCertificate& cert, const CommGraph& g) {
  if (history.empty()) throw Error(ErrorCode::Malformed, "empty history");
  bool constant = true;
  for (std::size_t k = 1; k < history.size() && constant; ++k)
    constant = profile_equal(history[k - 1], history[k]);
  if (constant) return history.back();
  if (cert.p == 0 || cert.s == 0 || cert.t0 >= history.size())
    throw Error(ErrorCode::CertificateInvalid, "certificate does not fit the history");

  Nat delta = 0;
  for (const auto& stage : history) delta = std::max(delta, profile_diameter(stage));
  const Nat s = cert.s;
  const Nat d = cert.d;
  const Nat tau = d + delta + s;
  const Nat window = tau + 2 * s + 2 * delta + 2 * s;

  auto stage_at = [&](Nat k) -> const SymbolicProfile& {
    const std::size_t idx = cert.t0 + k * cert.p;
    while (history.size() <= idx) history.push_back(symbolic_apply_g(history.back(), g));
    return history[idx];
  };
  auto steps_past = [&](Nat reach) { return (reach - d + s - 1) / s; };

  const Nat k1 = steps_past(window + s);
  const Nat k2 = steps_past(2 * window + 3 * s);
  const Nat wide = 2 * window + 2 * s;
  stage_at(k2);  // extend once so later references stay valid
  const SymbolicProfile& q = stage_at(k1);
  const SymbolicProfile& q_next = stage_at(k1 + 1);
  const SymbolicProfile& q_far = stage_at(k2);

  SymbolicProfile limit;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Partition trace = pp_restrict(q[i], window);
    if (trace != pp_restrict(q_next[i], window))
      throw Error(ErrorCode::CertificateInvalid, "stages have not settled on the window");
    const auto blocks = trace.blocks();
    auto block_fn = [&](Nat x) {
      const auto& raw = blocks[trace.block_id(x - 1)];
      BlockSet b;
      for (StateId y : raw) b.finite.push_back(y + 1);
      bool tail = false;
      bool periodic = true;
      for (Nat y : b.finite) {
        if (y <= tau) continue;
        tail = true;
        for (Nat z = y; z <= window && periodic; z += s) periodic = b.contains(z);
        for (Nat z = y; z > tau && periodic; z -= s) periodic = b.contains(z);
      }
      if (!tail || !periodic) return b;
      BlockSet inf;
      inf.step = s;
      for (Nat y : b.finite) {
        if (y <= tau) inf.finite.push_back(y);
        else if (y <= tau + s) inf.starts.push_back(y);
      }
      return inf;
    };
    try {
      limit.push_back(pp_canonical(synthesize(tau, s, block_fn)));
    } catch (const Error& e) {
      throw Error(ErrorCode::CertificateInvalid,
                  std::string("extrapolated partition is not valid: ") + e.what());
    }
    if (pp_restrict(limit.back(), wide) != pp_restrict(q_far[i], wide))
      throw Error(ErrorCode::CertificateInvalid, "extrapolation disagrees with a later stage");
    if (!pp_is_coarser(q_far[i], limit.back()))
      throw Error(ErrorCode::CertificateInvalid, "extrapolation does not refine a later stage");
  }
  return limit;
}

std::string symbolic_message(const PeriodicPartition& pp, Nat x) {
  return known(pp, x) ? "state:" + std::to_string(x) : "unknown";
}

std::optional<bool> symbolic_ck_message_profile(const SymbolicProfile& profile, Nat x) {
  bool someone = false;
  bool everyone = true;
  for (const auto& pp : profile) {
    bool k = known(pp, x);
    someone = someone || k;
    everyone = everyone && k;
  }
  // A known-state message pins the event down to {x}.
  if (someone) return everyone;

  Nat cap = x;
  Nat l = 1;
  for (const auto& pp : profile) {
    cap = std::max(cap, pp.largest_constant() + pp.max_finite_diameter());
    l = std::lcm(l, pp.modulus());
  }
  cap += 2 * l;

  std::set<Nat> seen{x};
  std::deque<Nat> queue{x};
  bool truncated = false;
  while (!queue.empty()) {
    Nat y = queue.front();
    queue.pop_front();
    for (const auto& pp : profile)
      if (known(pp, y)) return false;
    for (const auto& pp : profile) {
      BlockSet b = pp.block_of(y);
      if (!b.is_finite() || b.threshold() > cap) truncated = true;
      for (Nat z : b.elements_upto(cap))
        if (seen.insert(z).second) queue.push_back(z);
    }
  }
  if (truncated) return std::nullopt;
  return true;
}

SymbolicTrace run_transfinite(const SymbolicScenario& sc, TransfiniteOptions opts) {
  sc.validate();
  SymbolicTrace trace;
  std::vector<SymbolicProfile> history{sc.initial};
  Ordinal ordinal{};
  StageKind kind = StageKind::Initial;
  std::optional<ShiftCertificate> cert;
  std::size_t limits = 0;

  for (;;) {
    const SymbolicProfile& current = history.back();
    SymbolicProfile next = symbolic_apply_g(current, sc.graph);

    SymbolicStage stage;
    stage.ordinal = ordinal;
    stage.kind = kind;
    stage.profile = current;
    stage.flags = symbolic_flags(current, sc.true_state, stage.messages);
    stage.flags.fixed_point = profile_equal(next, current);
    stage.certificate = cert;
    trace.stages.push_back(std::move(stage));
    if (trace.stages.back().flags.fixed_point) return trace;

    if (history.size() <= opts.successor_window) {
      ordinal = ordinal.successor();
      if (ordinal > opts.budget)
        throw Error(ErrorCode::OrdinalBudgetExceeded,
                    "no fixed point by " + to_string(opts.budget));
      history.push_back(std::move(next));
      kind = StageKind::Successor;
      cert.reset();
      continue;
    }

    history.push_back(std::move(next));
    cert = detect_shift_certificate(history, opts.bounds);
    if (!cert)
      throw Error(ErrorCode::NoCertificateFound,
                  "no shift certificate after stage " + to_string(ordinal));
    ordinal = ordinal.next_limit();
    if (++limits > opts.max_limits || ordinal > opts.budget)
      throw Error(ErrorCode::OrdinalBudgetExceeded,
                  "no fixed point by " + to_string(opts.budget));
    SymbolicProfile limit = limit_profile(history, *cert, sc.graph);
    history.assign(1, std::move(limit));
    kind = StageKind::Limit;
  }
}

OracleReport truncation_oracle(const SymbolicScenario& sc, Nat window, std::size_t stages,
                               const StageTamper& tamper) {
  sc.validate();
  if (window == 0) throw Error(ErrorCode::Malformed, "window must be positive");
  OracleReport report;
  report.window = window;
  report.stages = stages;
  report.margin = profile_diameter(sc.initial) + profile_lcm(sc.initial);
  report.truncation = window + report.margin * stages;
  const Nat n = report.truncation;

  std::vector<std::string> labels;
  for (Nat x = 1; x <= n; ++x) labels.push_back(std::to_string(x));
  const MessageFunction mf = MessageFunction::known_state(labels);

  Profile finite;
  for (const auto& pp : sc.initial) finite.push_back(pp_restrict(pp, n));
  SymbolicProfile symbolic = sc.initial;

  for (std::size_t t = 0; t <= stages; ++t) {
    SymbolicProfile shown = symbolic;
    if (tamper) tamper(t, shown);
    for (std::size_t i = 0; i < shown.size(); ++i) {
      const Partition lhs = pp_restrict(shown[i], window);
      const Partition rhs = restrict_prefix(finite[i], window);
      for (Nat x = 1; x <= window; ++x) {
        ++report.comparisons;
        if (lhs.block_of(x - 1) != rhs.block_of(x - 1))
          throw Error(ErrorCode::Mismatch,
                      "stage " + std::to_string(t) + ", agent " + sc.agents[i] + ", state " +
                          std::to_string(x) + ": symbolic block " +
                          to_string(shown[i].block_of(x)) + " disagrees with the truncation");
      }
    }
    if (t == stages) break;
    symbolic = symbolic_apply_g(symbolic, sc.graph);
    finite = apply_g(finite, sc.graph, mf);
  }
  return report;
}

}  // namespace agree
