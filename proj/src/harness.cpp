#include "agree/harness.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "agree/error.hpp"
#include "agree/scenario_io.hpp"
#include "json.hpp"

namespace agree {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct Verdict {
  std::string detail;
  std::optional<std::size_t> stage;
};

// Set by a check whose premise did not arise in the case at hand.
thread_local bool g_vacuous = false;

using Check = std::function<std::optional<Verdict>(const Scenario&)>;
using Generator = std::function<Scenario(Rng&)>;

std::vector<std::string> agent_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
  return out;
}

Family random_stp_family(Rng& rng) {
  static constexpr Family kFamilies[] = {Family::KnownState, Family::Posterior,
                                         Family::ExpectedValue, Family::Injective};
  return kFamilies[rng.uniform(0, 3)];
}

Rational random_positive(Rng& rng) {
  return Rational(static_cast<long>(rng.uniform(1, 9)), static_cast<long>(rng.uniform(1, 9)));
}

enum class GraphChoice { A3, NotA3, Any };

Scenario gen_scenario(Rng& rng, const SuiteOptions& opts, GraphChoice graph,
                      std::optional<Family> family = std::nullopt) {
  Scenario sc;
  std::size_t n = rng.uniform(opts.min_agents, opts.max_agents);
  std::size_t num_states = rng.uniform(opts.min_states, opts.max_states);
  if (opts.mf_override && opts.mf_override->family() == Family::Lookup)
    num_states = opts.mf_override->table_size();
  sc.agents = agent_labels(n);
  sc.num_states = num_states;
  sc.initial = gen_profile(n, num_states, rng);
  if (opts.mf_override) {
    sc.mf = *opts.mf_override;
  } else {
    sc.mf = gen_message_function(family.value_or(random_stp_family(rng)), num_states, rng);
  }
  GraphMode mode = graph == GraphChoice::A3      ? GraphMode::A3
                   : graph == GraphChoice::NotA3 ? GraphMode::NotA3
                   : rng.chance(1, 2)            ? GraphMode::A3
                                                 : GraphMode::NotA3;
  sc.graph = gen_graph(n, rng, mode);
  return sc;
}

// The message function on the first `keep` states, when the family allows it.
std::optional<MessageFunction> shrink_mf(const MessageFunction& mf, std::size_t keep) {
  switch (mf.family()) {
    case Family::KnownState: {
      auto labels = mf.labels();
      if (!labels.empty()) labels.resize(keep);
      return MessageFunction::known_state(std::move(labels));
    }
    case Family::Injective:
      return mf;
    case Family::Posterior: {
      std::vector<Rational> prior(mf.weights().begin(), mf.weights().begin() + keep);
      Event target(keep);
      for (StateId x = 0; x < keep; ++x)
        if (mf.target().contains(x)) target.insert(x);
      return MessageFunction::posterior(std::move(prior), std::move(target));
    }
    case Family::ExpectedValue: {
      std::vector<Rational> pay(mf.payoffs().begin(), mf.payoffs().begin() + keep);
      std::vector<Rational> w;
      if (!mf.weights().empty()) w.assign(mf.weights().begin(), mf.weights().begin() + keep);
      return MessageFunction::expected_value(std::move(pay), std::move(w));
    }
    case Family::Maximin: {
      auto u = mf.utility();
      for (auto& row : u) row.resize(keep);
      return MessageFunction::maximin(std::move(u));
    }
    case Family::Lookup:
      break;
  }
  return std::nullopt;
}

std::vector<Scenario> shrink_candidates(const Scenario& sc) {
  std::vector<Scenario> out;
  if (sc.num_states > 1) {
    if (auto mf = shrink_mf(sc.mf, sc.num_states - 1)) {
      Scenario c = sc;
      c.num_states -= 1;
      c.mf = *mf;
      if (!c.state_labels.empty()) c.state_labels.pop_back();
      for (auto& p : c.initial) p = restrict_prefix(p, c.num_states);
      if (c.true_state && *c.true_state >= c.num_states) c.true_state.reset();
      out.push_back(std::move(c));
    }
  }
  if (sc.agents.size() > 2) {
    for (AgentId k = 0; k < sc.agents.size(); ++k) {
      Scenario c = sc;
      c.agents.erase(c.agents.begin() + k);
      c.initial.erase(c.initial.begin() + k);
      std::vector<Edge> edges;
      for (auto [u, v] : sc.graph.edges()) {
        if (u == k || v == k) continue;
        edges.emplace_back(u > k ? u - 1 : u, v > k ? v - 1 : v);
      }
      c.graph = CommGraph(c.agents.size(), edges);
      out.push_back(std::move(c));
    }
  }
  for (std::size_t e = 0; e < sc.graph.edges().size(); ++e) {
    Scenario c = sc;
    auto edges = sc.graph.edges();
    edges.erase(edges.begin() + e);
    c.graph = CommGraph(sc.agents.size(), edges);
    out.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < sc.initial.size(); ++i) {
    const std::size_t blocks = sc.initial[i].num_blocks();
    for (std::size_t a = 0; a < blocks; ++a)
      for (std::size_t b = a + 1; b < blocks; ++b) {
        std::vector<std::size_t> labels(sc.initial[i].block_ids().begin(),
                                        sc.initial[i].block_ids().end());
        for (auto& l : labels)
          if (l == b) l = a;
        Scenario c = sc;
        c.initial[i] = Partition(labels);
        out.push_back(std::move(c));
      }
  }
  return out;
}

bool still_fails(const Check& check, const Scenario& sc) {
  try {
    sc.validate();
    return check(sc).has_value();
  } catch (const Error&) {
    return false;
  }
}

// Greedy descent: take the first smaller scenario that still fails.
Scenario minimize(const Scenario& start, const Check& check) {
  Scenario current = start;
  for (int round = 0; round < 256; ++round) {
    bool progressed = false;
    for (auto& cand : shrink_candidates(current)) {
      if (still_fails(check, cand)) {
        current = std::move(cand);
        progressed = true;
        break;
      }
    }
    if (!progressed) break;
  }
  return current;
}

// --- the Remark instance on states x, y, w, z (0..3), relabelled by `perm`.

MessageFunction remark_mf(const std::vector<StateId>& perm) {
  std::map<std::uint32_t, Message> table;
  table[1u << perm[0]] = std::string("a");
  table[(1u << perm[0]) | (1u << perm[1])] = std::string("a");
  return MessageFunction::lookup(4, std::move(table), Message(std::string("b")));
}

Partition remark_partition(const std::vector<std::vector<StateId>>& blocks,
                           const std::vector<StateId>& perm) {
  std::vector<std::vector<StateId>> mapped;
  for (const auto& b : blocks) {
    std::vector<StateId> m;
    for (StateId x : b) m.push_back(perm[x]);
    mapped.push_back(m);
  }
  return Partition::from_blocks(mapped, 4);
}

std::optional<Verdict> check_all_equal_prop1(const Scenario& sc) {
  Prop1Flags f = check_prop1(sc.initial, sc.mf);
  if (f.a == f.b && f.b == f.c) return std::nullopt;
  return Verdict{"flags a=" + std::to_string(f.a) + " b=" + std::to_string(f.b) +
                     " c=" + std::to_string(f.c),
                 0};
}

struct Suite {
  Generator gen;
  Check check;
  bool minimizable = true;
};

Suite make_suite(std::string_view name, const SuiteOptions& opts) {
  if (name == "inflationary") {
    return {[opts](Rng& r) { return gen_scenario(r, opts, GraphChoice::Any); },
            [](const Scenario& sc) -> std::optional<Verdict> {
              Profile next = apply_g(sc.initial, sc.graph, sc.mf);
              if (profile_leq(sc.initial, next)) return std::nullopt;
              return Verdict{"g(P) is not a refinement of P", 0};
            }};
  }
  if (name == "non_monotone_witness") {
    return {[](Rng& r) {
              std::vector<StateId> perm{0, 1, 2, 3};
              std::shuffle(perm.begin(), perm.end(), r.engine());
              Scenario sc;
              sc.agents = {"1", "2"};
              sc.num_states = 4;
              sc.initial = {Partition::trivial(4), remark_partition({{0, 1}, {2, 3}}, perm)};
              sc.mf = remark_mf(perm);
              sc.graph = CommGraph(2, {{0, 1}, {1, 0}});
              return sc;
            },
            [](const Scenario& sc) -> std::optional<Verdict> {
              Profile p = sc.initial;
              Profile p_prime{p[0], Partition::discrete(4)};
              if (!profile_leq(p, p_prime)) return Verdict{"P is not coarser than P'", 0};
              Profile gp = apply_g(p, sc.graph, sc.mf);
              Profile gq = apply_g(p_prime, sc.graph, sc.mf);
              if (profile_leq(gp, gq)) return Verdict{"g(P) <= g(P'): no witness", 1};
              // Recover x as the state whose singleton maps to "a".
              const auto msgs = message_vector(sc.mf, Partition::discrete(4));
              StateId x = 0;
              while (x < 4 && to_string(msgs[x]) != "a") ++x;
              std::vector<StateId> others;
              for (StateId s = 0; s < 4; ++s)
                if (s != x) others.push_back(s);
              Partition expected_first = Partition::from_blocks({{x}, others}, 4);
              if (gp[0] != p[1] || gp[1] != p[1] || gq[0] != expected_first ||
                  gq[1] != Partition::discrete(4))
                return Verdict{"output profiles differ from the displayed ones", 1};
              return std::nullopt;
            },
            false};
  }
  if (name == "prop1_equivalence") {
    return {[opts](Rng& r) { return gen_scenario(r, opts, GraphChoice::Any); }, check_all_equal_prop1};
  }
  if (name == "prop2_inclusion") {
    return {[opts](Rng& r) { return gen_scenario(r, opts, GraphChoice::Any); },
            [](const Scenario& sc) -> std::optional<Verdict> {
              if (consensus_holds(sc.initial, sc.mf) && !in_fix_g(sc.initial, sc.graph, sc.mf))
                return Verdict{"consensus profile outside Fix(g)", 0};
              Scenario full = sc;
              full.graph = CommGraph::complete(sc.agents.size());
              FiniteTrace tr = run_dialogue(full);
              const Profile& fixed = tr.final_stage().profile;
              if (!consensus_holds(fixed, sc.mf))
                return Verdict{"complete-graph dialogue ended without consensus", tr.steps()};
              if (!in_fix_g(fixed, sc.graph, sc.mf))
                return Verdict{"consensus profile outside Fix(g) for the scenario graph", tr.steps()};
              return std::nullopt;
            }};
  }
  if (name == "prop3_equality") {
    return {[opts](Rng& r) { return gen_scenario(r, opts, GraphChoice::A3); },
            [](const Scenario& sc) -> std::optional<Verdict> {
              FiniteTrace tr = run_dialogue(sc);
              for (std::size_t k = 0; k < tr.stages.size(); ++k) {
                const Profile& p = tr.stages[k].profile;
                bool fix = in_fix_g(p, sc.graph, sc.mf);
                bool cons = consensus_holds(p, sc.mf);
                if (fix != cons)
                  return Verdict{fix ? "fixed point without consensus" : "consensus outside Fix(g)", k};
              }
              return std::nullopt;
            }};
  }
  if (name == "corollary1") {
    return {[opts](Rng& r) {
              Scenario sc = gen_scenario(r, opts, GraphChoice::Any);
              for (int tries = 0; tries < 64 && consensus_holds(sc.initial, sc.mf); ++tries)
                sc.initial = gen_profile(sc.agents.size(), sc.num_states, r);
              return sc;
            },
            [](const Scenario& sc) -> std::optional<Verdict> {
              g_vacuous = consensus_holds(sc.initial, sc.mf);
              for (AgentId i = 0; i < sc.agents.size(); ++i)
                for (AgentId j = i + 1; j < sc.agents.size(); ++j) {
                  auto v = check_corollary1(sc.initial, sc.mf, i, j);
                  if (v.applicable && !v.i_learns && !v.j_learns)
                    return Verdict{"agents " + sc.agents[i] + " and " + sc.agents[j] +
                                       " disagree and neither learns",
                                   0};
                }
              return std::nullopt;
            }};
  }
  if (name == "theorem_bound") {
    return {[opts](Rng& r) { return gen_scenario(r, opts, GraphChoice::A3); },
            [](const Scenario& sc) -> std::optional<Verdict> {
              const std::size_t bound = sc.agents.size() * sc.num_states;
              FiniteTrace tr;
              try {
                tr = run_dialogue(sc, StageBudget{bound + 1});
              } catch (const Error& e) {
                if (e.code() != ErrorCode::BudgetExceeded) throw;
                return Verdict{"no fixed point within n*N+1 steps", bound + 1};
              }
              if (tr.steps() > bound)
                return Verdict{"fixed point after " + std::to_string(tr.steps()) + " steps", tr.steps()};
              if (!tr.final_stage().flags.consensus)
                return Verdict{"fixed point without consensus", tr.steps()};
              return std::nullopt;
            }};
  }
  if (name == "injective_sharing") {
    return {[opts](Rng& r) { return gen_scenario(r, opts, GraphChoice::Any, Family::Injective); },
            [](const Scenario& sc) -> std::optional<Verdict> {
              FiniteTrace tr = run_dialogue(sc);
              g_vacuous = !tr.final_stage().flags.consensus;
              for (std::size_t k = 0; k < tr.stages.size(); ++k) {
                const auto& st = tr.stages[k];
                if (!st.flags.consensus) continue;
                for (const auto& p : st.profile)
                  if (p != st.profile.front()) return Verdict{"consensus with differing partitions", k};
              }
              return std::nullopt;
            }};
  }
  throw Error(ErrorCode::UnknownSuite, "unknown suite '" + std::string(name) + "'");
}

PropertyReport run_symbolic_oracle_suite(std::size_t cases, std::uint64_t seed) {
  PropertyReport report;
  report.suite = "symbolic_oracle";
  report.cases = cases;
  Rng base(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    Rng r = base.fork(i);
    SymbolicScenario sc;
    std::size_t n = r.uniform(2, 3);
    sc.agents = agent_labels(n);
    for (std::size_t k = 0; k < n; ++k) sc.initial.push_back(gen_periodic_partition(r));
    sc.graph = gen_graph(n, r, r.chance(1, 2) ? GraphMode::A3 : GraphMode::NotA3);
    try {
      truncation_oracle(sc, 12, 3);
      ++report.exercised;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Mismatch) throw;
      report.failures.push_back({i, std::string(e.what()) + " in " + serialize_scenario(sc), std::nullopt,
                                 std::nullopt});
    }
  }
  return report;
}

}  // namespace

Rng Rng::fork(std::uint64_t index) const {
  return Rng(splitmix64(m_seed ^ splitmix64(index + 1)));
}

std::size_t Rng::uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(m_engine);
}

bool Rng::chance(unsigned num, unsigned den) { return uniform(1, den) <= num; }

Partition gen_partition(std::size_t num_states, Rng& rng) {
  std::vector<std::size_t> labels(num_states);
  for (auto& l : labels) l = rng.uniform(0, num_states - 1);
  return Partition(labels);
}

Profile gen_profile(std::size_t num_agents, std::size_t num_states, Rng& rng) {
  Profile out;
  for (std::size_t i = 0; i < num_agents; ++i) out.push_back(gen_partition(num_states, rng));
  return out;
}

MessageFunction gen_message_function(Family family, std::size_t num_states, Rng& rng) {
  switch (family) {
    case Family::KnownState:
      return MessageFunction::known_state();
    case Family::Injective:
      return MessageFunction::injective();
    case Family::Posterior: {
      std::vector<Rational> prior;
      Event target(num_states);
      for (StateId x = 0; x < num_states; ++x) {
        prior.push_back(random_positive(rng));
        if (rng.chance(1, 2)) target.insert(x);
      }
      return MessageFunction::posterior(std::move(prior), std::move(target));
    }
    case Family::ExpectedValue: {
      std::vector<Rational> pay, weights;
      for (StateId x = 0; x < num_states; ++x) {
        pay.push_back(Rational(static_cast<long>(rng.uniform(0, 18)) - 9,
                               static_cast<long>(rng.uniform(1, 9))));
        weights.push_back(random_positive(rng));
      }
      return MessageFunction::expected_value(std::move(pay), std::move(weights));
    }
    case Family::Maximin:
    case Family::Lookup:
      break;
  }
  throw Error(ErrorCode::UnknownFamily,
              "no generator for '" + std::string(family_name(family)) + "'");
}

MessageFunction gen_message_function(std::string_view family, std::size_t num_states, Rng& rng) {
  auto f = family_from_name(family);
  if (!f) throw Error(ErrorCode::UnknownFamily, "unknown family '" + std::string(family) + "'");
  return gen_message_function(*f, num_states, rng);
}

CommGraph gen_graph(std::size_t num_agents, Rng& rng, GraphMode mode) {
  const std::size_t n = num_agents;
  std::vector<Edge> edges;
  auto present = [&](AgentId u, AgentId v) {
    return std::find(edges.begin(), edges.end(), Edge{u, v}) != edges.end();
  };
  if (mode == GraphMode::A3) {
    std::vector<AgentId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    for (std::size_t k = 1; k < n; ++k) {
      AgentId parent = perm[rng.uniform(0, k - 1)];
      edges.emplace_back(perm[k], parent);
      edges.emplace_back(parent, perm[k]);
    }
    for (AgentId u = 0; u < n; ++u)
      for (AgentId v = 0; v < n; ++v)
        if (u != v && !present(u, v) && rng.chance(1, 4)) edges.emplace_back(u, v);
    return CommGraph(n, edges);
  }
  // Two sides with no two-way edge between them.
  std::vector<int> side(n, 0);
  for (AgentId u = 1; u < n; ++u) side[u] = rng.chance(1, 2) ? 1 : 0;
  side[rng.uniform(1, n - 1)] = 1;
  for (AgentId u = 0; u < n; ++u)
    for (AgentId v = u + 1; v < n; ++v) {
      if (side[u] == side[v]) {
        if (rng.chance(1, 2)) edges.emplace_back(u, v);
        if (rng.chance(1, 2)) edges.emplace_back(v, u);
        continue;
      }
      switch (rng.uniform(0, 2)) {
        case 1: edges.emplace_back(u, v); break;
        case 2: edges.emplace_back(v, u); break;
        default: break;
      }
    }
  return CommGraph(n, edges);
}

PeriodicPartition gen_periodic_partition(Rng& rng) {
  static constexpr Nat kModuli[] = {1, 2, 4};
  const Nat m = kModuli[rng.uniform(0, 2)];
  const Nat tau = rng.uniform(0, 6);
  // Residue kinds beyond tau: 0 singletons, 1 or 2 an infinite group.
  std::vector<int> kind(m);
  for (auto& k : kind) k = static_cast<int>(rng.uniform(0, 2));
  std::vector<BlockSet> groups(2);
  for (Nat r = 0; r < m; ++r)
    if (kind[r] > 0) groups[kind[r] - 1].starts.push_back(tau + 1 + r);
  for (auto& g : groups)
    if (!g.starts.empty()) g.step = m;
  // States up to tau: join a live infinite group or one of three finite groups.
  std::vector<int> low(tau + 1, 0);
  std::vector<BlockSet> finite(3);
  for (Nat x = 1; x <= tau; ++x) {
    std::size_t pick = rng.uniform(0, 4);
    if (pick < 2 && !groups[pick].starts.empty()) {
      groups[pick].finite.push_back(x);
      low[x] = -static_cast<int>(pick) - 1;
    } else {
      std::size_t f = pick % 3;
      finite[f].finite.push_back(x);
      low[x] = static_cast<int>(f) + 1;
    }
  }
  return synthesize(tau, m, [&](Nat x) -> BlockSet {
    if (x <= tau) {
      int l = low[x];
      return l < 0 ? groups[-l - 1] : finite[l - 1];
    }
    int k = kind[(x - tau - 1) % m];
    return k == 0 ? BlockSet::singleton(x) : groups[k - 1];
  });
}

std::vector<std::string> suite_names() {
  return {"inflationary",  "non_monotone_witness", "prop1_equivalence",
          "prop2_inclusion", "prop3_equality",     "corollary1",
          "theorem_bound", "injective_sharing",    "symbolic_oracle"};
}

PropertyReport run_property_suite(std::string_view name, std::size_t cases, std::uint64_t seed,
                                  const SuiteOptions& opts) {
  if (name == "symbolic_oracle") return run_symbolic_oracle_suite(cases, seed);
  Suite suite = make_suite(name, opts);
  PropertyReport report;
  report.suite = std::string(name);
  report.cases = cases;
  report.expected_failure = opts.mf_override.has_value() &&
                            opts.mf_override->family() == Family::Lookup &&
                            !check_union_consistency(*opts.mf_override, opts.mf_override->table_size()).holds;
  Rng base(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    Rng r = base.fork(i);
    Scenario sc = suite.gen(r);
    g_vacuous = false;
    auto verdict = suite.check(sc);
    if (!g_vacuous) ++report.exercised;
    if (!verdict) continue;
    Scenario shown = (opts.minimize && suite.minimizable) ? minimize(sc, suite.check) : sc;
    auto final_verdict = suite.check(shown);
    report.failures.push_back({i, final_verdict->detail, shown, final_verdict->stage});
  }
  return report;
}

PropertyReport run_exhaustive_small_model() {
  PropertyReport report;
  report.suite = "exhaustive_small_model";
  const std::vector<std::vector<std::size_t>> shapes{
      {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
  const Rational weights[] = {Rational(1, 4), Rational(1, 2), Rational(1)};
  const CommGraph graph = CommGraph::complete(2);
  std::size_t index = 0;
  for (int w0 = 0; w0 < 3; ++w0)
    for (int w1 = 0; w1 < 3; ++w1)
      for (int w2 = 0; w2 < 3; ++w2)
        for (std::uint32_t mask = 0; mask < 8; ++mask) {
          Event target(3);
          for (StateId x = 0; x < 3; ++x)
            if (mask & (1u << x)) target.insert(x);
          MessageFunction mf =
              MessageFunction::posterior({weights[w0], weights[w1], weights[w2]}, target);
          const bool stp = check_union_consistency(mf, 3).holds;
          for (const auto& s1 : shapes)
            for (const auto& s2 : shapes) {
              Scenario sc;
              sc.agents = {"A", "B"};
              sc.num_states = 3;
              sc.initial = {Partition(s1), Partition(s2)};
              sc.mf = mf;
              sc.graph = graph;
              ++report.cases;
              ++report.exercised;
              std::string problem;
              std::optional<std::size_t> stage;
              if (!stp) problem = "posterior function violates union consistency";
              if (problem.empty()) {
                if (auto v = check_all_equal_prop1(sc)) problem = v->detail;
              }
              if (problem.empty()) {
                FiniteTrace tr = run_dialogue(sc, StageBudget{7});
                if (tr.steps() > 6) problem = "fixed point after " + std::to_string(tr.steps()) + " steps";
                else if (!tr.final_stage().flags.consensus) problem = "fixed point without consensus";
                for (const auto& st : tr.stages)
                  if (problem.empty()) {
                    if (auto v = check_all_equal_prop1(Scenario{sc.agents, 3, {}, st.profile, mf, graph, {}})) {
                      problem = v->detail;
                      stage = static_cast<std::size_t>(st.ordinal.finite);
                    }
                  }
              }
              if (!problem.empty()) report.failures.push_back({index, problem, sc, stage});
              ++index;
            }
        }
  return report;
}

std::string report_lines(const PropertyReport& report) {
  std::string out;
  for (const auto& f : report.failures) {
    json rec;
    rec["suite"] = report.suite;
    rec["case"] = f.case_index;
    rec["stage"] = f.stage ? json(*f.stage) : json(nullptr);
    rec["detail"] = f.detail;
    rec["scenario"] = f.scenario ? json::parse(serialize_scenario_compact(*f.scenario)) : json(nullptr);
    out += rec.dump() + "\n";
  }
  json summary;
  summary["suite"] = report.suite;
  summary["cases"] = report.cases;
  summary["exercised"] = report.exercised;
  summary["failures"] = report.failures.size();
  summary["expected_failure"] = report.expected_failure;
  summary["passed"] = report.passed();
  out += summary.dump() + "\n";
  return out;
}

}  // namespace agree
