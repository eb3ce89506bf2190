#include "agree/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "agree/error.hpp"
#include "agree/harness.hpp"
#include "agree/scenario_io.hpp"

namespace agree {

namespace {

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::BudgetExceeded:
    case ErrorCode::OrdinalBudgetExceeded:
    case ErrorCode::NoCertificateFound:
      return kExitBudget;
    case ErrorCode::Mismatch:
      return kExitCheckFailed;
    default:
      return kExitError;
  }
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << to_string(e.code());
    if (e.cause() != ErrorCode::None) err << " (" << to_string(e.cause()) << ")";
    err << ": " << e.what() << "\n";
    return exit_for(e);
  }
}

std::string state_name(const Scenario& sc, StateId x) {
  return sc.state_labels.empty() ? std::to_string(x) : sc.state_labels[x];
}

std::string event_text(const Scenario& sc, const Event& e) {
  std::string out = "{";
  bool first = true;
  for (StateId x : e.members()) {
    out += (first ? "" : ",") + state_name(sc, x);
    first = false;
  }
  return out + "}";
}

std::string partition_text(const Scenario& sc, const Partition& p) {
  std::string out = "{";
  bool first = true;
  for (const auto& b : p.blocks()) {
    out += first ? "" : " ";
    out += event_text(sc, Event::of(sc.num_states, b));
    first = false;
  }
  return out + "}";
}

std::string core_text(const CommGraph& core, const std::vector<std::string>& agents) {
  std::string out;
  for (auto [u, v] : core.edges()) {
    if (u > v) continue;
    if (!out.empty()) out += ", ";
    out += agents[u] + "<->" + agents[v];
  }
  return out.empty() ? "empty" : out;
}

// First agent the symmetric core does not connect to the first agent.
std::optional<AgentId> unreached(const CommGraph& core) {
  std::vector<bool> seen(core.num_agents(), false);
  std::vector<AgentId> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    AgentId u = stack.back();
    stack.pop_back();
    for (auto [a, b] : core.edges())
      if (a == u && !seen[b]) {
        seen[b] = true;
        stack.push_back(b);
      }
  }
  for (AgentId i = 0; i < seen.size(); ++i)
    if (!seen[i]) return i;
  return std::nullopt;
}

bool report_assumption3(const CommGraph& g, const std::vector<std::string>& agents, std::ostream& out) {
  Assumption3Verdict v = satisfies_assumption3(g);
  out << "assumption3: " << (v.holds ? "holds" : "fails") << " (symmetric core: "
      << core_text(v.witness, agents) << ")";
  if (!v.holds) {
    if (auto i = unreached(v.witness))
      out << "; " << agents[*i] << " has no two-way path to " << agents[0];
  }
  out << "\n";
  return v.holds;
}

class TraceSink {
 public:
  explicit TraceSink(const std::optional<std::string>& path, std::ostream& out) {
    if (!path) return;
    if (*path == "-") {
      m_stream = &out;
      return;
    }
    m_file.open(*path, std::ios::binary);
    if (!m_file) throw Error(ErrorCode::Io, "cannot write trace '" + *path + "'");
    m_stream = &m_file;
  }
  void line(const std::string& text) {
    if (m_stream) *m_stream << text << "\n";
  }

 private:
  std::ofstream m_file;
  std::ostream* m_stream = nullptr;
};

StateId finite_state(const Scenario& sc, const std::string& text) {
  for (StateId x = 0; x < sc.state_labels.size(); ++x)
    if (sc.state_labels[x] == text) return x;
  if (sc.state_labels.empty() && !text.empty() &&
      text.find_first_not_of("0123456789") == std::string::npos) {
    StateId x = std::stoull(text);
    if (x < sc.num_states) return x;
  }
  throw Error(ErrorCode::Validation, "unknown true state '" + text + "'", ErrorCode::Index);
}

int run_finite(Scenario sc, const RunOptions& opts, std::ostream& out) {
  if (opts.true_state) sc.true_state = finite_state(sc, *opts.true_state);
  StageBudget budget = opts.budget ? StageBudget{*opts.budget} : StageBudget::for_scenario(sc);
  FiniteTrace trace = run_dialogue(sc, budget);
  TraceSink sink(opts.trace_path, out);
  for (const auto& st : trace.stages) sink.line(trace_line(sc, st));
  const auto& last = trace.final_stage();
  out << "final ordinal: " << to_string(last.ordinal) << "\n";
  out << "consensus: " << (last.flags.consensus ? "yes" : "no") << "\n";
  for (std::size_t i = 0; i < sc.agents.size(); ++i)
    out << "  " << sc.agents[i] << ": " << partition_text(sc, last.profile[i]) << "\n";
  return last.flags.consensus ? kExitOk : kExitNoConsensus;
}

int run_symbolic(SymbolicScenario sc, const RunOptions& opts, std::ostream& out) {
  if (opts.true_state) {
    const std::string& t = *opts.true_state;
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || std::stoull(t) == 0)
      throw Error(ErrorCode::Validation, "true state must be a positive integer", ErrorCode::Index);
    sc.true_state = std::stoull(t);
  }
  TransfiniteOptions topts;
  if (opts.ordinal_budget) {
    auto o = parse_ordinal(*opts.ordinal_budget);
    if (!o) throw Error(ErrorCode::Validation, "bad ordinal '" + *opts.ordinal_budget + "'", ErrorCode::Malformed);
    topts.budget = *o;
  }
  SymbolicTrace trace = run_transfinite(sc, topts);
  TraceSink sink(opts.trace_path, out);
  for (const auto& st : trace.stages) sink.line(trace_line(sc, st));
  const auto& last = trace.final_stage();
  out << "final ordinal: " << to_string(last.ordinal) << "\n";
  out << "consensus: " << (last.flags.consensus ? "yes" : "no") << "\n";
  for (std::size_t i = 0; i < sc.agents.size(); ++i)
    out << "  " << sc.agents[i] << ": " << to_string(pp_canonical(last.profile[i])) << "\n";
  return last.flags.consensus ? kExitOk : kExitNoConsensus;
}

}  // namespace

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    AnyScenario any = parse_scenario(path);
    bool ok = true;
    if (auto* sc = std::get_if<Scenario>(&any)) {
      out << "partitions: valid (" << sc->agents.size() << " agents, " << sc->num_states << " states)\n";
      UnionVerdict v;
      if (sc->num_states <= kExhaustiveLimit) {
        v = check_union_consistency(sc->mf, sc->num_states);
      } else {
        std::mt19937_64 rng(0);
        v = sample_union_consistency(sc->mf, sc->num_states, rng);
      }
      out << "stp: " << (v.holds ? "holds" : "fails") << " ("
          << (v.exhaustive ? "exhaustive" : "sampled") << ", " << v.pairs_checked << " pairs)";
      if (v.witness)
        out << "; witness " << event_text(*sc, v.witness->first) << " "
            << event_text(*sc, v.witness->second);
      out << "\n";
      ok = v.holds;
      ok = report_assumption3(sc->graph, sc->agents, out) && ok;
    } else {
      const auto& sym = std::get<SymbolicScenario>(any);
      for (std::size_t i = 0; i < sym.agents.size(); ++i)
        out << "partition " << sym.agents[i] << ": valid (checked window [1.."
            << pp_validate(sym.initial[i].spec()).window << "])\n";
      constexpr std::size_t kStand = 10;
      UnionVerdict v = check_union_consistency(MessageFunction::known_state(), kStand);
      out << "stp: " << (v.holds ? "holds" : "fails") << " (known_state, exhaustive on "
          << kStand << " states)\n";
      ok = v.holds;
      ok = report_assumption3(sym.graph, sym.agents, out) && ok;
    }
    return ok ? kExitOk : kExitCheckFailed;
  });
}

int cmd_run(const std::string& path, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    AnyScenario any = parse_scenario(path);
    if (auto* sc = std::get_if<Scenario>(&any)) return run_finite(*sc, opts, out);
    return run_symbolic(std::get<SymbolicScenario>(any), opts, out);
  });
}

int cmd_oracle(const std::string& path, const OracleOptions& opts, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    AnyScenario any = parse_scenario(path);
    auto* sc = std::get_if<SymbolicScenario>(&any);
    if (!sc) throw Error(ErrorCode::Kind, "the oracle applies to symbolic scenarios only");
    StageTamper tamper;
    if (opts.corrupt_stage) {
      const std::size_t target = *opts.corrupt_stage;
      tamper = [target](std::size_t stage, SymbolicProfile& p) {
        if (stage != target) return;
        const auto trivial = PeriodicPartition::trivial();
        p[0] = pp_equal(p[0], trivial) ? PeriodicPartition::discrete() : trivial;
      };
    }
    OracleReport r = truncation_oracle(*sc, opts.window, opts.stages, tamper);
    out << "oracle: agreement on [1.." << r.window << "] for stages 0.." << r.stages
        << " (truncation N=" << r.truncation << ", margin " << r.margin << ", "
        << r.comparisons << " comparisons)\n";
    return kExitOk;
  });
}

int cmd_export(const std::string& path, const std::string& dot_path, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    AnyScenario any = parse_scenario(path);
    std::string dot = std::visit([](const auto& sc) { return export_dot(sc.graph, sc.agents); }, any);
    if (dot_path.empty() || dot_path == "-") {
      out << dot;
      return kExitOk;
    }
    std::ofstream file(dot_path, std::ios::binary);
    if (!file || !(file << dot)) throw Error(ErrorCode::Io, "cannot write '" + dot_path + "'");
    return kExitOk;
  });
}

int cmd_suite(const std::string& name, const SuiteCommandOptions& opts, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    SuiteOptions sopts;
    if (opts.inject) {
      AnyScenario any = parse_scenario(*opts.inject);
      auto* sc = std::get_if<Scenario>(&any);
      if (!sc) throw Error(ErrorCode::Kind, "only finite scenarios can supply a message function");
      sopts.mf_override = sc->mf;
    }
    PropertyReport report = run_property_suite(name, opts.cases, opts.seed, sopts);
    const std::string lines = report_lines(report);
    if (opts.report_path) {
      std::ofstream file(*opts.report_path, std::ios::binary);
      if (!file || !(file << lines)) throw Error(ErrorCode::Io, "cannot write '" + *opts.report_path + "'");
    } else {
      out << lines;
    }
    err << report.suite << ": " << report.cases << " cases, " << report.failures.size() << " failures"
        << (report.expected_failure ? " (expected-failure fixture)" : "") << "\n";
    // With a non-STP function injected, failures are what the run should show.
    if (report.expected_failure) return report.passed() ? kExitCheckFailed : kExitOk;
    return report.passed() ? kExitOk : kExitCheckFailed;
  });
}

}  // namespace agree
