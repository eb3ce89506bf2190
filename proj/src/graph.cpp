#include "agree/graph.hpp"

#include <algorithm>
#include <set>

#include "agree/error.hpp"

namespace agree {

namespace {

std::vector<bool> reachable_from(const CommGraph& g, AgentId start) {
  std::vector<bool> seen(g.num_agents(), false);
  std::vector<AgentId> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const AgentId at = stack.back();
    stack.pop_back();
    for (const auto& [from, to] : g.edges()) {
      if (from == at && !seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  return seen;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

CommGraph::CommGraph(std::size_t num_agents, std::vector<Edge> edges)
    : m_num_agents(num_agents), m_edges(std::move(edges)) {
  std::set<Edge> seen;
  for (const auto& [from, to] : m_edges) {
    if (from >= num_agents || to >= num_agents) {
      throw Error(ErrorCode::Index, "edge (" + std::to_string(from) + ", " +
                                        std::to_string(to) + ") outside " +
                                        std::to_string(num_agents) + " agents");
    }
    if (from == to) {
      throw Error(ErrorCode::SelfLoop, "self-loop on agent " + std::to_string(from));
    }
    if (!seen.insert({from, to}).second) {
      throw Error(ErrorCode::DuplicateEdge, "edge (" + std::to_string(from) + ", " +
                                                std::to_string(to) + ") repeated");
    }
  }
}

CommGraph CommGraph::complete(std::size_t num_agents) {
  std::vector<Edge> edges;
  for (AgentId i = 0; i < num_agents; ++i) {
    for (AgentId j = 0; j < num_agents; ++j) {
      if (i != j) edges.emplace_back(i, j);
    }
  }
  return CommGraph(num_agents, std::move(edges));
}

bool CommGraph::has_edge(AgentId from, AgentId to) const {
  return std::find(m_edges.begin(), m_edges.end(), Edge{from, to}) != m_edges.end();
}

std::vector<AgentId> senders(const CommGraph& g, AgentId i) {
  if (i >= g.num_agents()) {
    throw Error(ErrorCode::Index, "agent " + std::to_string(i) + " out of range");
  }
  std::vector<AgentId> out;
  for (const auto& [from, to] : g.edges()) {
    if (to == i) out.push_back(from);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CommGraph symmetric_core(const CommGraph& g) {
  std::vector<Edge> kept;
  for (const auto& [from, to] : g.edges()) {
    if (g.has_edge(to, from)) kept.emplace_back(from, to);
  }
  return CommGraph(g.num_agents(), std::move(kept));
}

bool is_strongly_connected(const CommGraph& g) {
  if (g.num_agents() == 0) return true;
  // Forward reachability from 0 on G and on G reversed.
  std::vector<Edge> reversed;
  for (const auto& [from, to] : g.edges()) reversed.emplace_back(to, from);
  const auto fwd = reachable_from(g, 0);
  const auto bwd = reachable_from(CommGraph(g.num_agents(), std::move(reversed)), 0);
  return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
         std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

Assumption3Verdict satisfies_assumption3(const CommGraph& g) {
  Assumption3Verdict verdict;
  verdict.witness = symmetric_core(g);
  if (g.num_agents() < 2) {
    verdict.reason = "fewer than two agents";
    return verdict;
  }
  // The core is symmetric, so reachability from agent 0 is connectivity.
  const auto seen = reachable_from(verdict.witness, 0);
  const auto missing = std::find(seen.begin(), seen.end(), false);
  if (missing != seen.end()) {
    verdict.reason = "agent " + std::to_string(missing - seen.begin()) +
                     " is not reciprocally connected to agent 0";
    return verdict;
  }
  verdict.holds = true;
  return verdict;
}

std::string export_dot(const CommGraph& g, const std::vector<std::string>& labels) {
  if (labels.size() != g.num_agents()) {
    throw Error(ErrorCode::LabelMismatch, std::to_string(labels.size()) +
                                              " labels for " +
                                              std::to_string(g.num_agents()) +
                                              " agents");
  }
  std::string out = "digraph G {\n";
  for (const auto& label : labels) out += "  " + quoted(label) + ";\n";
  for (const auto& [from, to] : g.edges()) {
    out += "  " + quoted(labels[from]) + " -> " + quoted(labels[to]) + ";\n";
  }
  return out + "}\n";
}

}  // namespace agree
