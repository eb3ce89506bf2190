#pragma once

// Directed communication graphs. An edge (i, j) means i sends to j in every
// round.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace agree {

using AgentId = std::size_t;
using Edge = std::pair<AgentId, AgentId>;

class CommGraph {
 public:
  CommGraph() = default;
  // Rejects self-loops, out-of-range endpoints and repeated edges.
  CommGraph(std::size_t num_agents, std::vector<Edge> edges);

  static CommGraph complete(std::size_t num_agents);

  std::size_t num_agents() const { return m_num_agents; }
  const std::vector<Edge>& edges() const { return m_edges; }
  bool has_edge(AgentId from, AgentId to) const;

  bool operator==(const CommGraph&) const = default;

 private:
  std::size_t m_num_agents = 0;
  std::vector<Edge> m_edges;  // input order
};

// S(i): agents that send to i, ascending.
std::vector<AgentId> senders(const CommGraph& g, AgentId i);

// Edges present in both directions.
CommGraph symmetric_core(const CommGraph& g);

struct Assumption3Verdict {
  bool holds = false;
  // The symmetric core; a symmetric, strongly connected spanning subgraph
  // when `holds`.
  CommGraph witness;
  std::string reason;
};

// G has a symmetric strongly connected spanning subgraph iff its symmetric
// core connects every agent.
Assumption3Verdict satisfies_assumption3(const CommGraph& g);

// Every agent reaches every other along directed edges.
bool is_strongly_connected(const CommGraph& g);

std::string export_dot(const CommGraph& g, const std::vector<std::string>& labels);

}  // namespace agree
