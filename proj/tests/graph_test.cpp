#include <gtest/gtest.h>

#include <random>

#include "agree/error.hpp"
#include "agree/graph.hpp"

using namespace agree;

namespace {

// A=0, B=1, C=2
CommGraph example_graph() { return CommGraph(3, {{1, 0}, {1, 2}, {0, 1}, {2, 1}}); }

// Tries every symmetric edge subset for a strongly connected spanning one.
bool assumption3_brute(const CommGraph& g) {
  std::vector<Edge> pairs;
  for (const auto& [i, j] : g.edges())
    if (i < j && g.has_edge(j, i)) pairs.push_back({i, j});
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
    std::vector<Edge> es;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1) {
        es.push_back(pairs[k]);
        es.push_back({pairs[k].second, pairs[k].first});
      }
    if (is_strongly_connected(CommGraph(g.num_agents(), es))) return true;
  }
  return false;
}

}  // namespace

TEST(Graph, Senders) {
  EXPECT_EQ(senders(example_graph(), 1), (std::vector<AgentId>{0, 2}));
  EXPECT_TRUE(senders(CommGraph(3, {}), 1).empty());
  EXPECT_EQ(senders(CommGraph::complete(3), 0), (std::vector<AgentId>{1, 2}));
}

TEST(Graph, RejectsBadEdges) {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::None;
  };
  EXPECT_EQ(code([] { CommGraph(2, {{0, 0}}); }), ErrorCode::SelfLoop);
  EXPECT_EQ(code([] { CommGraph(2, {{0, 1}, {0, 1}}); }), ErrorCode::DuplicateEdge);
  EXPECT_EQ(code([] { CommGraph(2, {{0, 2}}); }), ErrorCode::Index);
  EXPECT_EQ(code([] { senders(CommGraph(2, {}), 5); }), ErrorCode::Index);
}

TEST(Graph, SymmetricCore) {
  EXPECT_EQ(symmetric_core(CommGraph(3, {{0, 1}, {1, 0}, {0, 2}})).edges(),
            (std::vector<Edge>{{0, 1}, {1, 0}}));
  EXPECT_EQ(symmetric_core(example_graph()), example_graph());
  EXPECT_TRUE(symmetric_core(CommGraph(3, {{0, 1}, {1, 2}, {2, 0}})).edges().empty());
}

TEST(Graph, Assumption3) {
  auto v = satisfies_assumption3(example_graph());
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(is_strongly_connected(v.witness));
  EXPECT_FALSE(satisfies_assumption3(CommGraph(3, {{0, 1}, {1, 2}, {2, 0}})).holds);
  auto chain = satisfies_assumption3(CommGraph(3, {{0, 1}, {1, 0}, {1, 2}}));
  EXPECT_FALSE(chain.holds);
  EXPECT_FALSE(chain.reason.empty());
}

TEST(Graph, Dot) {
  auto dot = export_dot(example_graph(), {"A", "B", "C"});
  EXPECT_EQ(dot, export_dot(example_graph(), {"A", "B", "C"}));
  std::size_t arrows = 0;
  for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 1))
    ++arrows;
  EXPECT_EQ(arrows, 4u);
  EXPECT_LT(dot.find("\"B\" -> \"A\""), dot.find("\"C\" -> \"B\""));

  auto empty = export_dot(CommGraph(2, {}), {"1", "2"});
  EXPECT_EQ(empty.find("->"), std::string::npos);
  EXPECT_NE(empty.find("\"2\""), std::string::npos);

  auto full = export_dot(CommGraph::complete(3), {"a", "b", "c"});
  arrows = 0;
  for (std::size_t pos = full.find("->"); pos != std::string::npos; pos = full.find("->", pos + 1))
    ++arrows;
  EXPECT_EQ(arrows, 6u);

  EXPECT_THROW(export_dot(example_graph(), {"A"}), Error);
}

TEST(GraphProperty, Assumption3AgainstSubgraphSearch) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<Edge> es;
    for (AgentId i = 0; i < n; ++i)
      for (AgentId j = 0; j < n; ++j)
        if (i != j && rng() % 2) es.push_back({i, j});
    CommGraph g(n, es);
    auto v = satisfies_assumption3(g);
    EXPECT_EQ(v.holds, assumption3_brute(g));
    if (v.holds) {
      EXPECT_TRUE(is_strongly_connected(v.witness));
      for (const auto& [i, j] : v.witness.edges()) EXPECT_TRUE(v.witness.has_edge(j, i));
    }
    auto core = symmetric_core(g);
    EXPECT_EQ(symmetric_core(core), core);

    // adding an edge never breaks the assumption
    for (AgentId i = 0; i < n; ++i)
      for (AgentId j = 0; j < n; ++j)
        if (i != j && !g.has_edge(i, j)) {
          auto more = es;
          more.push_back({i, j});
          if (v.holds) EXPECT_TRUE(satisfies_assumption3(CommGraph(n, more)).holds);
        }
  }
}
