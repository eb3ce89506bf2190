#include <gtest/gtest.h>

#include <variant>

#include "agree/error.hpp"
#include "agree/scenario_io.hpp"
#include "agree/symbolic.hpp"

using namespace agree;

namespace {

SymbolicScenario example() {
  return std::get<SymbolicScenario>(parse_scenario("example_sec2"));
}

PeriodicPartition pp(PeriodicSpec s) { return PeriodicPartition(std::move(s)); }

// Singletons except {3, 4}.
PeriodicPartition all_but_34() { return pp({1, {{1}, {2}, {3, 4}}, {{5}}, {}}); }

void expect_profile(const SymbolicProfile& got, const SymbolicProfile& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    EXPECT_TRUE(pp_equal(got[i], want[i])) << i << ": " << to_string(got[i]);
}

std::vector<SymbolicProfile> history(const SymbolicScenario& sc, std::size_t len) {
  std::vector<SymbolicProfile> h{sc.initial};
  while (h.size() < len) h.push_back(symbolic_apply_g(h.back(), sc.graph));
  return h;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::None;
}

}  // namespace

TEST(Symbolic, FirstTwoStages) {
  auto sc = example();
  auto s1 = symbolic_apply_g(sc.initial, sc.graph);
  expect_profile(s1, {sc.initial[0], pp({4, {{1, 2}, {3, 4}, {5}, {6}}, {{7, 8}, {9, 10}}, {}}),
                      sc.initial[2]});
  auto s2 = symbolic_apply_g(s1, sc.graph);
  expect_profile(s2, {pp({4, {{1, 2, 7}, {3, 4}, {5}, {6}, {9}}, {{8, 11}, {10, 13}}, {}}),
                      s1[1],
                      pp({4, {{5}, {6}}, {}, {{{1}, {9}}, {{2}, {10}}, {{}, {3}}, {{}, {4}}}})});
}

TEST(Symbolic, IdenticalProfileUnchanged) {
  auto a = example().initial[0];
  SymbolicProfile same{a, a, a};
  expect_profile(symbolic_apply_g(same, CommGraph::complete(3)), same);
}

TEST(Symbolic, Certificate) {
  auto sc = example();
  auto h = history(sc, 7);
  std::vector<SymbolicProfile> tail(h.begin() + 1, h.end());
  auto cert = detect_shift_certificate(tail);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->p, 2u);
  EXPECT_EQ(cert->s, 4u);

  auto a = sc.initial[0];
  std::vector<SymbolicProfile> still(4, SymbolicProfile{a, a, a});
  EXPECT_FALSE(detect_shift_certificate(still).has_value());
  EXPECT_EQ(code_of([&] { detect_shift_certificate({h[0], h[1]}); }), ErrorCode::Malformed);
}

TEST(Symbolic, FirstLimit) {
  auto sc = example();
  auto h = history(sc, 8);
  auto cert = detect_shift_certificate(h);
  ASSERT_TRUE(cert.has_value());
  auto limit = limit_profile(h, *cert, sc.graph);
  expect_profile(limit, {pp({4, {{1, 2, 7}, {3, 4}}, {{5}, {6}, {8, 11}}, {}}),
                         pp({4, {{1, 2}}, {{3, 4}, {5}, {6}}, {}}),
                         pp({4, {}, {{1}, {2}}, {{{}, {3}}, {{}, {4}}}})});
}

TEST(Symbolic, Transfinite) {
  auto trace = run_transfinite(example());
  const auto& last = trace.final_stage();
  EXPECT_EQ(last.ordinal, (Ordinal{2, 2}));
  EXPECT_TRUE(last.flags.consensus);
  EXPECT_TRUE(last.flags.fixed_point);
  for (const auto& p : last.profile) EXPECT_TRUE(pp_equal(p, PeriodicPartition::discrete()));
  EXPECT_EQ(last.messages, (std::vector<std::string>(3, "state:4")));

  const SymbolicStage* omega = nullptr;
  const SymbolicStage* omega2 = nullptr;
  for (const auto& s : trace.stages) {
    if (s.ordinal == Ordinal{1, 0}) omega = &s;
    if (s.ordinal == Ordinal{2, 0}) omega2 = &s;
  }
  ASSERT_TRUE(omega && omega2);
  EXPECT_EQ(omega->kind, StageKind::Limit);
  ASSERT_TRUE(omega->certificate.has_value());
  expect_profile(omega->profile, {pp({4, {{1, 2, 7}, {3, 4}}, {{5}, {6}, {8, 11}}, {}}),
                                  pp({4, {{1, 2}}, {{3, 4}, {5}, {6}}, {}}),
                                  pp({4, {}, {{1}, {2}}, {{{}, {3}}, {{}, {4}}}})});
  expect_profile(omega2->profile, {all_but_34(), all_but_34(), PeriodicPartition::discrete()});
  EXPECT_FALSE(omega2->flags.consensus);
  EXPECT_EQ(omega2->flags.partial_consensus, std::optional<bool>(false));

  // everyone says "unknown" at the true state before w*2
  for (const auto& s : trace.stages) {
    if (s.ordinal >= Ordinal{2, 0}) break;
    EXPECT_EQ(s.messages, (std::vector<std::string>(3, "unknown")));
    EXPECT_EQ(s.flags.partial_consensus, std::optional<bool>(true));
  }
}

TEST(Symbolic, OrdinalBudget) {
  TransfiniteOptions opts;
  opts.budget = Ordinal{1, 0};
  EXPECT_EQ(code_of([&] { run_transfinite(example(), opts); }), ErrorCode::OrdinalBudgetExceeded);
}

TEST(Symbolic, FixedPointAtStart) {
  auto sc = example();
  sc.initial = {sc.initial[1], sc.initial[1], sc.initial[1]};
  auto trace = run_transfinite(sc);
  EXPECT_EQ(trace.stages.size(), 1u);
  EXPECT_EQ(trace.final_stage().ordinal, Ordinal{});
  EXPECT_TRUE(trace.final_stage().flags.consensus);
}

TEST(Symbolic, MessagesAndCommonKnowledge) {
  auto sc = example();
  EXPECT_EQ(symbolic_message(sc.initial[0], 5), "state:5");
  EXPECT_EQ(symbolic_message(sc.initial[0], 4), "unknown");
  EXPECT_EQ(symbolic_ck_message_profile(sc.initial, 4), std::optional<bool>(false));
  SymbolicProfile done(3, PeriodicPartition::discrete());
  EXPECT_EQ(symbolic_ck_message_profile(done, 4), std::optional<bool>(true));
}

TEST(Symbolic, TruncationOracle) {
  auto sc = example();
  auto r20 = truncation_oracle(sc, 20, 8);
  EXPECT_EQ(r20.stages, 8u);
  EXPECT_EQ(r20.truncation, r20.window + r20.margin * r20.stages);
  EXPECT_EQ(r20.comparisons, 9u * 3u * 20u);
  EXPECT_NO_THROW(truncation_oracle(sc, 40, 8));

  auto tamper = [](std::size_t stage, SymbolicProfile& p) {
    if (stage == 3) p[0] = PeriodicPartition::discrete();
  };
  EXPECT_EQ(code_of([&] { truncation_oracle(sc, 20, 8, tamper); }), ErrorCode::Mismatch);
}

TEST(Ordinal, FormatAndParse) {
  EXPECT_EQ(to_string(Ordinal{0, 3}), "3");
  EXPECT_EQ(to_string(Ordinal{1, 0}), "w*1");
  EXPECT_EQ(to_string(Ordinal{2, 2}), "w*2+2");
  EXPECT_EQ(parse_ordinal("w"), (Ordinal{1, 0}));
  EXPECT_EQ(parse_ordinal("w+3"), (Ordinal{1, 3}));
  EXPECT_EQ(parse_ordinal("w*2+2"), (Ordinal{2, 2}));
  EXPECT_FALSE(parse_ordinal("w*").has_value());
  EXPECT_LT((Ordinal{1, 0}), (Ordinal{1, 1}));
  EXPECT_LT((Ordinal{0, 100}), (Ordinal{1, 0}));
}
