#include <gtest/gtest.h>

#include <random>

#include "agree/error.hpp"
#include "agree/message.hpp"

using namespace agree;

namespace {

Event ev(std::size_t n, std::vector<StateId> xs) { return Event::of(n, xs); }

// f({x}) = f({x,y}) = a, b elsewhere; states x, y, w, z.
MessageFunction remark_f() {
  return MessageFunction::lookup(4, {{0b0001, std::string("a")}, {0b0011, std::string("a")}},
                                 std::string("b"));
}

MessageFunction sec52_f() {
  return MessageFunction::lookup(
      2, {{0b01, std::string("a")}, {0b10, std::string("a")}, {0b11, std::string("b")}});
}

std::vector<Rational> uniform(std::size_t n) { return std::vector<Rational>(n, Rational(1)); }

}  // namespace

TEST(Message, KnownState) {
  auto f = MessageFunction::known_state();
  EXPECT_EQ(f.evaluate(ev(6, {4})), Message(std::string("state:4")));
  EXPECT_EQ(f.evaluate(ev(6, {3, 4})), Message(std::string("unknown")));
  auto labelled = MessageFunction::known_state({"x", "y"});
  EXPECT_EQ(labelled.evaluate(ev(2, {1})), Message(std::string("state:y")));
  EXPECT_THROW(f.evaluate(Event(3)), Error);
}

// Action 0 is safe; action d pays 1 exactly in state d (1-based).
TEST(Message, MaximinGuessing) {
  auto f = MessageFunction::maximin_guessing(8);
  EXPECT_EQ(f.evaluate(ev(8, {2, 3})), Message(std::int64_t{0}));
  EXPECT_EQ(f.evaluate(ev(8, {4})), Message(std::int64_t{5}));
}

TEST(Message, MaximinTiesAndMissingEntries) {
  auto tie = MessageFunction::maximin({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
  EXPECT_EQ(tie.evaluate(ev(2, {0, 1})), Message(std::int64_t{0}));
  auto ragged = MessageFunction::maximin({{Rational(1), Rational(0)}, {Rational(0)}});
  try {
    ragged.evaluate(ev(2, {0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UndefinedUtility);
  }
}

TEST(Message, Posterior) {
  auto f = MessageFunction::posterior(uniform(4), ev(4, {0, 1}));
  EXPECT_EQ(f.evaluate(ev(4, {0, 2})), Message(Rational(1, 2)));
  EXPECT_EQ(f.evaluate(ev(4, {0, 1})), Message(Rational(1)));
  auto skewed = MessageFunction::posterior({Rational(0), Rational(1), Rational(3)}, ev(3, {1}));
  EXPECT_EQ(skewed.evaluate(ev(3, {1, 2})), Message(Rational(1, 4)));
  try {
    skewed.evaluate(ev(3, {0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroMassBlock);
  }
}

TEST(Message, ExpectedValue) {
  auto f = MessageFunction::expected_value({Rational(1), Rational(2), Rational(6)});
  EXPECT_EQ(f.evaluate(ev(3, {0, 1, 2})), Message(Rational(3)));
  auto w = MessageFunction::expected_value({Rational(0), Rational(4)}, {Rational(1), Rational(3)});
  EXPECT_EQ(w.evaluate(ev(2, {0, 1})), Message(Rational(3)));
}

TEST(Message, MessageVectors) {
  auto ks = MessageFunction::known_state();
  auto v = message_vector(ks, Partition::from_blocks({{0}, {1, 2}}, 3));
  EXPECT_EQ(v, (std::vector<Message>{std::string("state:0"), std::string("unknown"),
                                     std::string("unknown")}));

  auto p2 = Partition::from_blocks({{0, 1}, {2, 3}}, 4);
  EXPECT_EQ(message_vector(remark_f(), p2),
            (std::vector<Message>{std::string("a"), std::string("a"), std::string("b"),
                                  std::string("b")}));
  auto constant = message_vector(remark_f(), Partition::trivial(4));
  for (const auto& m : constant) EXPECT_EQ(m, constant.front());
}

TEST(Message, WorkingPartitions) {
  auto p2 = Partition::from_blocks({{0, 1}, {2, 3}}, 4);
  EXPECT_EQ(working_partition(remark_f(), p2), p2);
  EXPECT_EQ(working_partition(remark_f(), Partition::discrete(4)),
            Partition::from_blocks({{0}, {1, 2, 3}}, 4));
  EXPECT_EQ(working_partition(sec52_f(), Partition::discrete(2)), Partition::trivial(2));
}

TEST(Message, UnionConsistency) {
  EXPECT_TRUE(check_union_consistency(MessageFunction::known_state(), 6).holds);
  auto bad = check_union_consistency(sec52_f(), 2);
  EXPECT_FALSE(bad.holds);
  ASSERT_TRUE(bad.witness.has_value());
  std::vector<Event> pair{bad.witness->first, bad.witness->second};
  EXPECT_TRUE((pair[0] == ev(2, {0}) && pair[1] == ev(2, {1})) ||
              (pair[0] == ev(2, {1}) && pair[1] == ev(2, {0})));
  EXPECT_TRUE(
      check_union_consistency(MessageFunction::posterior(uniform(4), ev(4, {0, 1})), 4).holds);
  try {
    check_union_consistency(MessageFunction::known_state(), 13);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeLimitExceeded);
  }
  std::mt19937_64 rng(3);
  auto sampled = sample_union_consistency(MessageFunction::known_state(), 20, rng, 2000);
  EXPECT_TRUE(sampled.holds);
  EXPECT_FALSE(sampled.exhaustive);
}

TEST(MessageProperty, BuiltinFamiliesAreUnionConsistent) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<Rational> prior, pay;
    Event target(n);
    for (std::size_t k = 0; k < n; ++k) {
      prior.emplace_back(1 + rng() % 4, 1 + rng() % 3);
      pay.emplace_back(static_cast<long>(rng() % 7) - 3);
      if (rng() % 2) target.insert(k);
    }
    EXPECT_TRUE(check_union_consistency(MessageFunction::known_state(), n).holds) << n;
    EXPECT_TRUE(check_union_consistency(MessageFunction::injective(), n).holds) << n;
    EXPECT_TRUE(check_union_consistency(MessageFunction::posterior(prior, target), n).holds) << n;
    EXPECT_TRUE(check_union_consistency(MessageFunction::expected_value(pay), n).holds) << n;
    EXPECT_TRUE(check_union_consistency(MessageFunction::maximin_guessing(n), n).holds) << n;
  }
}

TEST(MessageProperty, WorkingPartitionIsCoarsening) {
  std::mt19937_64 rng(9);
  std::vector<MessageFunction> fs{MessageFunction::known_state(), MessageFunction::injective(),
                                  MessageFunction::posterior(uniform(6), ev(6, {0, 3})),
                                  MessageFunction::maximin_guessing(6)};
  for (int round = 0; round < 200; ++round) {
    std::vector<std::size_t> labels(6);
    for (std::size_t i = 0; i < 6; ++i) labels[i] = rng() % (i + 1);
    Partition p(labels);
    for (const auto& f : fs) {
      EXPECT_TRUE(is_coarser(working_partition(f, p), p));
      EXPECT_EQ(message_vector(f, p), message_vector(f, Partition(labels)));
    }
    EXPECT_EQ(working_partition(MessageFunction::injective(), p), p);
  }
}
