#include <gtest/gtest.h>

#include "agree/error.hpp"
#include "agree/harness.hpp"
#include "agree/periodic.hpp"

using namespace agree;

namespace {

PeriodicPartition g0_a() {
  return PeriodicPartition({4, {{1, 2, 7}, {3, 4}, {5}}, {{6, 9}, {8, 11}}, {}});
}
PeriodicPartition g0_b() { return PeriodicPartition({4, {}, {{1, 2}, {3, 4}}, {}}); }
PeriodicPartition g0_c() {
  return PeriodicPartition({4, {}, {}, {{{}, {1}}, {{}, {2}}, {{}, {3}}, {{}, {4}}}});
}

Partition blocks(std::vector<std::vector<StateId>> b, std::size_t n) {
  for (auto& block : b)
    for (auto& x : block) --x;
  return Partition::from_blocks(b, n);
}

// Every state except the listed pairs is a singleton.
Partition singletons_except(std::size_t n, std::vector<std::pair<Nat, Nat>> pairs) {
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i;
  for (auto [x, y] : pairs) labels[y - 1] = x - 1;
  return Partition(labels);
}

ErrorCode validate_code(const PeriodicSpec& s) {
  try {
    pp_validate(s);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::None;
}

}  // namespace

TEST(Periodic, Validate) {
  EXPECT_EQ(validate_code(g0_a().spec()), ErrorCode::None);
  EXPECT_GE(pp_validate(g0_a().spec()).window, 2 * (11 + 4u));
  EXPECT_EQ(validate_code({4, {}, {}, {{{}, {1}}, {{}, {1}}}}), ErrorCode::Overlap);
  EXPECT_EQ(validate_code({4, {}, {}, {{{}, {1}}, {{}, {2}}, {{}, {3}}}}), ErrorCode::Residue);
  EXPECT_EQ(validate_code({1, {}, {{2}}, {}}), ErrorCode::Coverage);
  EXPECT_THROW(PeriodicPartition({4, {}, {{1, 2}}, {}}), Error);
}

TEST(Periodic, BlockOf) {
  EXPECT_EQ(pp_block_of(g0_a(), 14), (BlockSet{{14, 17}, 0, {}}));
  EXPECT_EQ(pp_block_of(g0_c(), 8), (BlockSet{{}, 4, {4}}));
  EXPECT_EQ(pp_block_of(g0_b(), 1), (BlockSet{{1, 2}, 0, {}}));
  EXPECT_TRUE(g0_a().same_block(1, 7));
  EXPECT_FALSE(g0_a().same_block(6, 10));
}

TEST(Periodic, Restrict) {
  EXPECT_EQ(pp_restrict(g0_a(), 12),
            blocks({{1, 2, 7}, {3, 4}, {5}, {6, 9}, {8, 11}, {10}, {12}}, 12));
  EXPECT_EQ(pp_restrict(g0_c(), 8), blocks({{1, 5}, {2, 6}, {3, 7}, {4, 8}}, 8));
  EXPECT_EQ(pp_restrict(g0_b(), 1), Partition::discrete(1));
}

TEST(Periodic, Equality) {
  PeriodicPartition b8({8, {}, {{1, 2}, {3, 4}, {5, 6}, {7, 8}}, {}});
  EXPECT_TRUE(pp_equal(g0_b(), b8));
  EXPECT_FALSE(g0_b() == b8);
  EXPECT_FALSE(pp_equal(g0_b(), g0_c()));
  EXPECT_TRUE(pp_equal(g0_a(), g0_a()));
  EXPECT_TRUE(pp_equal(PeriodicPartition::discrete(), PeriodicPartition({3, {}, {{1}, {2}, {3}}, {}})));
}

TEST(Periodic, Join) {
  EXPECT_TRUE(pp_equal(pp_join(g0_b(), g0_c()), PeriodicPartition::discrete()));
  EXPECT_TRUE(pp_equal(pp_join(g0_a(), g0_a()), g0_a()));
  auto ab = pp_join(g0_a(), g0_b());
  EXPECT_EQ(pp_restrict(ab, 64), singletons_except(64, {{1, 2}, {3, 4}}));
  EXPECT_TRUE(pp_is_coarser(g0_a(), ab));
  EXPECT_FALSE(pp_is_coarser(ab, g0_a()));
}

TEST(Periodic, WorkingPartition) {
  EXPECT_TRUE(pp_equal(pp_working_partition_known_state(g0_c()), PeriodicPartition::trivial()));
  PeriodicPartition late({1, {{1}, {2}, {3, 4}}, {{5}}, {}});
  EXPECT_TRUE(pp_equal(pp_working_partition_known_state(late), late));
  EXPECT_TRUE(pp_equal(pp_working_partition_known_state(PeriodicPartition::discrete()),
                       PeriodicPartition::discrete()));
  // {5} stays; everything else becomes one block
  auto wa = pp_working_partition_known_state(g0_a());
  EXPECT_TRUE(wa.block_of(5).is_singleton());
  EXPECT_TRUE(wa.same_block(1, 1000));
}

TEST(Periodic, Canonical) {
  PeriodicPartition b8({8, {}, {{1, 2}, {3, 4}, {5, 6}, {7, 8}}, {}});
  auto c = pp_canonical(b8);
  EXPECT_EQ(c.modulus(), 2u);
  EXPECT_EQ(to_string(c), "m=2 {1, 2}+2k");
  EXPECT_TRUE(pp_equal(c, g0_b()));
  EXPECT_EQ(pp_canonical(c), c);
  EXPECT_EQ(pp_canonical(g0_b()), c);
  auto ca = pp_canonical(g0_a());
  EXPECT_EQ(ca.modulus(), 2u);
  EXPECT_TRUE(pp_equal(ca, g0_a()));
  EXPECT_EQ(pp_canonical(ca), ca);
}

TEST(PeriodicProperty, OperationsCommuteWithTruncation) {
  Rng rng(31);
  for (int round = 0; round < 200; ++round) {
    auto p = gen_periodic_partition(rng);
    auto q = gen_periodic_partition(rng);
    const Nat n = 48;
    auto pj = pp_join(p, q);
    EXPECT_EQ(pp_restrict(pj, n), join(pp_restrict(p, n), pp_restrict(q, n)));
    EXPECT_EQ(pp_is_coarser(p, q), is_coarser(pp_restrict(p, 200), pp_restrict(q, 200)));
    EXPECT_TRUE(pp_equal(pp_canonical(p), p));
    EXPECT_EQ(pp_canonical(pp_canonical(p)), pp_canonical(p));
    EXPECT_EQ(pp_equal(p, q), pp_restrict(p, 200) == pp_restrict(q, 200));

    // a block is kept exactly when it is a singleton
    auto w = pp_working_partition_known_state(p);
    for (Nat x = 1; x <= n; ++x)
      EXPECT_EQ(w.block_of(x).is_singleton(), p.block_of(x).is_singleton()) << x;
  }
}
