#pragma once

// Partitions of a finite state set {0, ..., N-1}, ordered by refinement.
//
// A partition P is "coarser" than Q (P <= Q) when every block of P is a union
// of blocks of Q. Join is the coarsest common refinement, meet the finest
// common coarsening. The all-in-one partition is the bottom, the singleton
// partition is the top.

#include <cstddef>
#include <span>
#include <vector>

namespace agree {

using StateId = std::size_t;

// A subset of the state set, stored as a membership mask.
class Event {
 public:
  Event() = default;
  explicit Event(std::size_t num_states) : m_mask(num_states, false) {}

  static Event full(std::size_t num_states);
  static Event of(std::size_t num_states, std::span<const StateId> members);

  std::size_t num_states() const { return m_mask.size(); }
  bool contains(StateId x) const { return x < m_mask.size() && m_mask[x]; }
  void insert(StateId x);
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool is_subset_of(const Event& other) const;
  std::vector<StateId> members() const;

  bool operator==(const Event&) const = default;

 private:
  std::vector<bool> m_mask;
};

class Partition {
 public:
  Partition() = default;

  // Canonicalizes an arbitrary labelling: states with equal labels share a
  // block. Labels are renumbered by first occurrence.
  explicit Partition(std::span<const std::size_t> labels);

  // Throws Overlap or Coverage when `blocks` is not a partition of [0, n).
  static Partition from_blocks(const std::vector<std::vector<StateId>>& blocks,
                               std::size_t num_states);
  static Partition trivial(std::size_t num_states);
  static Partition discrete(std::size_t num_states);

  std::size_t num_states() const { return m_block_id.size(); }
  std::size_t num_blocks() const { return m_num_blocks; }
  std::size_t block_id(StateId x) const;
  std::span<const std::size_t> block_ids() const { return m_block_id; }

  Event block_of(StateId x) const;
  // Blocks in canonical order, each sorted ascending.
  std::vector<std::vector<StateId>> blocks() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::size_t> m_block_id;
  std::size_t m_num_blocks = 0;
};

using Profile = std::vector<Partition>;

// P <= Q in the refinement order.
bool is_coarser(const Partition& p, const Partition& q);
// P < Q: coarser and distinct.
bool is_strictly_coarser(const Partition& p, const Partition& q);
Partition join(const Partition& p, const Partition& q);
Partition meet(const Partition& p, const Partition& q);
Partition join_all(std::span<const Partition> family);
Partition meet_all(std::span<const Partition> family);

// Product order on profiles.
bool profile_leq(std::span<const Partition> lhs, std::span<const Partition> rhs);

// True iff the block of the meet of all partitions containing x lies in e.
bool is_common_knowledge(std::span<const Partition> profile, const Event& e,
                         StateId x);

// The trace of p on the first `prefix` states.
Partition restrict_prefix(const Partition& p, std::size_t prefix);

}  // namespace agree
