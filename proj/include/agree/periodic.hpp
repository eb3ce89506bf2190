#pragma once

// Eventually periodic partitions of the positive integers.
//
// A partition is described by a modulus m and three kinds of component:
//   exceptional blocks    explicit finite blocks;
//   template families     a finite offset set O generating the blocks
//                         O + m*k for every k >= 0;
//   infinite blocks       a finite part F together with progression starts s,
//                         forming the single block F u {s + m*k : k >= 0}.
// Every construction validates disjointness and coverage of {1, 2, ...}.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "agree/lattice.hpp"

namespace agree {

using Nat = std::uint64_t;

// A subset of the positive integers: finite u {s + step*k : s in starts, k >= 0}.
struct BlockSet {
  std::vector<Nat> finite;  // sorted, distinct
  Nat step = 0;             // 0 when there are no progressions
  std::vector<Nat> starts;  // sorted, distinct

  static BlockSet singleton(Nat x) { return {{x}, 0, {}}; }

  bool is_finite() const { return starts.empty(); }
  bool is_singleton() const { return is_finite() && finite.size() == 1; }
  bool contains(Nat x) const;
  Nat min() const;
  // Largest explicit constant (element or start).
  Nat threshold() const;
  std::vector<Nat> elements_upto(Nat bound) const;

  // Extensional equality.
  friend bool operator==(const BlockSet& a, const BlockSet& b);
};

BlockSet intersect(const BlockSet& a, const BlockSet& b);
BlockSet translate(const BlockSet& a, Nat shift);  // finite sets only
std::string to_string(const BlockSet& b);

struct InfiniteBlockSpec {
  std::vector<Nat> finite_part;
  std::vector<Nat> starts;  // progressions start + modulus*k

  bool operator==(const InfiniteBlockSpec&) const = default;
};

// The serialisable description. Not necessarily valid.
struct PeriodicSpec {
  Nat modulus = 1;
  std::vector<std::vector<Nat>> exceptional;
  std::vector<std::vector<Nat>> templates;
  std::vector<InfiniteBlockSpec> infinite;

  bool operator==(const PeriodicSpec&) const = default;
};

struct ValidationCertificate {
  Nat window = 0;  // states 1..window were checked explicitly
};

// Window check of every state in [1, 2*(H+m)] (H = largest constant) and
// per-residue accounting beyond H. Throws Overlap, Residue, Coverage or
// Malformed.
ValidationCertificate pp_validate(const PeriodicSpec& spec);

class PeriodicPartition {
 public:
  // Validates and sorts components by least element; the representation is
  // otherwise kept as given.
  explicit PeriodicPartition(PeriodicSpec spec);

  static PeriodicPartition discrete();  // all singletons
  static PeriodicPartition trivial();   // one block

  const PeriodicSpec& spec() const { return m_spec; }
  Nat modulus() const { return m_spec.modulus; }
  Nat largest_constant() const { return m_largest; }
  // Least t such that for every x > t the block of x + m is the block of x
  // shifted by m (finite) or the same block (infinite).
  Nat periodic_threshold() const { return m_threshold; }
  Nat max_finite_diameter() const { return m_diameter; }

  BlockSet block_of(Nat x) const;
  bool same_block(Nat x, Nat y) const;

  // Representation equality; pp_equal compares extensionally.
  bool operator==(const PeriodicPartition& o) const { return m_spec == o.m_spec; }

 private:
  enum class Kind : std::uint8_t { Exceptional, Template, Infinite };
  struct Owner {
    Kind kind;
    std::size_t id;
    Nat instance;  // template instance k, or the offset for residue entries
    bool operator==(const Owner&) const = default;
  };

  Owner owner(Nat x) const;
  BlockSet block_of_owner(const Owner& o) const;
  bool shift_periodic_at(Nat x, Nat d) const;
  Nat compute_threshold() const;

  PeriodicSpec m_spec;
  Nat m_largest = 0;
  Nat m_diameter = 0;
  Nat m_threshold = 0;
  std::vector<Owner> m_low;      // states 1..m_largest, index x-1
  std::vector<Owner> m_residue;  // states beyond m_largest, by x mod m

  friend PeriodicPartition pp_canonical(const PeriodicPartition& pp);
};

BlockSet pp_block_of(const PeriodicPartition& pp, Nat x);

// Blocks intersected with [1, n]; state x becomes index x-1.
Partition pp_restrict(const PeriodicPartition& pp, Nat n);

// Extensional equality by comparison on
// [1, max(H1, H2) + span + 2*lcm(m1, m2)].
bool pp_equal(const PeriodicPartition& a, const PeriodicPartition& b);

PeriodicPartition pp_join(const PeriodicPartition& a, const PeriodicPartition& b);

// a <= b in the refinement order.
bool pp_is_coarser(const PeriodicPartition& a, const PeriodicPartition& b);

// Working partition under the known-state message: singleton blocks stay,
// all other blocks merge into a single "unknown" block.
PeriodicPartition pp_working_partition_known_state(const PeriodicPartition& pp);

// The unique representation with the smallest modulus and the smallest
// periodic threshold.
PeriodicPartition pp_canonical(const PeriodicPartition& pp);

// Builds a partition from a block oracle that is exactly periodic with
// period `modulus` beyond `threshold`. Only states up to threshold+modulus
// are queried.
PeriodicPartition synthesize(Nat threshold, Nat modulus,
                             const std::function<BlockSet(Nat)>& block_fn);

std::string to_string(const PeriodicPartition& pp);

}  // namespace agree
