#include "agree/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "agree/error.hpp"

namespace agree {

namespace {

void require_same_size(const Partition& p, const Partition& q) {
  if (p.num_states() != q.num_states()) {
    throw Error(ErrorCode::SizeMismatch,
                "partitions over " + std::to_string(p.num_states()) + " and " +
                    std::to_string(q.num_states()) + " states");
  }
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : m_parent(n) {
    std::iota(m_parent.begin(), m_parent.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (m_parent[x] != x) {
      m_parent[x] = m_parent[m_parent[x]];
      x = m_parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) m_parent[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> m_parent;
};

}  // namespace

Event Event::full(std::size_t num_states) {
  Event e(num_states);
  e.m_mask.assign(num_states, true);
  return e;
}

Event Event::of(std::size_t num_states, std::span<const StateId> members) {
  Event e(num_states);
  for (StateId x : members) e.insert(x);
  return e;
}

void Event::insert(StateId x) {
  if (x >= m_mask.size()) {
    throw Error(ErrorCode::Index, "state " + std::to_string(x) +
                                      " outside event of size " +
                                      std::to_string(m_mask.size()));
  }
  m_mask[x] = true;
}

std::size_t Event::count() const {
  return static_cast<std::size_t>(std::count(m_mask.begin(), m_mask.end(), true));
}

bool Event::is_subset_of(const Event& other) const {
  if (other.num_states() != num_states()) {
    throw Error(ErrorCode::SizeMismatch, "events over different state sets");
  }
  for (std::size_t x = 0; x < m_mask.size(); ++x) {
    if (m_mask[x] && !other.m_mask[x]) return false;
  }
  return true;
}

std::vector<StateId> Event::members() const {
  std::vector<StateId> out;
  for (std::size_t x = 0; x < m_mask.size(); ++x) {
    if (m_mask[x]) out.push_back(x);
  }
  return out;
}

Partition::Partition(std::span<const std::size_t> labels)
    : m_block_id(labels.size()) {
  std::unordered_map<std::size_t, std::size_t> renumber;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    auto [it, inserted] = renumber.try_emplace(labels[x], renumber.size());
    m_block_id[x] = it->second;
  }
  m_num_blocks = renumber.size();
}

Partition Partition::from_blocks(const std::vector<std::vector<StateId>>& blocks,
                                 std::size_t num_states) {
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> labels(num_states, unassigned);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) {
      throw Error(ErrorCode::EmptyBlock, "block " + std::to_string(b) + " is empty");
    }
    for (StateId x : blocks[b]) {
      if (x >= num_states) {
        throw Error(ErrorCode::Index, "state " + std::to_string(x) +
                                          " outside [0, " +
                                          std::to_string(num_states) + ")");
      }
      if (labels[x] != unassigned) {
        throw Error(ErrorCode::Overlap,
                    "state " + std::to_string(x) + " appears in two blocks");
      }
      labels[x] = b;
    }
  }
  for (std::size_t x = 0; x < num_states; ++x) {
    if (labels[x] == unassigned) {
      throw Error(ErrorCode::Coverage,
                  "state " + std::to_string(x) + " is in no block");
    }
  }
  return Partition(labels);
}

Partition Partition::trivial(std::size_t num_states) {
  std::vector<std::size_t> labels(num_states, 0);
  return Partition(labels);
}

Partition Partition::discrete(std::size_t num_states) {
  std::vector<std::size_t> labels(num_states);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return Partition(labels);
}

std::size_t Partition::block_id(StateId x) const {
  if (x >= m_block_id.size()) {
    throw Error(ErrorCode::Index, "state " + std::to_string(x) + " outside [0, " +
                                      std::to_string(m_block_id.size()) + ")");
  }
  return m_block_id[x];
}

Event Partition::block_of(StateId x) const {
  const std::size_t id = block_id(x);
  Event e(num_states());
  for (std::size_t y = 0; y < m_block_id.size(); ++y) {
    if (m_block_id[y] == id) e.insert(y);
  }
  return e;
}

std::vector<std::vector<StateId>> Partition::blocks() const {
  std::vector<std::vector<StateId>> out(m_num_blocks);
  for (std::size_t x = 0; x < m_block_id.size(); ++x) {
    out[m_block_id[x]].push_back(x);
  }
  return out;
}

bool is_coarser(const Partition& p, const Partition& q) {
  require_same_size(p, q);
  // Each Q-block must sit inside a single P-block.
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> p_of_q(q.num_blocks(), unseen);
  for (std::size_t x = 0; x < q.num_states(); ++x) {
    std::size_t& slot = p_of_q[q.block_id(x)];
    if (slot == unseen) {
      slot = p.block_id(x);
    } else if (slot != p.block_id(x)) {
      return false;
    }
  }
  return true;
}

bool is_strictly_coarser(const Partition& p, const Partition& q) {
  return is_coarser(p, q) && p != q;
}

Partition join(const Partition& p, const Partition& q) {
  require_same_size(p, q);
  std::vector<std::size_t> labels(p.num_states());
  for (std::size_t x = 0; x < labels.size(); ++x) {
    labels[x] = p.block_id(x) * q.num_blocks() + q.block_id(x);
  }
  return Partition(labels);
}

Partition meet(const Partition& p, const Partition& q) {
  require_same_size(p, q);
  const std::size_t n = p.num_states();
  DisjointSets sets(n);
  std::vector<std::size_t> first_p(p.num_blocks(), n);
  std::vector<std::size_t> first_q(q.num_blocks(), n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t& fp = first_p[p.block_id(x)];
    if (fp == n) fp = x; else sets.unite(fp, x);
    std::size_t& fq = first_q[q.block_id(x)];
    if (fq == n) fq = x; else sets.unite(fq, x);
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t x = 0; x < n; ++x) labels[x] = sets.find(x);
  return Partition(labels);
}

Partition join_all(std::span<const Partition> family) {
  if (family.empty()) throw Error(ErrorCode::EmptyList, "join of an empty family");
  Partition acc = family.front();
  for (const Partition& p : family.subspan(1)) acc = join(acc, p);
  return acc;
}

Partition meet_all(std::span<const Partition> family) {
  if (family.empty()) throw Error(ErrorCode::EmptyList, "meet of an empty family");
  Partition acc = family.front();
  for (const Partition& p : family.subspan(1)) acc = meet(acc, p);
  return acc;
}

bool profile_leq(std::span<const Partition> lhs, std::span<const Partition> rhs) {
  if (lhs.size() != rhs.size()) {
    throw Error(ErrorCode::SizeMismatch, "profiles of different length");
  }
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (!is_coarser(lhs[i], rhs[i])) return false;
  }
  return true;
}

bool is_common_knowledge(std::span<const Partition> profile, const Event& e,
                         StateId x) {
  const Partition m = meet_all(profile);
  if (e.num_states() != m.num_states()) {
    throw Error(ErrorCode::SizeMismatch, "event and profile sizes differ");
  }
  return m.block_of(x).is_subset_of(e);
}

Partition restrict_prefix(const Partition& p, std::size_t prefix) {
  if (prefix > p.num_states()) {
    throw Error(ErrorCode::Index, "prefix longer than the state set");
  }
  return Partition(p.block_ids().first(prefix));
}

}  // namespace agree
