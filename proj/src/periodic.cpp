#include "agree/periodic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "agree/error.hpp"

namespace agree {

namespace {

void sort_unique(std::vector<Nat>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Nat vmax(const std::vector<Nat>& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()); }
Nat vmin(const std::vector<Nat>& v) { return v.empty() ? 0 : *std::min_element(v.begin(), v.end()); }

Nat min_of(const InfiniteBlockSpec& b) {
  Nat a = b.finite_part.empty() ? vmin(b.starts) : vmin(b.finite_part);
  return b.starts.empty() ? a : std::min(a, vmin(b.starts));
}

}  // namespace

// ---------------------------------------------------------------- BlockSet

bool BlockSet::contains(Nat x) const {
  if (std::binary_search(finite.begin(), finite.end(), x)) return true;
  for (Nat s : starts)
    if (x >= s && (x - s) % step == 0) return true;
  return false;
}

Nat BlockSet::min() const {
  if (finite.empty()) return starts.empty() ? 0 : starts.front();
  return starts.empty() ? finite.front() : std::min(finite.front(), starts.front());
}

Nat BlockSet::threshold() const { return std::max(vmax(finite), vmax(starts)); }

std::vector<Nat> BlockSet::elements_upto(Nat bound) const {
  std::vector<Nat> out;
  for (Nat x : finite)
    if (x <= bound) out.push_back(x);
  for (Nat s : starts)
    for (Nat x = s; x <= bound; x += step) out.push_back(x);
  sort_unique(out);
  return out;
}

bool operator==(const BlockSet& a, const BlockSet& b) {
  if (a.is_finite() != b.is_finite()) return false;
  if (a.is_finite()) return a.finite == b.finite;
  Nat bound = std::max(a.threshold(), b.threshold()) + 2 * std::lcm(a.step, b.step);
  return a.elements_upto(bound) == b.elements_upto(bound);
}

BlockSet intersect(const BlockSet& a, const BlockSet& b) {
  BlockSet out;
  if (a.is_finite() || b.is_finite()) {
    const BlockSet& fin = a.is_finite() ? a : b;
    const BlockSet& other = a.is_finite() ? b : a;
    for (Nat x : fin.finite)
      if (other.contains(x)) out.finite.push_back(x);
    return out;
  }
  Nat t = std::max(a.threshold(), b.threshold());
  Nat l = std::lcm(a.step, b.step);
  for (Nat x = 1; x <= t + l; ++x) {
    if (!a.contains(x) || !b.contains(x)) continue;
    (x <= t ? out.finite : out.starts).push_back(x);
  }
  if (!out.starts.empty()) out.step = l;
  return out;
}

BlockSet translate(const BlockSet& a, Nat shift) {
  BlockSet out = a;
  for (Nat& x : out.finite) x += shift;
  for (Nat& s : out.starts) s += shift;
  return out;
}

std::string to_string(const BlockSet& b) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (Nat x : b.finite) {
    os << (first ? "" : ", ") << x;
    first = false;
  }
  for (Nat s : b.starts) {
    os << (first ? "" : ", ") << s << '+' << b.step << 'k';
    first = false;
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------- validation

ValidationCertificate pp_validate(const PeriodicSpec& spec) {
  const Nat m = spec.modulus;
  if (m == 0) throw Error(ErrorCode::Malformed, "modulus must be positive");

  Nat h = 0;
  auto check_block = [&](const std::vector<Nat>& b, bool allow_empty, const char* what) {
    if (b.empty() && !allow_empty) throw Error(ErrorCode::EmptyBlock, std::string("empty ") + what);
    std::vector<Nat> sorted = b;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorCode::Overlap, std::string("repeated state in ") + what);
    if (!sorted.empty() && sorted.front() == 0)
      throw Error(ErrorCode::Index, "states start at 1");
    h = std::max(h, vmax(b));
  };
  for (const auto& b : spec.exceptional) check_block(b, false, "exceptional block");
  for (const auto& b : spec.templates) check_block(b, false, "template family");
  for (const auto& b : spec.infinite) {
    if (b.starts.empty()) throw Error(ErrorCode::Malformed, "infinite block without progressions");
    check_block(b.finite_part, true, "infinite block");
    check_block(b.starts, false, "infinite block");
  }

  const Nat window = 2 * (h + m);
  std::vector<unsigned> claims(window + 1, 0);
  auto claim = [&](Nat x) {
    if (x > window) return;
    if (++claims[x] > 1)
      throw Error(ErrorCode::Overlap, "state " + std::to_string(x) + " lies in two blocks");
  };
  auto claim_progression = [&](Nat s) {
    for (Nat x = s; x <= window; x += m) claim(x);
  };
  for (const auto& b : spec.exceptional)
    for (Nat x : b) claim(x);
  for (const auto& b : spec.templates)
    for (Nat o : b) claim_progression(o);
  for (const auto& b : spec.infinite) {
    for (Nat x : b.finite_part) claim(x);
    for (Nat s : b.starts) claim_progression(s);
  }

  std::vector<unsigned> residues(m, 0);
  for (const auto& b : spec.templates)
    for (Nat o : b) ++residues[o % m];
  for (const auto& b : spec.infinite)
    for (Nat s : b.starts) ++residues[s % m];
  for (Nat r = 0; r < m; ++r)
    if (residues[r] != 1)
      throw Error(ErrorCode::Residue, "residue " + std::to_string(r) + " mod " + std::to_string(m) +
                                          " is claimed " + std::to_string(residues[r]) + " times");

  for (Nat x = 1; x <= window; ++x)
    if (claims[x] == 0)
      throw Error(ErrorCode::Coverage, "state " + std::to_string(x) + " is in no block");
  return {window};
}

// ---------------------------------------------------------------- partition

PeriodicPartition::PeriodicPartition(PeriodicSpec spec) : m_spec(std::move(spec)) {
  pp_validate(m_spec);
  const Nat m = m_spec.modulus;
  for (auto& b : m_spec.exceptional) std::sort(b.begin(), b.end());
  for (auto& b : m_spec.templates) std::sort(b.begin(), b.end());
  for (auto& b : m_spec.infinite) {
    std::sort(b.finite_part.begin(), b.finite_part.end());
    std::sort(b.starts.begin(), b.starts.end());
  }
  auto by_front = [](const std::vector<Nat>& a, const std::vector<Nat>& b) { return a.front() < b.front(); };
  std::sort(m_spec.exceptional.begin(), m_spec.exceptional.end(), by_front);
  std::sort(m_spec.templates.begin(), m_spec.templates.end(), by_front);
  std::sort(m_spec.infinite.begin(), m_spec.infinite.end(),
            [](const InfiniteBlockSpec& a, const InfiniteBlockSpec& b) { return min_of(a) < min_of(b); });

  for (const auto& b : m_spec.exceptional) {
    m_largest = std::max(m_largest, b.back());
    m_diameter = std::max(m_diameter, b.back() - b.front());
  }
  for (const auto& b : m_spec.templates) {
    m_largest = std::max(m_largest, b.back());
    m_diameter = std::max(m_diameter, b.back() - b.front());
  }
  for (const auto& b : m_spec.infinite)
    m_largest = std::max({m_largest, vmax(b.finite_part), vmax(b.starts)});

  m_low.assign(m_largest, Owner{Kind::Exceptional, 0, 0});
  m_residue.assign(m, Owner{Kind::Exceptional, 0, 0});
  for (std::size_t i = 0; i < m_spec.exceptional.size(); ++i)
    for (Nat x : m_spec.exceptional[i]) m_low[x - 1] = {Kind::Exceptional, i, 0};
  for (std::size_t i = 0; i < m_spec.templates.size(); ++i)
    for (Nat o : m_spec.templates[i]) {
      for (Nat x = o, k = 0; x <= m_largest; x += m, ++k) m_low[x - 1] = {Kind::Template, i, k};
      m_residue[o % m] = {Kind::Template, i, o};
    }
  for (std::size_t i = 0; i < m_spec.infinite.size(); ++i) {
    const auto& b = m_spec.infinite[i];
    for (Nat x : b.finite_part) m_low[x - 1] = {Kind::Infinite, i, 0};
    for (Nat s : b.starts) {
      for (Nat x = s; x <= m_largest; x += m) m_low[x - 1] = {Kind::Infinite, i, 0};
      m_residue[s % m] = {Kind::Infinite, i, 0};
    }
  }
  m_threshold = compute_threshold();
}

PeriodicPartition PeriodicPartition::discrete() {
  PeriodicSpec s;
  s.modulus = 1;
  s.templates = {{1}};
  return PeriodicPartition(std::move(s));
}

PeriodicPartition PeriodicPartition::trivial() {
  PeriodicSpec s;
  s.modulus = 1;
  s.infinite = {InfiniteBlockSpec{{}, {1}}};
  return PeriodicPartition(std::move(s));
}

PeriodicPartition::Owner PeriodicPartition::owner(Nat x) const {
  if (x == 0) throw Error(ErrorCode::Index, "states start at 1");
  if (x <= m_largest) return m_low[x - 1];
  Owner r = m_residue[x % m_spec.modulus];
  if (r.kind == Kind::Template) r.instance = (x - r.instance) / m_spec.modulus;
  return r;
}

BlockSet PeriodicPartition::block_of_owner(const Owner& o) const {
  switch (o.kind) {
    case Kind::Exceptional:
      return {m_spec.exceptional[o.id], 0, {}};
    case Kind::Template: {
      BlockSet b{m_spec.templates[o.id], 0, {}};
      for (Nat& x : b.finite) x += m_spec.modulus * o.instance;
      return b;
    }
    case Kind::Infinite:
      break;
  }
  const auto& inf = m_spec.infinite[o.id];
  return {inf.finite_part, m_spec.modulus, inf.starts};
}

BlockSet PeriodicPartition::block_of(Nat x) const { return block_of_owner(owner(x)); }

bool PeriodicPartition::same_block(Nat x, Nat y) const { return owner(x) == owner(y); }

bool PeriodicPartition::shift_periodic_at(Nat x, Nat d) const {
  Owner ox = owner(x);
  Owner oy = owner(x + d);
  if (ox.kind == Kind::Infinite) return ox == oy;
  if (oy.kind == Kind::Infinite) return false;
  if (ox.kind == Kind::Template && oy.kind == Kind::Template && ox.id == oy.id &&
      d == m_spec.modulus)
    return oy.instance == ox.instance + 1;
  return block_of_owner(oy) == translate(block_of_owner(ox), d);
}

Nat PeriodicPartition::compute_threshold() const {
  for (Nat x = m_largest; x >= 1; --x)
    if (!shift_periodic_at(x, m_spec.modulus)) return x;
  return 0;
}

// ---------------------------------------------------------------- operations

BlockSet pp_block_of(const PeriodicPartition& pp, Nat x) { return pp.block_of(x); }

Partition pp_restrict(const PeriodicPartition& pp, Nat n) {
  std::vector<std::size_t> labels(n);
  std::vector<Nat> rep;  // representative per label
  for (Nat x = 1; x <= n; ++x) {
    std::size_t label = rep.size();
    for (std::size_t j = 0; j < rep.size(); ++j)
      if (pp.same_block(rep[j], x)) {
        label = j;
        break;
      }
    if (label == rep.size()) rep.push_back(x);
    labels[x - 1] = label;
  }
  return Partition(labels);
}

bool pp_equal(const PeriodicPartition& a, const PeriodicPartition& b) {
  Nat window = std::max(a.largest_constant(), b.largest_constant()) +
               std::max(a.max_finite_diameter(), b.max_finite_diameter()) +
               2 * std::lcm(a.modulus(), b.modulus());
  for (Nat x = 1; x <= window; ++x)
    for (Nat y = x + 1; y <= window; ++y)
      if (a.same_block(x, y) != b.same_block(x, y)) return false;
  return true;
}

PeriodicPartition synthesize(Nat threshold, Nat modulus,
                             const std::function<BlockSet(Nat)>& block_fn) {
  if (modulus == 0) throw Error(ErrorCode::Malformed, "modulus must be positive");
  PeriodicSpec spec;
  spec.modulus = modulus;
  const Nat top = threshold + modulus;
  for (Nat x = 1; x <= top; ++x) {
    BlockSet b = block_fn(x);
    if (b.min() != x) continue;
    if (!b.is_finite()) {
      InfiniteBlockSpec inf;
      for (Nat y : b.elements_upto(top)) (y <= threshold ? inf.finite_part : inf.starts).push_back(y);
      spec.infinite.push_back(std::move(inf));
    } else if (x <= threshold) {
      spec.exceptional.push_back(b.finite);
    } else {
      spec.templates.push_back(b.finite);
    }
  }
  return PeriodicPartition(std::move(spec));
}

PeriodicPartition pp_canonical(const PeriodicPartition& pp) {
  const Nat m = pp.modulus();
  const Nat h = pp.largest_constant();
  for (Nat d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    bool ok = true;
    for (Nat x = h + 1; x <= h + m && ok; ++x) ok = pp.shift_periodic_at(x, d);
    if (!ok) continue;
    Nat tau = 0;
    for (Nat x = h; x >= 1; --x)
      if (!pp.shift_periodic_at(x, d)) {
        tau = x;
        break;
      }
    return synthesize(tau, d, [&](Nat x) { return pp.block_of(x); });
  }
  return pp;  // unreachable: d = m always qualifies
}

PeriodicPartition pp_join(const PeriodicPartition& a, const PeriodicPartition& b) {
  Nat tau = std::max(a.periodic_threshold(), b.periodic_threshold()) +
            std::max(a.max_finite_diameter(), b.max_finite_diameter());
  Nat l = std::lcm(a.modulus(), b.modulus());
  auto joined = synthesize(tau, l, [&](Nat x) { return intersect(a.block_of(x), b.block_of(x)); });
  return pp_canonical(joined);
}

bool pp_is_coarser(const PeriodicPartition& a, const PeriodicPartition& b) {
  return pp_equal(pp_join(a, b), b);
}

PeriodicPartition pp_working_partition_known_state(const PeriodicPartition& pp) {
  const Nat tau = pp.periodic_threshold();
  const Nat m = pp.modulus();
  BlockSet unknown;
  for (Nat y = 1; y <= tau + m; ++y)
    if (!pp.block_of(y).is_singleton()) (y <= tau ? unknown.finite : unknown.starts).push_back(y);
  if (!unknown.starts.empty()) unknown.step = m;
  auto wp = synthesize(tau, m, [&](Nat x) {
    return unknown.contains(x) ? unknown : BlockSet::singleton(x);
  });
  return pp_canonical(wp);
}

std::string to_string(const PeriodicPartition& pp) {
  const auto& s = pp.spec();
  std::ostringstream os;
  os << "m=" << s.modulus;
  for (const auto& b : s.exceptional) os << ' ' << to_string(BlockSet{b, 0, {}});
  for (const auto& b : s.templates) os << ' ' << to_string(BlockSet{b, 0, {}}) << '+' << s.modulus << 'k';
  for (const auto& b : s.infinite) os << ' ' << to_string(BlockSet{b.finite_part, s.modulus, b.starts});
  return os.str();
}

}  // namespace agree
