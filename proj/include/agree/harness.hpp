#pragma once

// Seeded generators and named property suites over random scenarios.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "agree/engine.hpp"
#include "agree/symbolic.hpp"

namespace agree {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : m_seed(seed), m_engine(seed) {}

  std::uint64_t seed() const { return m_seed; }
  std::mt19937_64& engine() { return m_engine; }

  // An independent stream for case `index`; the same (seed, index) always
  // yields the same stream.
  Rng fork(std::uint64_t index) const;

  // Uniform on [lo, hi].
  std::size_t uniform(std::size_t lo, std::size_t hi);
  bool chance(unsigned num, unsigned den);

 private:
  std::uint64_t m_seed;
  std::mt19937_64 m_engine;
};

Partition gen_partition(std::size_t num_states, Rng& rng);
Profile gen_profile(std::size_t num_agents, std::size_t num_states, Rng& rng);

// Families known to satisfy the sure-thing principle: known_state,
// posterior, expected_value, injective. Throws UnknownFamily otherwise.
MessageFunction gen_message_function(Family family, std::size_t num_states, Rng& rng);
MessageFunction gen_message_function(std::string_view family, std::size_t num_states, Rng& rng);

enum class GraphMode { A3, NotA3 };
CommGraph gen_graph(std::size_t num_agents, Rng& rng, GraphMode mode);

// A random eventually periodic partition with modulus in {1, 2, 4}.
PeriodicPartition gen_periodic_partition(Rng& rng);

struct PropertyFailure {
  std::size_t case_index = 0;
  std::string detail;
  std::optional<Scenario> scenario;  // minimized, finite suites only
  std::optional<std::size_t> stage;
};

struct PropertyReport {
  std::string suite;
  std::size_t cases = 0;
  // Cases whose premise held (e.g. some pair disagreed for corollary1).
  std::size_t exercised = 0;
  std::vector<PropertyFailure> failures;
  // Set when a non-STP function was injected, so failures are the point.
  bool expected_failure = false;

  bool passed() const { return failures.empty(); }
};

struct SuiteOptions {
  std::size_t min_agents = 2;
  std::size_t max_agents = 4;
  std::size_t min_states = 2;
  std::size_t max_states = 8;
  // Replaces the generated message function; the state count follows the
  // function's table when it has one.
  std::optional<MessageFunction> mf_override;
  bool minimize = true;
};

std::vector<std::string> suite_names();

// Throws UnknownSuite.
PropertyReport run_property_suite(std::string_view name, std::size_t cases, std::uint64_t seed,
                                  const SuiteOptions& opts = {});

// Every pair of partitions of three states, every posterior prior with
// weights drawn from {1/4, 1/2, 1}, every target event, two-way graph:
// the three consensus conditions agree and the dialogue ends in consensus
// within n*N steps.
PropertyReport run_exhaustive_small_model();

// One JSON line per failure, then a summary line.
std::string report_lines(const PropertyReport& report);

}  // namespace agree
