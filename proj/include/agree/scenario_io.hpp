#pragma once

// Scenario documents (JSON) and trace records (one JSON object per line).

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "agree/engine.hpp"
#include "agree/symbolic.hpp"

namespace agree {

using AnyScenario = std::variant<Scenario, SymbolicScenario>;

// Throws Parse (with line and column) for malformed text and Validation for
// schema or invariant breaches. Floating-point numbers are rejected.
AnyScenario parse_scenario_text(std::string_view text);

// Reads a file; a bare fixture name such as "example_sec2" resolves to the
// bundled scenario of that name. Throws Io when neither exists.
AnyScenario parse_scenario(const std::string& path);

std::vector<std::string> fixture_names();
// Empty when no bundled fixture has that name.
std::string fixture_path(std::string_view name);

std::string serialize_scenario(const Scenario& sc);
std::string serialize_scenario(const SymbolicScenario& sc);
std::string serialize_scenario(const AnyScenario& sc);

// Compact single-line forms, used inside reports.
std::string serialize_scenario_compact(const Scenario& sc);

std::string trace_line(const Scenario& sc, const FiniteStage& stage);
std::string trace_line(const SymbolicScenario& sc, const SymbolicStage& stage);

}  // namespace agree
