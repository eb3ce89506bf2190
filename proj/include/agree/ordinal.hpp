#pragma once

// Ordinals below w^2, written w*a + b.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace agree {

struct Ordinal {
  std::uint64_t omega = 0;   // a
  std::uint64_t finite = 0;  // b

  auto operator<=>(const Ordinal&) const = default;

  bool is_limit() const { return omega > 0 && finite == 0; }
  Ordinal successor() const { return {omega, finite + 1}; }
  Ordinal next_limit() const { return {omega + 1, 0}; }
};

// "b" when a = 0, "w*a" when b = 0, otherwise "w*a+b" (a = 1 included).
std::string to_string(const Ordinal& o);

// Accepts "b", "w", "w+b", "w*a", "w*a+b".
std::optional<Ordinal> parse_ordinal(std::string_view text);

}  // namespace agree
