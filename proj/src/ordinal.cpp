#include "agree/ordinal.hpp"

#include <charconv>

namespace agree {

namespace {

std::optional<std::uint64_t> parse_natural(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string to_string(const Ordinal& o) {
  if (o.omega == 0) return std::to_string(o.finite);
  std::string out = "w*" + std::to_string(o.omega);
  if (o.finite > 0) out += "+" + std::to_string(o.finite);
  return out;
}

std::optional<Ordinal> parse_ordinal(std::string_view text) {
  if (text.empty() || text.front() != 'w') {
    const auto b = parse_natural(text);
    if (!b) return std::nullopt;
    return Ordinal{0, *b};
  }
  text.remove_prefix(1);
  Ordinal o{1, 0};
  if (!text.empty() && text.front() == '*') {
    text.remove_prefix(1);
    const auto plus = text.find('+');
    const auto a = parse_natural(text.substr(0, plus));
    if (!a) return std::nullopt;
    o.omega = *a;
    text = plus == std::string_view::npos ? std::string_view{} : text.substr(plus);
  }
  if (!text.empty()) {
    if (text.front() != '+') return std::nullopt;
    const auto b = parse_natural(text.substr(1));
    if (!b) return std::nullopt;
    o.finite = *b;
  }
  return o;
}

}  // namespace agree
