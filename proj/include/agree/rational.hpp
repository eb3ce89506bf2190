#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace agree {

using Rational = boost::multiprecision::cpp_rational;

// "num/den" with den > 0 and the fraction in lowest terms; den is always
// written, so 2 prints as "2/1".
std::string format_rational(const Rational& r);

// Accepts "num/den" or a bare integer. Decimal points and exponents are
// rejected so that no floating-point value can enter through a file.
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace agree
