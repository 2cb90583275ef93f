#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace rrscore {

// Arbitrary-precision integers and rationals back the exact computation
// paths; inputs are machine-word sized but enumeration weights are not.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

double to_double(const Rat& r);

// Accepts "3/4", "-1/2", "1", "0.25", ".5". Decimal strings become exact
// rationals over a power of ten. Returns nullopt on malformed input.
std::optional<Rat> parse_rational(std::string_view text);

// Lowest-terms "num/den", or just "num" when the denominator is 1.
std::string format_rational(const Rat& r);

// Shortest decimal that round-trips is not needed; 17 significant digits
// always round-trip a double and keep output byte-stable.
std::string format_double(double x);

}  // namespace rrscore
