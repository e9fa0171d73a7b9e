#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace mechlab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. Every quantity in the library (values, sizes,
/// capacities, probabilities, ratios) is one of these; no floating point
/// enters any decision.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" or "p" with an optional leading minus. Throws InputError on
/// anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rational& value);

/// Lossy decimal rendering, for human-readable output only.
double approx_double(const Rational& value);

/// Largest integer <= value.
BigInt floor_to_int(const Rational& value);

}  // namespace mechlab
