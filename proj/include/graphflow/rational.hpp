#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace graphflow {

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;

/// Formats as "p" for integers and "p/q" otherwise.
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q". Throws InputError on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace graphflow
