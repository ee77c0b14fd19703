#pragma once

#include <gmpxx.h>

#include <string>

namespace infnc {

using Rational = mpq_class;

// Accepts "p/q" or an integer string; the result is canonicalized.
Rational parse_rational(const std::string& text);

// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

}  // namespace infnc
