#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace bfstat {

// Statistical weights are exact arbitrary-precision integers, occupancies and
// probabilities exact rationals. Floating point only enters when a value is
// evaluated at a numeric temperature.
using BigCount = mpz_class;
using ExactRatio = mpq_class;

// C(n, k); zero when k < 0 or k > n.
BigCount binomial(std::int64_t n, std::int64_t k);

BigCount factorial(std::int64_t n);

// Natural log of a positive big integer, exact to double precision even when
// the integer itself overflows a double.
double log_big(const BigCount& v);

// Parses "p", "-p" or "p/q" into a canonical rational.
ExactRatio parse_ratio(const std::string& text);

// "p" when the denominator is 1, else "p/q".
std::string ratio_to_string(const ExactRatio& r);

}  // namespace bfstat
