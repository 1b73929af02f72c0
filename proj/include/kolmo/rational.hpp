#pragma once

// Exact rational numbers on top of GMP.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace kolmo {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in canonical (reduced, positive denominator) form.
Rational make_rational(long num, long den = 1);

/// "num/den", or just "num" for integers. Inverse of parse_rational.
std::string to_string(const Rational& q);

/// Accepts "p/q", an integer, or a plain decimal such as "-0.125" (read
/// exactly, so "0.1" is 1/10). Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

/// Best rational approximation of x with denominator <= max_den, by
/// continued fractions (convergents plus the last admissible semiconvergent).
Rational rationalize(double x, std::int64_t max_den = 1'000'000);

inline double to_double(const Rational& q) { return q.get_d(); }

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace kolmo
