#ifndef GWLAB_RATIONAL_HPP
#define GWLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gwlab {

/// Exact rational number. GMP keeps mpq values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Builds num/den in lowest terms. Throws InputError on a zero denominator.
Rational make_rational(long num, long den = 1);

/// Parses "p/q" or "p" (optional leading '-'). Throws InputError otherwise.
Rational parse_rational(std::string_view text);

/// Canonical rendering: "p/q" with q > 1, or "p" for integers.
std::string to_string(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace gwlab

#endif  // GWLAB_RATIONAL_HPP
