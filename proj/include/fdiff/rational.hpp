#ifndef FDIFF_RATIONAL_HPP
#define FDIFF_RATIONAL_HPP

#include <string>

#include <gmpxx.h>

namespace fdiff {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

Rational inverse(const Rational& q);

// Always "p/q" with q > 0, also for integers.
std::string to_json_string(const Rational& q);

// Human form: "p" for integers, "p/q" otherwise.
std::string to_display_string(const Rational& q);

// Accepts "p", "-p", "p/q"; result is canonicalized.
Rational parse_rational(const std::string& s);

} // namespace fdiff

#endif
