#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace m0a {

// Every quantity in the library is an exact rational; there is no floating
// point anywhere.
// Expression templates are switched off so that `auto` and braced lists
// always see plain values.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

// Canonical "p/q" text (q > 0, reduced; "p" when q == 1).
std::string to_string(const Rational& value);

// Accepts "p", "p/q", "-p/q" with optional surrounding whitespace.
// Throws Error(ErrorKind::kParse) on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

inline Rational binomial2(long long k) { return Rational(k * (k - 1), 2); }

}  // namespace m0a
