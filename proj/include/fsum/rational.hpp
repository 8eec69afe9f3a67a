#pragma once

/// Exact arithmetic backbone: arbitrary-precision integers and rationals,
/// a 128-bit binary float for dimension values, and text parsing for the
/// "p/q" literal form used by all input files and CLI flags.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace fsum {

using Int = boost::multiprecision::cpp_int;

// Always stored in lowest terms with positive denominator; equality and
// hashing are structural.
using Rational = boost::multiprecision::cpp_rational;

// IEEE binary128-equivalent float used for logarithms and dimension values.
// Exact claims are never decided at this precision; it is for reporting.
using Float = boost::multiprecision::cpp_bin_float_quad;

Float to_float(const Rational& r);
Float to_float(const Int& n);

/// Decimal rendering with 30 significant digits, deterministic.
std::string decimal(const Float& x);
std::string decimal(const Rational& r);

/// Parses "p", "-p", or "p/q" (q > 0 after normalization). Throws parse_error.
Rational parse_rational(std::string_view text);

/// Lowest-terms text form: "p" or "p/q".
std::string format_rational(const Rational& r);

/// Floor of the exact quotient a/b for b > 0.
Int floor_div(const Int& a, const Int& b);

/// Floor of a rational.
Int floor_rational(const Rational& r);

/// Largest r with r^k <= x. Requires x >= 0, k >= 1.
Int iroot(const Int& x, unsigned k);

inline Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace fsum
