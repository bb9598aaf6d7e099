#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace lef {

// Exact rational scalar. GMP keeps every value in lowest terms with a
// positive denominator.
using Scalar = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Canonical text form: "p/q", or "p" when q == 1.
std::string to_string(const Scalar& s);

// Accepts "[-]digits" or "[-]digits/digits" with a nonzero denominator.
// Non-reduced input is normalized. Throws ParseError otherwise.
Scalar parse_scalar(std::string_view text);

inline bool is_zero(const Scalar& s) { return s == 0; }

}  // namespace lef
