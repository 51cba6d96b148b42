#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <string>

namespace voac::exact {

using Integer = boost::multiprecision::mpz_int;
// mpq keeps values canonical: reduced, denominator > 0.
using Rational = boost::multiprecision::mpq_rational;

Rational rat(long long num, long long den = 1);

// accepts "p", "-p/q", whitespace-trimmed; throws InvalidError
Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& r); // "p/q", or "p" when q == 1

Integer factorial(unsigned n);

// generalized binomial: top may be any integer, result is always integral
Integer binomial(const Integer& top, unsigned k);
inline Integer binomial(long long top, unsigned k) { return binomial(Integer(top), k); }

Rational pow_int(const Rational& base, long e); // e < 0 requires base != 0

bool is_integer(const Rational& r);
Integer to_integer(const Rational& r); // requires is_integer
long to_long(const Integer& z);        // range-checked

// exact square root of a nonnegative rational, empty when irrational
std::optional<Rational> rational_sqrt(const Rational& r);

} // namespace voac::exact
