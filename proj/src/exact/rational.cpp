#include "exact/rational.hpp"

#include "exact/errors.hpp"

#include <limits>

namespace voac::exact {

Rational rat(long long num, long long den) {
    if (den == 0) throw PoleError("rational with zero denominator");
    Rational r(num);
    r /= den;
    return r;
}

Rational parse_rational(const std::string& text) {
    auto first = text.find_first_not_of(" \t");
    auto last = text.find_last_not_of(" \t");
    if (first == std::string::npos) throw InvalidError("empty rational literal");
    std::string s = text.substr(first, last - first + 1);
    auto slash = s.find('/');
    Integer num, den = 1;
    try {
        if (slash == std::string::npos) {
            num = Integer(s);
        } else {
            num = Integer(s.substr(0, slash));
            den = Integer(s.substr(slash + 1));
        }
    } catch (const std::runtime_error&) {
        throw InvalidError("bad rational literal '" + s + "'");
    }
    if (den == 0) throw PoleError("rational literal with zero denominator");
    return Rational(num) / Rational(den);
}

std::string rational_str(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Integer factorial(unsigned n) {
    Integer f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

Integer binomial(const Integer& top, unsigned k) {
    Integer num = 1;
    for (unsigned i = 0; i < k; ++i) num *= top - Integer(i);
    Integer result = num / factorial(k); // falling factorials are divisible by k!
    return result;
}

Rational pow_int(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw PoleError("0 raised to negative power");
        return Rational(0);
    }
    Rational b = base;
    unsigned long n;
    if (e < 0) {
        b = Rational(1) / b;
        n = static_cast<unsigned long>(-e);
    } else {
        n = static_cast<unsigned long>(e);
    }
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

Integer to_integer(const Rational& r) {
    if (!is_integer(r)) throw InvalidError("rational " + rational_str(r) + " is not an integer");
    return numerator(r);
}

long to_long(const Integer& z) {
    if (z > std::numeric_limits<long>::max() || z < std::numeric_limits<long>::min())
        throw InvalidError("integer out of machine range: " + z.str());
    return static_cast<long>(z);
}

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) throw InvalidError("square root of negative rational");
    Integer n = numerator(r), d = denominator(r);
    Integer rn = sqrt(n), rd = sqrt(d); // floor square roots
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Rational(rn) / Rational(rd);
}

} // namespace voac::exact
