#pragma once

#include "exact/rational.hpp"
#include "exact/symbols.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace voac::exact {

// Sparse monomial: (var, exponent) pairs sorted by VarId, exponents > 0.
struct Monomial {
    std::vector<std::pair<VarId, int>> v;

    int degree() const;
    int exponent(VarId id) const;
    bool is_one() const { return v.empty(); }
    bool divides(const Monomial& m) const;
    Monomial divided_into(const Monomial& m) const; // m / this, requires divides(m)
    bool operator==(const Monomial&) const = default;
    std::string str() const;
};

Monomial operator*(const Monomial& a, const Monomial& b);

// graded lex: total degree first, ties broken with smaller VarId more significant
bool mono_less(const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    Rational coeff;
    bool operator==(const Term& o) const { return mono == o.mono && coeff == o.coeff; }
};

// Terms kept sorted descending by mono_less; no zero coefficients stored.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(const Rational& c);
    explicit Polynomial(long long c);
    static Polynomial variable(VarId id);
    static Polynomial from_terms(std::vector<Term> ts);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // requires is_constant
    int degree() const;
    int degree_in(VarId id) const;
    const Term& leading() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned e) const;

    // quotient if the division is exact, nullopt otherwise
    std::optional<Polynomial> exact_div(const Polynomial& d) const;

    Polynomial derivative(VarId id) const;
    Polynomial substitute(VarId id, const Rational& value) const;
    Polynomial substitute(const std::map<VarId, Rational>& values) const;
    Polynomial substitute(VarId id, const Polynomial& g) const;
    Polynomial rename(const std::map<VarId, VarId>& m) const;
    Rational evaluate(const std::map<VarId, Rational>& values) const; // all vars bound
    std::vector<VarId> variables() const;
    std::map<int, Polynomial> coefficients_in(VarId id) const;

    Rational leading_coeff() const;
    Polynomial monic() const; // divide by leading coefficient
    // this == content() * primitive(); primitive has integer coefficients with
    // gcd 1 and positive leading coefficient; content carries sign and scale
    Rational content() const;
    Polynomial primitive() const;

    bool operator==(const Polynomial&) const = default;
    std::string str() const;

private:
    std::vector<Term> terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

// arbitrary strict total order usable as a map key comparator
bool poly_less(const Polynomial& a, const Polynomial& b);

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

} // namespace voac::exact
