#pragma once

#include "exact/polynomial.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace voac::exact {

struct PolyLess {
    bool operator()(const Polynomial& a, const Polynomial& b) const { return poly_less(a, b); }
};

// monic non-constant factor -> multiplicity >= 1
using FactorMap = std::map<Polynomial, int, PolyLess>;

// num / prod factor^mult. Scalar denominators are folded into num's
// coefficients; factors stay monic, so proportional denominators compare
// equal structurally. Reduction is by trial division only (no factorization).
class RationalFunction {
public:
    RationalFunction() = default; // zero
    RationalFunction(const Rational& c);
    RationalFunction(long long c);
    RationalFunction(Polynomial p);
    RationalFunction(Polynomial num, FactorMap den);

    static RationalFunction variable(VarId id);
    // den as a single factor (not factorized further)
    static RationalFunction quotient(const Polynomial& num, const Polynomial& den);

    const Polynomial& num() const { return num_; }
    const FactorMap& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    Rational constant_value() const;

    RationalFunction operator-() const;
    RationalFunction scaled(const Rational& c) const;
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    RationalFunction inverse() const;

    bool equals(const RationalFunction& o) const; // exact, cross-multiplied
    bool operator==(const RationalFunction& o) const { return equals(o); }

    RationalFunction derivative(VarId id) const;
    RationalFunction divided_derivative(VarId id, unsigned k) const; // d^k/k!

    // substitute a subset of variables by values; throws PoleError if a
    // denominator factor vanishes
    RationalFunction eval_at(const std::map<VarId, Rational>& values) const;
    RationalFunction rename(const std::map<VarId, VarId>& m) const;
    RationalFunction substitute(VarId id, const RationalFunction& g) const;
    Rational evaluate(const std::map<VarId, Rational>& values) const;

    Polynomial den_expanded() const;
    std::vector<VarId> variables() const;
    std::string str() const;
    // integer-normalized (num, den) strings; den has positive leading coeff
    std::pair<std::string, std::string> num_den_strings() const;

private:
    void reduce();
    void push_factor(Polynomial f, int mult); // normalizes to monic, folds scalars
    Polynomial num_;
    FactorMap den_;
};

RationalFunction operator+(RationalFunction a, const RationalFunction& b);
RationalFunction operator-(RationalFunction a, const RationalFunction& b);
RationalFunction operator*(RationalFunction a, const RationalFunction& b);
RationalFunction operator/(RationalFunction a, const RationalFunction& b);

// Taylor coefficients f(at), f'(at), f''(at)/2!, ... ; throws PoleError if f
// has a pole at the expansion point
std::vector<Rational> taylor_coefficients(const RationalFunction& f, VarId id,
                                          const Rational& at, unsigned count);

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& f) {
    return os << f.str();
}

} // namespace voac::exact
