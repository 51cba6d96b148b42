#pragma once

#include "exact/ratfun.hpp"

#include <map>
#include <ostream>
#include <vector>

namespace voac::exact {

// Multivariate truncated series in the sewing scales rho_1..rho_g with
// rational-function coefficients. Exponents live in (1/2)Z^g and are stored
// in half-units (entry 2*e_a). A series of order T keeps exponent vectors
// with half-unit sum <= order2 = 2T. Negative entries are legal in
// intermediate objects; exported results are audited separately.
class TruncatedSeries {
public:
    TruncatedSeries(int genus, int order2);
    static TruncatedSeries zero(int genus, int order2) { return {genus, order2}; }
    static TruncatedSeries one(int genus, int order2);
    static TruncatedSeries monomial(int genus, int order2, const std::vector<int>& exp2,
                                    const RationalFunction& c);

    int genus() const { return genus_; }
    int order2() const { return order2_; }
    const std::map<std::vector<int>, RationalFunction>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    RationalFunction coefficient(const std::vector<int>& exp2) const;
    void add_term(const std::vector<int>& exp2, const RationalFunction& c);

    TruncatedSeries operator-() const;
    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries& operator*=(const TruncatedSeries& o);
    TruncatedSeries scaled(const RationalFunction& c) const;
    // multiply by c * rho^(exp2/2)
    TruncatedSeries mul_monomial(const std::vector<int>& exp2, const RationalFunction& c) const;

    // requires an invertible constant term and all other exponents
    // componentwise nonnegative with positive total
    TruncatedSeries geometric_inverse() const;

    TruncatedSeries truncated(int new_order2) const;
    TruncatedSeries eval_coeffs(const std::map<VarId, Rational>& values) const;

    bool nonnegative_exponents() const; // componentwise, every term
    bool equals(const TruncatedSeries& o) const;
    bool operator==(const TruncatedSeries& o) const { return equals(o); }
    std::string str() const;

private:
    int genus_;
    int order2_;
    // key: exponent vector in half-units, length genus_; values nonzero
    std::map<std::vector<int>, RationalFunction> terms_;
};

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b);
TruncatedSeries operator*(TruncatedSeries a, const TruncatedSeries& b);

// Collapse to a single rational function by substituting rho_a =
// rho_values[a-1] (exponents must be integral) and then applying
// symbol_subs to the coefficients. Used for nome expansions.
RationalFunction series_to_rf(const TruncatedSeries& s,
                              const std::vector<RationalFunction>& rho_values,
                              const std::map<VarId, RationalFunction>& symbol_subs);

// Differential form: a series body with an attached form degree per variable.
// Addition requires matching degrees; multiplication adds them.
struct DiffForm {
    TruncatedSeries body;
    std::map<VarId, int> degrees; // no zero entries

    static DiffForm make(TruncatedSeries body, std::map<VarId, int> degrees);
    DiffForm operator+(const DiffForm& o) const;
    DiffForm operator*(const DiffForm& o) const;
    bool equals(const DiffForm& o) const;
};

inline std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
    return os << s.str();
}

} // namespace voac::exact
