#include "exact/series.hpp"

#include "exact/errors.hpp"

#include <numeric>

namespace voac::exact {

namespace {
int half_sum(const std::vector<int>& e) { return std::accumulate(e.begin(), e.end(), 0); }
} // namespace

TruncatedSeries::TruncatedSeries(int genus, int order2) : genus_(genus), order2_(order2) {
    if (genus < 1) throw InvalidError("series genus must be >= 1");
    if (order2 < 0) throw InvalidError("series order must be >= 0");
}

TruncatedSeries TruncatedSeries::one(int genus, int order2) {
    TruncatedSeries s(genus, order2);
    s.terms_.emplace(std::vector<int>(genus, 0), RationalFunction(Rational(1)));
    return s;
}

TruncatedSeries TruncatedSeries::monomial(int genus, int order2, const std::vector<int>& exp2,
                                          const RationalFunction& c) {
    TruncatedSeries s(genus, order2);
    s.add_term(exp2, c);
    return s;
}

RationalFunction TruncatedSeries::coefficient(const std::vector<int>& exp2) const {
    auto it = terms_.find(exp2);
    return it == terms_.end() ? RationalFunction() : it->second;
}

void TruncatedSeries::add_term(const std::vector<int>& exp2, const RationalFunction& c) {
    if (static_cast<int>(exp2.size()) != genus_)
        throw InvalidError("exponent vector length mismatch");
    if (c.is_zero() || half_sum(exp2) > order2_) return;
    auto [it, fresh] = terms_.emplace(exp2, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries s(genus_, order2_);
    for (auto& [e, c] : terms_) s.terms_.emplace(e, -c);
    return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    if (o.genus_ != genus_ || o.order2_ != order2_)
        throw InvalidError("series genus/order mismatch in addition");
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
    return *this += -o;
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& o) {
    if (o.genus_ != genus_ || o.order2_ != order2_)
        throw InvalidError("series genus/order mismatch in multiplication");
    TruncatedSeries out(genus_, order2_);
    for (auto& [ea, ca] : terms_) {
        for (auto& [eb, cb] : o.terms_) {
            std::vector<int> e(genus_);
            for (int i = 0; i < genus_; ++i) e[i] = ea[i] + eb[i];
            if (half_sum(e) > order2_) continue;
            out.add_term(e, ca * cb);
        }
    }
    return *this = std::move(out);
}

TruncatedSeries TruncatedSeries::scaled(const RationalFunction& c) const {
    TruncatedSeries s(genus_, order2_);
    if (c.is_zero()) return s;
    for (auto& [e, co] : terms_) s.add_term(e, co * c);
    return s;
}

TruncatedSeries TruncatedSeries::mul_monomial(const std::vector<int>& exp2,
                                              const RationalFunction& c) const {
    if (static_cast<int>(exp2.size()) != genus_)
        throw InvalidError("exponent vector length mismatch");
    TruncatedSeries s(genus_, order2_);
    if (c.is_zero()) return s;
    for (auto& [e, co] : terms_) {
        std::vector<int> e2(genus_);
        for (int i = 0; i < genus_; ++i) e2[i] = e[i] + exp2[i];
        s.add_term(e2, co * c);
    }
    return s;
}

TruncatedSeries TruncatedSeries::geometric_inverse() const {
    std::vector<int> zero(genus_, 0);
    auto c0it = terms_.find(zero);
    if (c0it == terms_.end()) throw PoleError("series has no invertible constant term");
    for (auto& [e, c] : terms_) {
        if (e == zero) continue;
        bool nonneg = true;
        for (int x : e) nonneg = nonneg && x >= 0;
        if (!nonneg || half_sum(e) <= 0)
            throw InvalidError("geometric inverse needs positive nonconstant exponents");
    }
    RationalFunction c0inv = c0it->second.inverse();
    // u = this/c0 - 1; inverse = (1/c0) * sum (-u)^k
    TruncatedSeries u = scaled(c0inv);
    u.terms_.erase(zero);
    TruncatedSeries acc = one(genus_, order2_);
    TruncatedSeries p = one(genus_, order2_);
    for (int k = 1; k <= order2_; ++k) {
        p *= u;
        if (p.is_zero()) break;
        if (k % 2)
            acc -= p;
        else
            acc += p;
    }
    return acc.scaled(c0inv);
}

TruncatedSeries TruncatedSeries::truncated(int new_order2) const {
    TruncatedSeries s(genus_, new_order2);
    for (auto& [e, c] : terms_) s.add_term(e, c);
    return s;
}

TruncatedSeries TruncatedSeries::eval_coeffs(const std::map<VarId, Rational>& values) const {
    TruncatedSeries s(genus_, order2_);
    for (auto& [e, c] : terms_) s.add_term(e, c.eval_at(values));
    return s;
}

bool TruncatedSeries::nonnegative_exponents() const {
    for (auto& [e, c] : terms_)
        for (int x : e)
            if (x < 0) return false;
    return true;
}

std::string TruncatedSeries::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (!first) s += " + ";
        first = false;
        s += "(" + c.str() + ")";
        for (int a = 0; a < genus_; ++a) {
            if (e[a] == 0) continue;
            s += " rho_" + std::to_string(a + 1) + "^(" + std::to_string(e[a]) + "/2)";
        }
    }
    return s;
}

bool TruncatedSeries::equals(const TruncatedSeries& o) const {
    if (genus_ != o.genus_ || order2_ != o.order2_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (auto& [e, c] : terms_) {
        auto it = o.terms_.find(e);
        if (it == o.terms_.end() || !c.equals(it->second)) return false;
    }
    return true;
}

TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
TruncatedSeries operator*(TruncatedSeries a, const TruncatedSeries& b) { return a *= b; }

RationalFunction series_to_rf(const TruncatedSeries& s,
                              const std::vector<RationalFunction>& rho_values,
                              const std::map<VarId, RationalFunction>& symbol_subs) {
    if (static_cast<int>(rho_values.size()) != s.genus())
        throw InvalidError("rho substitution length mismatch");
    RationalFunction out;
    for (auto& [e, c] : s.terms()) {
        RationalFunction term = c;
        for (auto& [id, g] : symbol_subs) term = term.substitute(id, g);
        for (int a = 0; a < s.genus(); ++a) {
            if (e[a] == 0) continue;
            if (e[a] % 2 != 0)
                throw InvalidError("cannot collapse a half-integral rho exponent");
            int p = e[a] / 2;
            RationalFunction f = p > 0 ? rho_values[a] : rho_values[a].inverse();
            for (int i = 0; i < std::abs(p); ++i) term *= f;
        }
        out += term;
    }
    return out;
}

DiffForm DiffForm::make(TruncatedSeries body, std::map<VarId, int> degrees) {
    for (auto it = degrees.begin(); it != degrees.end();)
        it = it->second == 0 ? degrees.erase(it) : std::next(it);
    return {std::move(body), std::move(degrees)};
}

DiffForm DiffForm::operator+(const DiffForm& o) const {
    if (degrees != o.degrees) throw InvalidError("adding differential forms of unequal degree");
    return {body + o.body, degrees};
}

DiffForm DiffForm::operator*(const DiffForm& o) const {
    std::map<VarId, int> d = degrees;
    for (auto& [v, k] : o.degrees) {
        d[v] += k;
        if (d[v] == 0) d.erase(v);
    }
    return {body * o.body, std::move(d)};
}

bool DiffForm::equals(const DiffForm& o) const {
    return degrees == o.degrees && body.equals(o.body);
}

} // namespace voac::exact
