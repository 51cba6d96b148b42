#include "exact/ratfun.hpp"

#include "exact/errors.hpp"

#include <set>

namespace voac::exact {

RationalFunction::RationalFunction(const Rational& c) : num_(c) {}
RationalFunction::RationalFunction(long long c) : num_(c) {}
RationalFunction::RationalFunction(Polynomial p) : num_(std::move(p)) {}

RationalFunction::RationalFunction(Polynomial num, FactorMap den) : num_(std::move(num)) {
    for (auto& [f, m] : den) push_factor(f, m);
    reduce();
}

RationalFunction RationalFunction::variable(VarId id) {
    return RationalFunction(Polynomial::variable(id));
}

RationalFunction RationalFunction::quotient(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw PoleError("zero denominator");
    RationalFunction r(num);
    r.push_factor(den, 1);
    r.reduce();
    return r;
}

void RationalFunction::push_factor(Polynomial f, int mult) {
    if (mult == 0) return;
    if (mult < 0) throw InvalidError("negative factor multiplicity");
    if (f.is_zero()) throw PoleError("zero denominator factor");
    if (f.is_constant()) {
        num_ = num_.scaled(pow_int(Rational(1) / f.constant_value(), mult));
        return;
    }
    Rational lead = f.leading_coeff();
    if (lead != 1) {
        f = f.monic();
        num_ = num_.scaled(pow_int(Rational(1) / lead, mult));
    }
    den_[std::move(f)] += mult;
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        while (it->second > 0) {
            auto q = num_.exact_div(it->first);
            if (!q) break;
            num_ = std::move(*q);
            --it->second;
            if (num_.is_zero()) {
                den_.clear();
                return;
            }
        }
        it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
}

Rational RationalFunction::constant_value() const {
    if (!is_constant()) throw InvalidError("rational function is not constant: " + str());
    return num_.constant_value();
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::scaled(const Rational& c) const {
    if (c == 0) return RationalFunction();
    RationalFunction r = *this;
    r.num_ = r.num_.scaled(c);
    return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    // common denominator: max multiplicity per factor
    FactorMap common = den_;
    for (auto& [f, m] : o.den_) {
        auto it = common.find(f);
        if (it == common.end())
            common.emplace(f, m);
        else
            it->second = std::max(it->second, m);
    }
    Polynomial n1 = num_, n2 = o.num_;
    for (auto& [f, m] : common) {
        int m1 = 0, m2 = 0;
        if (auto it = den_.find(f); it != den_.end()) m1 = it->second;
        if (auto it = o.den_.find(f); it != o.den_.end()) m2 = it->second;
        if (m > m1) n1 *= f.pow(static_cast<unsigned>(m - m1));
        if (m > m2) n2 *= f.pow(static_cast<unsigned>(m - m2));
    }
    num_ = n1 + n2;
    den_ = std::move(common);
    reduce();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    if (is_zero() || o.is_zero()) return *this = RationalFunction();
    num_ *= o.num_;
    for (auto& [f, m] : o.den_) den_[f] += m;
    reduce();
    return *this;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw PoleError("inverse of zero");
    Polynomial newnum(Rational(1));
    for (auto& [f, m] : den_) newnum *= f.pow(static_cast<unsigned>(m));
    RationalFunction r(std::move(newnum));
    r.push_factor(num_, 1);
    r.reduce();
    return r;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
    return *this *= o.inverse();
}

RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

bool RationalFunction::equals(const RationalFunction& o) const {
    if (num_.is_zero()) return o.num_.is_zero();
    if (o.num_.is_zero()) return false;
    return num_ * o.den_expanded() == o.num_ * den_expanded();
}

Polynomial RationalFunction::den_expanded() const {
    Polynomial d(Rational(1));
    for (auto& [f, m] : den_) d *= f.pow(static_cast<unsigned>(m));
    return d;
}

RationalFunction RationalFunction::derivative(VarId id) const {
    // d(N/D) = N'/D + N * sum_i (-m_i) f_i' / (f_i * D)
    RationalFunction out(num_.derivative(id));
    for (auto& [f, m] : den_) out.push_factor(f, m);
    out.reduce();
    for (auto& [f, m] : den_) {
        Polynomial fp = f.derivative(id);
        if (fp.is_zero()) continue;
        RationalFunction piece(num_ * fp.scaled(Rational(-m)));
        for (auto& [g, mg] : den_) piece.push_factor(g, mg);
        piece.push_factor(f, 1);
        piece.reduce();
        out += piece;
    }
    return out;
}

RationalFunction RationalFunction::divided_derivative(VarId id, unsigned k) const {
    RationalFunction f = *this;
    for (unsigned i = 1; i <= k; ++i) {
        f = f.derivative(id);
        f = f * RationalFunction(Rational(1) / Rational(i));
    }
    return f;
}

RationalFunction RationalFunction::eval_at(const std::map<VarId, Rational>& values) const {
    RationalFunction out(num_.substitute(values));
    for (auto& [f, m] : den_) {
        Polynomial g = f.substitute(values);
        if (g.is_zero() || (g.is_constant() && g.constant_value() == 0))
            throw PoleError("denominator factor vanished under substitution: " + f.str());
        out.push_factor(std::move(g), m);
    }
    out.reduce();
    return out;
}

RationalFunction RationalFunction::rename(const std::map<VarId, VarId>& m) const {
    RationalFunction out(num_.rename(m));
    for (auto& [f, mult] : den_) {
        Polynomial g = f.rename(m);
        if (g.is_zero() || (g.is_constant() && g.constant_value() == 0))
            throw PoleError("denominator factor vanished under renaming: " + f.str());
        out.push_factor(std::move(g), mult);
    }
    out.reduce();
    return out;
}

RationalFunction RationalFunction::substitute(VarId id, const RationalFunction& g) const {
    auto horner = [&](const Polynomial& p) {
        RationalFunction acc;
        auto coeffs = p.coefficients_in(id);
        int prev = -1;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            if (prev >= 0)
                for (int k = prev; k > it->first; --k) acc *= g;
            acc += RationalFunction(it->second);
            prev = it->first;
        }
        if (prev > 0)
            for (int k = prev; k > 0; --k) acc *= g;
        return acc;
    };
    RationalFunction out = horner(num_);
    for (auto& [f, m] : den_) {
        RationalFunction fs = horner(f);
        if (fs.is_zero()) throw PoleError("denominator factor vanished under substitution: " + f.str());
        for (int i = 0; i < m; ++i) out /= fs;
    }
    return out;
}

Rational RationalFunction::evaluate(const std::map<VarId, Rational>& values) const {
    Rational n = num_.evaluate(values);
    Rational d = 1;
    for (auto& [f, m] : den_) {
        Rational fv = f.evaluate(values);
        if (fv == 0) throw PoleError("pole at evaluation point: " + f.str());
        d *= pow_int(fv, m);
    }
    return n / d;
}

std::vector<VarId> RationalFunction::variables() const {
    std::set<VarId> s;
    for (VarId v : num_.variables()) s.insert(v);
    for (auto& [f, m] : den_)
        for (VarId v : f.variables()) s.insert(v);
    return {s.begin(), s.end()};
}

std::string RationalFunction::str() const {
    if (den_.empty()) return num_.str();
    std::string s = "(" + num_.str() + ") / (";
    bool first = true;
    for (auto& [f, m] : den_) {
        if (!first) s += " * ";
        first = false;
        s += "(" + f.str() + ")";
        if (m != 1) s += "^" + std::to_string(m);
    }
    return s + ")";
}

std::pair<std::string, std::string> RationalFunction::num_den_strings() const {
    if (num_.is_zero()) return {"0", "1"};
    Polynomial d = den_expanded();
    // scale both by the same rational so each becomes integer-primitive-ish,
    // then strip the shared integer content
    Integer ln = 1, ld = 1;
    for (auto& t : num_.terms()) ln = lcm(ln, denominator(t.coeff));
    for (auto& t : d.terms()) ld = lcm(ld, denominator(t.coeff));
    Rational scale = Rational(lcm(ln, ld));
    Polynomial n2 = num_.scaled(scale);
    Polynomial d2 = d.scaled(scale);
    Integer g = 0;
    for (auto& t : n2.terms()) g = gcd(g, numerator(t.coeff));
    for (auto& t : d2.terms()) g = gcd(g, numerator(t.coeff));
    if (g > 1) {
        n2 = n2.scaled(Rational(1) / Rational(g));
        d2 = d2.scaled(Rational(1) / Rational(g));
    }
    if (d2.leading_coeff() < 0) {
        n2 = -n2;
        d2 = -d2;
    }
    return {n2.str(), d2.str()};
}

std::vector<Rational> taylor_coefficients(const RationalFunction& f, VarId id,
                                          const Rational& at, unsigned count) {
    std::vector<Rational> out;
    RationalFunction cur = f;
    for (unsigned k = 0; k < count; ++k) {
        out.push_back(cur.eval_at({{id, at}}).constant_value());
        if (k + 1 < count) {
            cur = cur.derivative(id);
            cur = cur * RationalFunction(Rational(1) / Rational(k + 1));
        }
    }
    return out;
}

} // namespace voac::exact
