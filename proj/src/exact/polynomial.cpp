#include "exact/polynomial.hpp"

#include "exact/errors.hpp"

#include <algorithm>
#include <set>

namespace voac::exact {

int Monomial::degree() const {
    int d = 0;
    for (auto& [id, e] : v) d += e;
    return d;
}

int Monomial::exponent(VarId id) const {
    for (auto& [vid, e] : v)
        if (vid == id) return e;
    return 0;
}

bool Monomial::divides(const Monomial& m) const {
    std::size_t j = 0;
    for (auto& [id, e] : v) {
        while (j < m.v.size() && m.v[j].first < id) ++j;
        if (j == m.v.size() || m.v[j].first != id || m.v[j].second < e) return false;
    }
    return true;
}

Monomial Monomial::divided_into(const Monomial& m) const {
    Monomial out;
    std::size_t i = 0;
    for (auto& [id, e] : m.v) {
        int sub = 0;
        while (i < v.size() && v[i].first < id) ++i;
        if (i < v.size() && v[i].first == id) sub = v[i].second;
        int r = e - sub;
        if (r < 0) throw InvalidError("monomial division is not exact");
        if (r > 0) out.v.emplace_back(id, r);
    }
    return out;
}

std::string Monomial::str() const {
    if (v.empty()) return "1";
    std::string s;
    bool first = true;
    for (auto& [id, e] : v) {
        if (!first) s += "*";
        first = false;
        s += var_name(id);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0, j = 0;
    while (i < a.v.size() || j < b.v.size()) {
        if (j == b.v.size() || (i < a.v.size() && a.v[i].first < b.v[j].first)) {
            out.v.push_back(a.v[i++]);
        } else if (i == a.v.size() || b.v[j].first < a.v[i].first) {
            out.v.push_back(b.v[j++]);
        } else {
            out.v.emplace_back(a.v[i].first, a.v[i].second + b.v[j].second);
            ++i ,++j;
        }
    }
    return out;
}

bool mono_less(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // same degree: leftmost (smallest VarId) difference decides, bigger exponent wins
    std::size_t i = 0, j = 0;
    while (i < a.v.size() && j < b.v.size()) {
        if (a.v[i].first != b.v[j].first)
            // the one holding the smaller VarId has positive exponent there
            return a.v[i].first > b.v[j].first;
        if (a.v[i].second != b.v[j].second) return a.v[i].second < b.v[j].second;
        ++i, ++j;
    }
    return i == a.v.size() && j < b.v.size();
}

namespace {
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_less(a, b); }
};
} // namespace

Polynomial::Polynomial(const Rational& c) {
    if (c != 0) terms_.push_back({Monomial{}, c});
}

Polynomial::Polynomial(long long c) : Polynomial(Rational(c)) {}

Polynomial Polynomial::variable(VarId id) {
    Polynomial p;
    p.terms_.push_back({Monomial{{{id, 1}}}, Rational(1)});
    return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> ts) {
    std::map<Monomial, Rational, MonoLess> acc;
    for (auto& t : ts) {
        if (t.coeff == 0) continue;
        auto [it, fresh] = acc.emplace(t.mono, t.coeff);
        if (!fresh) it->second += t.coeff;
    }
    Polynomial p;
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (it->second != 0) p.terms_.push_back({it->first, it->second});
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw InvalidError("polynomial is not constant: " + str());
    return terms_[0].coeff;
}

int Polynomial::degree() const {
    if (terms_.empty()) return -1;
    return terms_[0].mono.degree();
}

int Polynomial::degree_in(VarId id) const {
    int d = 0;
    for (auto& t : terms_) d = std::max(d, t.mono.exponent(id));
    return d;
}

const Term& Polynomial::leading() const {
    if (terms_.empty()) throw InvalidError("leading term of zero polynomial");
    return terms_[0];
}

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() ||
            (i < terms_.size() && mono_less(o.terms_[j].mono, terms_[i].mono))) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() || mono_less(terms_[i].mono, o.terms_[j].mono)) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].coeff + o.terms_[j].coeff;
            if (c != 0) out.push_back({terms_[i].mono, c});
            ++i, ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial operator+(Polynomial a, const Polynomial& b) {
    a += b;
    return a;
}

Polynomial operator-(Polynomial a, const Polynomial& b) {
    a -= b;
    return a;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::map<Monomial, Rational, MonoLess> acc;
    for (auto& ta : a.terms()) {
        for (auto& tb : b.terms()) {
            Monomial m = ta.mono * tb.mono;
            Rational c = ta.coeff * tb.coeff;
            auto [it, fresh] = acc.emplace(std::move(m), c);
            if (!fresh) it->second += c;
        }
    }
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (it->second != 0) ts.push_back({it->first, it->second});
    return Polynomial::from_terms(std::move(ts));
}

Polynomial Polynomial::scaled(const Rational& c) const {
    if (c == 0) return Polynomial();
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff *= c;
    return p;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial acc(Rational(1));
    Polynomial base = *this;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

std::optional<Polynomial> Polynomial::exact_div(const Polynomial& d) const {
    if (d.is_zero()) throw PoleError("division by zero polynomial");
    Polynomial r = *this;
    std::vector<Term> q;
    while (!r.is_zero()) {
        const Term& lr = r.leading();
        const Term& ld = d.leading();
        if (!ld.mono.divides(lr.mono)) return std::nullopt;
        Term t{ld.mono.divided_into(lr.mono), lr.coeff / ld.coeff};
        q.push_back(t);
        Polynomial tp;
        tp = Polynomial::from_terms({t});
        r -= tp * d;
    }
    return Polynomial::from_terms(std::move(q));
}

Polynomial Polynomial::derivative(VarId id) const {
    std::vector<Term> out;
    for (auto& t : terms_) {
        int e = t.mono.exponent(id);
        if (e == 0) continue;
        Monomial m;
        for (auto& [vid, ve] : t.mono.v) {
            if (vid == id) {
                if (ve > 1) m.v.emplace_back(vid, ve - 1);
            } else {
                m.v.emplace_back(vid, ve);
            }
        }
        out.push_back({std::move(m), t.coeff * e});
    }
    return Polynomial::from_terms(std::move(out));
}

Polynomial Polynomial::substitute(VarId id, const Rational& value) const {
    std::map<VarId, Rational> m{{id, value}};
    return substitute(m);
}

Polynomial Polynomial::substitute(const std::map<VarId, Rational>& values) const {
    std::vector<Term> out;
    for (auto& t : terms_) {
        Rational c = t.coeff;
        Monomial m;
        for (auto& [vid, ve] : t.mono.v) {
            auto it = values.find(vid);
            if (it == values.end()) {
                m.v.emplace_back(vid, ve);
            } else {
                c *= pow_int(it->second, ve);
            }
        }
        if (c != 0) out.push_back({std::move(m), c});
    }
    return Polynomial::from_terms(std::move(out));
}

Polynomial Polynomial::substitute(VarId id, const Polynomial& g) const {
    // Horner over powers of id
    auto coeffs = coefficients_in(id);
    Polynomial acc;
    int prev = -1;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        if (prev >= 0)
            for (int k = prev; k > it->first; --k) acc *= g;
        acc += it->second;
        prev = it->first;
    }
    if (prev > 0)
        for (int k = prev; k > 0; --k) acc *= g;
    return acc;
}

Polynomial Polynomial::rename(const std::map<VarId, VarId>& m) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        Monomial mo;
        for (auto& [vid, ve] : t.mono.v) {
            auto it = m.find(vid);
            mo.v.emplace_back(it == m.end() ? vid : it->second, ve);
        }
        std::sort(mo.v.begin(), mo.v.end());
        // merge duplicates introduced by collapsing renames
        Monomial merged;
        for (auto& [vid, ve] : mo.v) {
            if (!merged.v.empty() && merged.v.back().first == vid)
                merged.v.back().second += ve;
            else
                merged.v.emplace_back(vid, ve);
        }
        out.push_back({std::move(merged), t.coeff});
    }
    return Polynomial::from_terms(std::move(out));
}

Rational Polynomial::evaluate(const std::map<VarId, Rational>& values) const {
    Polynomial p = substitute(values);
    if (!p.is_constant()) throw InvalidError("evaluation left free variables in " + p.str());
    return p.constant_value();
}

std::vector<VarId> Polynomial::variables() const {
    std::set<VarId> s;
    for (auto& t : terms_)
        for (auto& [vid, ve] : t.mono.v) s.insert(vid);
    return {s.begin(), s.end()};
}

std::map<int, Polynomial> Polynomial::coefficients_in(VarId id) const {
    std::map<int, std::vector<Term>> buckets;
    for (auto& t : terms_) {
        int e = t.mono.exponent(id);
        Monomial m;
        for (auto& [vid, ve] : t.mono.v)
            if (vid != id) m.v.emplace_back(vid, ve);
        buckets[e].push_back({std::move(m), t.coeff});
    }
    std::map<int, Polynomial> out;
    for (auto& [e, ts] : buckets) out.emplace(e, Polynomial::from_terms(std::move(ts)));
    return out;
}

Rational Polynomial::leading_coeff() const { return leading().coeff; }

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / leading_coeff());
}

Rational Polynomial::content() const {
    if (is_zero()) return Rational(0);
    Integer g = 0, l = 1;
    for (auto& t : terms_) {
        g = gcd(g, numerator(t.coeff));
        l = lcm(l, denominator(t.coeff));
    }
    Rational c = Rational(g) / Rational(l);
    if (leading_coeff() < 0) c = -c;
    return c;
}

Polynomial Polynomial::primitive() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / content());
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& t : terms_) {
        Rational c = t.coeff;
        if (first) {
            if (c < 0) {
                s += "-";
                c = -c;
            }
        } else {
            s += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        first = false;
        if (t.mono.is_one()) {
            s += rational_str(c);
        } else {
            if (c != 1) s += rational_str(c) + "*";
            s += t.mono.str();
        }
    }
    return s;
}

bool poly_less(const Polynomial& a, const Polynomial& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t n = std::min(ta.size(), tb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (ta[i].mono == tb[i].mono) {
            if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff;
        } else {
            return mono_less(ta[i].mono, tb[i].mono);
        }
    }
    return ta.size() < tb.size();
}

} // namespace voac::exact
