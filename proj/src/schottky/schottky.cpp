#include "schottky/schottky.hpp"

#include "exact/errors.hpp"
#include "exact/json_io.hpp"
#include "exact/symbols.hpp"

#include <cstdlib>

namespace voac::schottky {

using exact::Rational;
using exact::RationalFunction;

namespace {

int handle_index(const SchottkyParams& p, int a) {
    int k = std::abs(a);
    if (k < 1 || k > p.g) throw InvalidError("handle index " + std::to_string(a) + " out of range");
    return k - 1;
}

Rational constant_of(const RationalFunction& f, const char* what) {
    if (!f.is_constant()) throw InvalidError(std::string(what) + " is not numeric");
    return f.constant_value();
}

Rational abs_rat(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace

const RationalFunction& SchottkyParams::w(int a) const {
    int i = handle_index(*this, a);
    return a > 0 ? w_plus[i] : w_minus[i];
}

const RationalFunction& SchottkyParams::rho_of(int a) const {
    if (!has_rho()) throw InvalidError("moduli are formal in this parameter set");
    return rho[handle_index(*this, a)];
}

bool SchottkyParams::numeric() const {
    if (!has_rho()) return false;
    for (int i = 0; i < g; ++i)
        if (!w_plus[i].is_constant() || !w_minus[i].is_constant() || !rho[i].is_constant())
            return false;
    return true;
}

Rational SchottkyParams::w_value(int a) const { return constant_of(w(a), "center"); }
Rational SchottkyParams::rho_value(int a) const { return constant_of(rho_of(a), "modulus"); }

SchottkyParams symbolic_params(int g) {
    if (g < 1) throw InvalidError("genus must be positive");
    SchottkyParams p;
    p.g = g;
    for (int a = 1; a <= g; ++a) {
        p.w_plus.push_back(RationalFunction::variable(exact::var_w(a)));
        p.w_minus.push_back(RationalFunction::variable(exact::var_w(-a)));
    }
    return p;
}

nlohmann::json params_json(const SchottkyParams& p) {
    nlohmann::json handles = nlohmann::json::array();
    for (int i = 0; i < p.g; ++i) {
        nlohmann::json h;
        h["w_plus"] = exact::rational_str(constant_of(p.w_plus[i], "center"));
        h["w_minus"] = exact::rational_str(constant_of(p.w_minus[i], "center"));
        h["rho"] = exact::rational_str(constant_of(p.rho[i], "modulus"));
        handles.push_back(h);
    }
    return nlohmann::json{{"g", p.g}, {"handles", handles}};
}

SchottkyParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("g") || !j.contains("handles"))
        throw InvalidError("parameter file needs fields g and handles");
    SchottkyParams p;
    p.g = j.at("g").get<int>();
    const auto& handles = j.at("handles");
    if (!handles.is_array() || static_cast<int>(handles.size()) != p.g || p.g < 1)
        throw InvalidError("handles array must have length g >= 1");
    for (const auto& h : handles) {
        p.w_plus.emplace_back(exact::rational_from_json(h.at("w_plus")));
        p.w_minus.emplace_back(exact::rational_from_json(h.at("w_minus")));
        p.rho.emplace_back(exact::rational_from_json(h.at("rho")));
        if (p.rho.back().constant_value() == 0) throw InvalidError("modulus must be nonzero");
        if (p.w_plus.back() == p.w_minus.back()) throw InvalidError("degenerate handle: equal centers");
    }
    return p;
}

ProjMap ProjMap::identity() {
    return ProjMap{RationalFunction(1), RationalFunction(0), RationalFunction(0),
                   RationalFunction(1)};
}

ProjMap ProjMap::compose(const ProjMap& o) const {
    return ProjMap{A * o.A + B * o.C, A * o.B + B * o.D, C * o.A + D * o.C, C * o.B + D * o.D};
}

ProjMap ProjMap::inverse_map() const { return ProjMap{D, -B, -C, A}; }

RationalFunction ProjMap::apply(const RationalFunction& z) const {
    RationalFunction den = C * z + D;
    if (den.is_zero()) throw PoleError("Mobius map applied at its pole");
    return (A * z + B) / den;
}

RationalFunction ProjMap::det() const { return A * D - B * C; }

bool ProjMap::proportional(const ProjMap& o) const {
    return (A * o.B == B * o.A) && (A * o.C == C * o.A) && (A * o.D == D * o.A) &&
           (B * o.C == C * o.B) && (B * o.D == D * o.B) && (C * o.D == D * o.C);
}

MobiusMap::MobiusMap(Rational a, Rational b, Rational c, Rational d)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)) {
    if (A * D - B * C != 1) throw InvalidError("Mobius map must have determinant 1");
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
    return MobiusMap(A * o.A + B * o.C, A * o.B + B * o.D, C * o.A + D * o.C, C * o.B + D * o.D);
}

Rational MobiusMap::apply(const Rational& z) const {
    Rational den = C * z + D;
    if (den == 0) throw PoleError("Mobius map applied at its pole");
    return (A * z + B) / den;
}

std::string GroupWord::str() const {
    if (letters.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(letters[i]);
    }
    return s;
}

SchottkyParams params_from_fixed_points(const std::vector<RationalFunction>& W_plus,
                                        const std::vector<RationalFunction>& W_minus,
                                        const std::vector<RationalFunction>& q) {
    if (W_plus.size() != W_minus.size() || W_plus.size() != q.size() || W_plus.empty())
        throw InvalidError("fixed point lists must have equal positive length");
    SchottkyParams p;
    p.g = static_cast<int>(W_plus.size());
    for (int i = 0; i < p.g; ++i) {
        if (W_plus[i] == W_minus[i]) throw InvalidError("degenerate handle: equal fixed points");
        if (q[i].is_zero()) throw InvalidError("multiplier must be nonzero");
        if (q[i] == RationalFunction(1)) throw PoleError("multiplier 1 is a parabolic limit");
        RationalFunction one_minus = RationalFunction(1) - q[i];
        RationalFunction diff = W_plus[i] - W_minus[i];
        p.w_plus.push_back((W_plus[i] - q[i] * W_minus[i]) / one_minus);
        p.w_minus.push_back((W_minus[i] - q[i] * W_plus[i]) / one_minus);
        p.rho.push_back(-(q[i] * diff * diff) / (one_minus * one_minus));
    }
    return p;
}

ProjMap generator_map(const SchottkyParams& p, int a) {
    if (a == 0) throw InvalidError("handle index must be nonzero");
    const RationalFunction& wp = p.w(std::abs(a));
    const RationalFunction& wm = p.w(-std::abs(a));
    if (wp == wm) throw InvalidError("degenerate handle: equal centers");
    const RationalFunction& r = p.rho_of(a);
    // gamma_a z = w_{-a} + rho/(z - w_a); the inverse swaps the centers
    if (a > 0) return ProjMap{wm, r - wp * wm, RationalFunction(1), -wp};
    return ProjMap{wp, r - wp * wm, RationalFunction(1), -wm};
}

ProjMap conjugated_generator(const RationalFunction& W_plus, const RationalFunction& W_minus,
                             const RationalFunction& q) {
    ProjMap sigma{RationalFunction(1), -W_minus, RationalFunction(1), -W_plus};
    ProjMap sigma_adj{-W_plus, W_minus, RationalFunction(-1), RationalFunction(1)};
    ProjMap dq{q, RationalFunction(0), RationalFunction(0), RationalFunction(1)};
    return sigma_adj.compose(dq).compose(sigma);
}

FixedPointData fixed_points(const SchottkyParams& p, int a) {
    Rational wp = p.w_value(std::abs(a));
    Rational wm = p.w_value(-std::abs(a));
    Rational r = p.rho_value(a);
    Rational s = wp + wm;
    Rational diff = wp - wm;
    Rational disc = diff * diff + 4 * r;
    if (disc == 0) throw InvalidError("parabolic handle: coincident fixed points");
    if (disc < 0) throw InvalidError("complex fixed points are outside the rational model");
    auto root = exact::rational_sqrt(disc);
    if (!root) throw InvalidError("fixed points are irrational for these parameters");
    Rational r1 = (s + *root) / 2;
    Rational r2 = (s - *root) / 2;
    // q = (w_a - W_a)/(w_a - W_{-a}); the two assignments give q and 1/q
    Rational q1 = (wp - r1) / (wp - r2);
    FixedPointData f;
    if (abs_rat(q1) < 1) {
        f = {r1, r2, q1};
    } else if (abs_rat(q1) > 1) {
        f = {r2, r1, Rational(1) / q1};
    } else {
        throw InvalidError("elliptic handle: multiplier on the unit circle");
    }
    return f;
}

bool sewing_check(const SchottkyParams& p, int a, const Rational& z, const Rational& z_prime) {
    FixedPointData f = fixed_points(p, a);
    if (a < 0) {
        std::swap(f.W_plus, f.W_minus); // inverse handle swaps the roles
    }
    Rational d1 = z_prime - f.W_plus;
    Rational d2 = z - f.W_minus;
    if (d1 == 0 || d2 == 0) throw PoleError("sewing relation evaluated at a fixed point");
    return (z_prime - f.W_minus) * (z - f.W_plus) == f.q * d1 * d2;
}

JordanResult jordan_condition(const SchottkyParams& p) {
    if (!p.numeric()) throw InvalidError("disc condition needs numeric parameters");
    std::vector<int> idx;
    for (int a = 1; a <= p.g; ++a) {
        idx.push_back(a);
        idx.push_back(-a);
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            Rational gap = p.w_value(idx[i]) - p.w_value(idx[j]);
            Rational x = abs_rat(p.rho_value(idx[i]));
            Rational y = abs_rat(p.rho_value(idx[j]));
            // gap^2 > x + y + 2 sqrt(xy), squared once more to stay rational
            Rational t = gap * gap - x - y;
            bool ok = t > 0 && t * t > 4 * x * y;
            if (!ok) return JordanResult{false, idx[i], idx[j]};
        }
    }
    return JordanResult{};
}

SchottkyParams sl2_action(const MobiusMap& gamma, const SchottkyParams& p) {
    RationalFunction A{gamma.A}, B{gamma.B}, C{gamma.C}, D{gamma.D};
    SchottkyParams out;
    out.g = p.g;
    for (int i = 0; i < p.g; ++i) {
        const RationalFunction& wp = p.w_plus[i];
        const RationalFunction& wm = p.w_minus[i];
        const RationalFunction& r = p.rho_of(i + 1);
        RationalFunction denom = (C * wp + D) * (C * wm + D) - r * C * C;
        if (denom.is_zero()) throw PoleError("parameter-space action hits a pole");
        out.w_plus.push_back(((A * wp + B) * (C * wm + D) - r * A * C) / denom);
        out.w_minus.push_back(((A * wm + B) * (C * wp + D) - r * A * C) / denom);
        out.rho.push_back(r / (denom * denom));
    }
    return out;
}

std::vector<GroupWord> enumerate_words(int g, int max_len) {
    if (g < 1) throw InvalidError("genus must be positive");
    if (max_len < 0) throw InvalidError("word length bound must be nonnegative");
    std::vector<int> letters;
    for (int a = 1; a <= g; ++a) {
        letters.push_back(a);
        letters.push_back(-a);
    }
    std::vector<GroupWord> out{GroupWord{}};
    std::size_t level_begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (int a : letters) {
                if (!out[i].letters.empty() && out[i].letters.back() == -a) continue;
                GroupWord w = out[i];
                w.letters.push_back(a);
                out.push_back(std::move(w));
            }
        }
        level_begin = level_end;
    }
    return out;
}

ProjMap word_map(const SchottkyParams& p, const GroupWord& word) {
    ProjMap m = ProjMap::identity();
    for (std::size_t i = 0; i + 1 < word.letters.size(); ++i)
        if (word.letters[i] == -word.letters[i + 1]) throw InvalidError("word is not reduced");
    for (int a : word.letters) m = m.compose(generator_map(p, a));
    return m;
}

std::vector<LimitPoint> limit_point_cloud(const SchottkyParams& p, int max_len) {
    if (!p.numeric()) throw InvalidError("limit set sampling needs numeric parameters");
    std::vector<LimitPoint> out;
    for (const GroupWord& word : enumerate_words(p.g, max_len)) {
        if (word.letters.empty()) continue;
        ProjMap m = word_map(p, word);
        Rational A = m.A.constant_value(), B = m.B.constant_value();
        Rational C = m.C.constant_value(), D = m.D.constant_value();
        Rational det = A * D - B * C;
        LimitPoint lp;
        lp.word = word;
        lp.trace = A + D;
        lp.disc = lp.trace * lp.trace - 4 * det;
        if (lp.disc == 0) {
            lp.parabolic = true;
        } else if (lp.disc > 0) {
            auto root = exact::rational_sqrt(lp.disc);
            if (root) {
                // fixed points solve C z^2 + (D - A) z - B = 0; the attracting
                // one has |derivative| = |det|/(C z + D)^2 < 1
                for (int sign : {1, -1}) {
                    Rational z;
                    if (C != 0) {
                        z = (A - D + sign * *root) / (2 * C);
                    } else if (A != D) {
                        z = B / (D - A); // the finite fixed point of an affine map
                    } else {
                        lp.parabolic = true; // translation
                        break;
                    }
                    Rational cz = C * z + D;
                    if (cz * cz > abs_rat(det)) {
                        lp.point = z;
                        break;
                    }
                    if (C == 0) break; // the other fixed point is infinity
                }
            }
        }
        out.push_back(std::move(lp));
    }
    return out;
}

} // namespace voac::schottky
