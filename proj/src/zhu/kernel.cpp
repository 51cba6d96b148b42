#include "zhu/kernel.hpp"

#include "exact/errors.hpp"
#include "exact/symbols.hpp"

#include <cstdlib>

namespace voac::zhu {

using exact::Polynomial;
using exact::Rational;
using exact::RationalFunction;
using exact::TruncatedSeries;
using exact::VarId;

namespace {

// chi needs interior data at order T + (p-1): the theta fold multiplies by
// rho^{p-1-l}, which reaches down by p-1 full orders
int internal_order2(const KernelConfig& cfg) { return cfg.T2 + 2 * (cfg.p - 1); }

std::vector<int> rho_exp(const KernelConfig& cfg, int a, int half_units) {
    std::vector<int> e(static_cast<std::size_t>(cfg.g), 0);
    e[static_cast<std::size_t>(std::abs(a) - 1)] = half_units;
    return e;
}

TruncatedSeries wrap(const KernelConfig& cfg, int order2, int a, int half_units,
                     const RationalFunction& coeff) {
    return TruncatedSeries::monomial(cfg.g, order2, rho_exp(cfg, a, half_units), coeff);
}

void guard_point(const KernelConfig& cfg, VarId v, const char* what) {
    for (int a = 1; a <= cfg.g; ++a)
        if (v == exact::var_w(a) || v == exact::var_w(-a))
            throw InvalidError(std::string(what) + " collides with a sewing center symbol");
}

std::vector<int> signed_handles(int g) {
    std::vector<int> out;
    for (int a = 1; a <= g; ++a) {
        out.push_back(a);
        out.push_back(-a);
    }
    return out;
}

// interior assembly shared by psi_full and chi_theta, at a chosen order
struct Assembled {
    ModeMatrix R;
    ModeMatrix rtilde;
    ModeMatrix resolv;
};

ModeMatrix rtilde_of(const KernelConfig& cfg, const ModeMatrix& R) {
    ModeMatrix out;
    for (const auto& [key, s] : R) {
        int n = key.second.second;
        if (n < cfg.shift()) continue; // R Delta shifts the column index down
        out.emplace(MatKey{key.first, {key.second.first, n - cfg.shift()}}, s);
    }
    return out;
}

ModeMatrix resolvent_at(const KernelConfig& cfg, const ModeMatrix& rtilde, int order2) {
    int K = cfg.p > 0 ? (order2 + cfg.shift() - 1) / cfg.shift() : 0;
    ModeMatrix acc = mode_identity(cfg, order2);
    ModeMatrix power = mode_identity(cfg, order2);
    for (int k = 1; k <= K; ++k) {
        power = mode_mat_mul(power, rtilde);
        if (power.empty()) break;
        acc = mode_mat_add(acc, power);
    }
    return acc;
}

ModeMatrix r_matrix_at(const KernelConfig& cfg, int order2);
ModeVector p_vector_at(const KernelConfig& cfg, VarId x, int order2);
ModeVector q_vector_at(const KernelConfig& cfg, VarId y, int order2);

// p~ = p Delta: (p Delta)_a(m) = p_a(m + 2p - 1)
ModeVector ptilde_of(const KernelConfig& cfg, const ModeVector& p) {
    ModeVector out;
    for (const auto& [key, s] : p) {
        int m = key.second;
        if (m < cfg.shift()) continue;
        out.emplace(ModeKey{key.first, m - cfg.shift()}, s);
    }
    return out;
}

ModeMatrix r_matrix_at(const KernelConfig& cfg, int order2) {
    ModeMatrix out;
    int M = cfg.mode_cutoff();
    for (int a : signed_handles(cfg.g)) {
        VarId wma = exact::var_w(-a);
        for (int b : signed_handles(cfg.g)) {
            if (a == -b) {
                for (int m = 0; m <= M; ++m) {
                    for (int n = 0; n <= M; ++n) {
                        if (m + n + 1 > order2) continue;
                        RationalFunction e = E_entry(cfg, m, n, wma);
                        if (e.is_zero()) continue;
                        if (cfg.p % 2) e = -e;
                        TruncatedSeries s = wrap(cfg, order2, a, m + n + 1, e);
                        if (!s.is_zero()) out.emplace(MatKey{{a, m}, {b, n}}, std::move(s));
                    }
                }
                continue;
            }
            VarId wb = exact::var_w(b);
            RationalFunction base = psi0(cfg, wma, wb);
            RationalFunction dm = base;
            for (int m = 0; m <= M; ++m) {
                if (m > 0) dm = dm.derivative(wma).scaled(Rational(1, m));
                RationalFunction dmn = dm;
                for (int n = 0; n <= M; ++n) {
                    if (n > 0) dmn = dmn.derivative(wb).scaled(Rational(1, n));
                    // rho_a^{(m+1)/2} rho_b^{n/2}; same slot when |a| == |b|
                    std::vector<int> e(static_cast<std::size_t>(cfg.g), 0);
                    e[static_cast<std::size_t>(std::abs(a) - 1)] += m + 1;
                    e[static_cast<std::size_t>(std::abs(b) - 1)] += n;
                    int total = m + 1 + n;
                    if (total > order2) break;
                    RationalFunction c = cfg.p % 2 ? -dmn : dmn;
                    if (c.is_zero()) continue;
                    TruncatedSeries s = TruncatedSeries::monomial(cfg.g, order2, e, c);
                    if (!s.is_zero()) out.emplace(MatKey{{a, m}, {b, n}}, std::move(s));
                }
            }
        }
    }
    return out;
}

ModeVector p_vector_at(const KernelConfig& cfg, VarId x, int order2) {
    guard_point(cfg, x, "insertion point");
    ModeVector out;
    int M = cfg.mode_cutoff();
    for (int a : signed_handles(cfg.g)) {
        VarId wa = exact::var_w(a);
        RationalFunction base = psi0(cfg, x, wa);
        RationalFunction dm = base;
        for (int m = 0; m <= M; ++m) {
            if (m > 0) dm = dm.derivative(wa).scaled(Rational(1, m));
            if (m > order2) break; // rho-order m/2 exceeds the window
            if (dm.is_zero()) continue;
            TruncatedSeries s = wrap(cfg, order2, a, m, dm);
            if (!s.is_zero()) out.emplace(ModeKey{a, m}, std::move(s));
        }
    }
    return out;
}

ModeVector q_vector_at(const KernelConfig& cfg, VarId y, int order2) {
    guard_point(cfg, y, "insertion point");
    ModeVector out;
    int M = cfg.mode_cutoff();
    for (int a : signed_handles(cfg.g)) {
        VarId wma = exact::var_w(-a);
        RationalFunction base = psi0(cfg, wma, y);
        RationalFunction dm = base;
        for (int m = 0; m <= M; ++m) {
            if (m > 0) dm = dm.derivative(wma).scaled(Rational(1, m));
            if (m + 1 > order2) break;
            RationalFunction c = cfg.p % 2 ? -dm : dm;
            if (c.is_zero()) continue;
            TruncatedSeries s = wrap(cfg, order2, a, m + 1, c);
            if (!s.is_zero()) out.emplace(ModeKey{a, m}, std::move(s));
        }
    }
    return out;
}

} // namespace

void KernelConfig::validate() const {
    if (g < 1) throw InvalidError("genus must be positive");
    if (p < 1) throw InvalidError("reducing weight must be positive");
    if (T2 < 0) throw InvalidError("truncation order must be nonnegative");
    if (M != -1 && M < T2 + 2 * p)
        throw InvalidError("mode cutoff must be at least 2T + 2p");
    if (static_cast<int>(f.size()) > 2 * p - 1)
        throw InvalidError("at most 2p-1 Laurent coefficients f_0..f_{2p-2}");
}

int KernelConfig::mode_cutoff() const {
    validate();
    if (M != -1) return M;
    // the theta fold needs interior accuracy T + p - 1, which costs an extra
    // 2p - 2 of index range on top of the 2T + 2p minimum
    return p == 1 ? T2 + 2 : T2 + 4 * p - 4;
}

RationalFunction psi0(const KernelConfig& cfg, VarId x, VarId y) {
    cfg.validate();
    if (x == y) throw InvalidError("kernel arguments must be distinct symbols");
    RationalFunction out = RationalFunction::quotient(
        Polynomial(1), Polynomial::variable(x) - Polynomial::variable(y));
    Polynomial ypoly = Polynomial::variable(y);
    Polynomial ypow(1);
    for (std::size_t l = 0; l < cfg.f.size(); ++l) {
        if (!cfg.f[l].is_zero())
            out += cfg.f[l].rename({{exact::var_x(), x}}) * RationalFunction(ypow);
        ypow = ypow * ypoly;
    }
    return out;
}

RationalFunction E_entry(const KernelConfig& cfg, int m, int n, VarId y) {
    cfg.validate();
    if (m < 0 || n < 0) throw InvalidError("mode indices must be nonnegative");
    RationalFunction out;
    for (std::size_t l = 0; l < cfg.f.size(); ++l) {
        if (cfg.f[l].is_zero()) continue;
        if (n > static_cast<int>(l)) continue; // d^(n) y^l vanishes
        RationalFunction fl = cfg.f[l].rename({{exact::var_x(), y}});
        RationalFunction dfl = fl.divided_derivative(y, static_cast<unsigned>(m));
        Rational binom(exact::binomial(static_cast<long long>(l), static_cast<unsigned>(n)));
        Polynomial ypow(1);
        for (int i = 0; i < static_cast<int>(l) - n; ++i)
            ypow = ypow * Polynomial::variable(y);
        out += dfl * RationalFunction(ypow).scaled(binom);
    }
    return out;
}

ModeVector p_vector(const KernelConfig& cfg, VarId x) { return p_vector_at(cfg, x, cfg.T2); }
ModeVector q_vector(const KernelConfig& cfg, VarId y) { return q_vector_at(cfg, y, cfg.T2); }
ModeMatrix R_matrix(const KernelConfig& cfg) { return r_matrix_at(cfg, cfg.T2); }

ModeMatrix delta_matrix(const KernelConfig& cfg) {
    cfg.validate();
    ModeMatrix out;
    int M = cfg.mode_cutoff();
    for (int a : signed_handles(cfg.g))
        for (int n = 0; n + cfg.shift() <= M; ++n)
            out.emplace(MatKey{{a, n + cfg.shift()}, {a, n}}, TruncatedSeries::one(cfg.g, cfg.T2));
    return out;
}

ModeMatrix mode_identity(const KernelConfig& cfg, int order2) {
    ModeMatrix out;
    int M = cfg.mode_cutoff();
    for (int a : signed_handles(cfg.g))
        for (int m = 0; m <= M; ++m)
            out.emplace(MatKey{{a, m}, {a, m}}, TruncatedSeries::one(cfg.g, order2));
    return out;
}

ModeMatrix mode_mat_mul(const ModeMatrix& A, const ModeMatrix& B) {
    std::map<ModeKey, std::vector<std::pair<ModeKey, const TruncatedSeries*>>> rows;
    for (const auto& [key, s] : B) rows[key.first].emplace_back(key.second, &s);
    ModeMatrix out;
    for (const auto& [key, s] : A) {
        auto it = rows.find(key.second);
        if (it == rows.end()) continue;
        for (const auto& [col, t] : it->second) {
            TruncatedSeries prod = s * *t;
            if (prod.is_zero()) continue;
            auto [slot, fresh] = out.try_emplace(MatKey{key.first, col}, prod);
            if (!fresh) slot->second += prod;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

ModeMatrix mode_mat_add(const ModeMatrix& A, const ModeMatrix& B) {
    ModeMatrix out = A;
    for (const auto& [key, s] : B) {
        auto [slot, fresh] = out.try_emplace(key, s);
        if (!fresh) slot->second += s;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

ModeVector vec_mat_mul(const ModeVector& v, const ModeMatrix& A) {
    ModeVector out;
    for (const auto& [key, s] : A) {
        auto it = v.find(key.first);
        if (it == v.end()) continue;
        TruncatedSeries prod = it->second * s;
        if (prod.is_zero()) continue;
        auto [slot, fresh] = out.try_emplace(key.second, prod);
        if (!fresh) slot->second += prod;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

TruncatedSeries vec_dot(const ModeVector& v, const ModeVector& w, int genus, int order2) {
    TruncatedSeries acc(genus, order2);
    for (const auto& [key, s] : v) {
        auto it = w.find(key);
        if (it == w.end()) continue;
        acc += s * it->second;
    }
    return acc;
}

ModeMatrix resolvent(const KernelConfig& cfg) {
    cfg.validate();
    return resolvent_at(cfg, rtilde_of(cfg, r_matrix_at(cfg, cfg.T2)), cfg.T2);
}

exact::DiffForm psi_full(const KernelConfig& cfg, VarId x, VarId y) {
    cfg.validate();
    if (x == y) throw InvalidError("kernel arguments must be distinct symbols");
    int order2 = cfg.T2;
    ModeVector p = p_vector_at(cfg, x, order2);
    ModeVector q = q_vector_at(cfg, y, order2);
    ModeMatrix resolv = resolvent_at(cfg, rtilde_of(cfg, r_matrix_at(cfg, order2)), order2);
    TruncatedSeries body =
        vec_dot(vec_mat_mul(ptilde_of(cfg, p), resolv), q, cfg.g, order2);
    body.add_term(std::vector<int>(static_cast<std::size_t>(cfg.g), 0), psi0(cfg, x, y));
    return exact::DiffForm::make(std::move(body), {{x, cfg.p}, {y, 1 - cfg.p}});
}

ChiTheta chi_theta(const KernelConfig& cfg, VarId x) {
    cfg.validate();
    int order2 = internal_order2(cfg);
    ModeVector p = p_vector_at(cfg, x, order2);
    ModeMatrix R = r_matrix_at(cfg, order2);
    ModeMatrix resolv = resolvent_at(cfg, rtilde_of(cfg, R), order2);
    ModeVector interior = vec_mat_mul(vec_mat_mul(ptilde_of(cfg, p), resolv), R);
    for (const auto& [key, s] : p) {
        auto [slot, fresh] = interior.try_emplace(key, s);
        if (!fresh) slot->second += s;
    }

    ChiTheta out;
    for (const auto& [key, s] : interior) {
        TruncatedSeries chi = s.mul_monomial(rho_exp(cfg, key.first, -key.second),
                                             RationalFunction(1));
        if (!chi.is_zero()) out.chi_full.emplace(key, std::move(chi));
    }
    for (int a : signed_handles(cfg.g)) {
        for (int l = 0; l <= 2 * cfg.p - 2; ++l) {
            TruncatedSeries theta(cfg.g, order2);
            auto it = out.chi_full.find({a, l});
            if (it != out.chi_full.end()) theta = it->second;
            auto mate = out.chi_full.find({-a, 2 * cfg.p - 2 - l});
            if (mate != out.chi_full.end()) {
                RationalFunction sign(cfg.p % 2 ? -1 : 1);
                theta += mate->second.mul_monomial(
                    rho_exp(cfg, a, 2 * (cfg.p - 1 - l)), sign);
            }
            if (it != out.chi_full.end()) out.chi.emplace(ModeKey{a, l}, it->second.truncated(cfg.T2));
            TruncatedSeries cut = theta.truncated(cfg.T2);
            out.theta.emplace(ModeKey{a, l}, cut);
            out.Theta.emplace(ModeKey{a, l}, exact::DiffForm::make(std::move(cut), {{x, cfg.p}}));
        }
    }
    return out;
}

} // namespace voac::zhu
