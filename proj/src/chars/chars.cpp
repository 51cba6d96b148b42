#include "chars/chars.hpp"

#include "exact/errors.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <utility>

namespace voac::chars {

using exact::FactorMap;
using exact::Polynomial;
using voa::FockState;
using voa::Partition;

namespace {

Rational binom(long long n, long long k) {
    if (k < 0 || k > n) return Rational(0);
    Rational out(1);
    for (long long j = 1; j <= k; ++j) out *= Rational(n - k + j) / Rational(j);
    return out;
}

// <d^(m)a(z) d^(n)a(z')> = (-1)^m (m+n+1)!/(m!n!) (z-z')^{-m-n-2}, the
// divided derivatives of the current two-point function
const RationalFunction& contraction(int m, VarId zi, int n, VarId zj) {
    static std::mutex mu;
    static std::map<std::tuple<int, VarId, int, VarId>, RationalFunction> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(m, zi, n, zj);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    Rational c = binom(m + n + 1, m) * Rational(n + 1);
    if (m % 2 != 0) c = -c;
    Polynomial diff = Polynomial::variable(zi) - Polynomial::variable(zj);
    FactorMap den;
    den.emplace(diff, m + n + 2);
    return cache.emplace(key, RationalFunction(Polynomial(c), std::move(den))).first->second;
}

struct Leg {
    int order; // divided-derivative order, part size minus one
    int host;  // insertion index, pairs inside one insertion are excluded
};

void wick_rec(const std::vector<Leg>& legs, const std::vector<VarId>& coords,
              std::vector<char>& used, std::size_t first, const RationalFunction& acc,
              std::vector<RationalFunction>& out) {
    std::size_t i = first;
    while (i < legs.size() && used[i]) ++i;
    if (i == legs.size()) {
        out.push_back(acc);
        return;
    }
    used[i] = 1;
    for (std::size_t j = i + 1; j < legs.size(); ++j) {
        if (used[j] || legs[j].host == legs[i].host) continue;
        used[j] = 1;
        wick_rec(legs, coords, used, i + 1,
                 acc * contraction(legs[i].order, coords[legs[i].host], legs[j].order,
                                   coords[legs[j].host]),
                 out);
        used[j] = 0;
    }
    used[i] = 0;
}

// balanced reduction keeps the shared denominators from growing linearly
RationalFunction tree_sum(std::vector<RationalFunction>& terms) {
    if (terms.empty()) return {};
    while (terms.size() > 1) {
        std::vector<RationalFunction> next;
        next.reserve(terms.size() / 2 + 1);
        for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
        if (terms.size() % 2 != 0) next.push_back(terms.back());
        terms = std::move(next);
    }
    return terms.front();
}

RationalFunction wick_basis(const std::vector<std::pair<VarId, const Partition*>>& slots) {
    static std::mutex mu;
    static std::map<std::vector<int>, RationalFunction> cache;

    std::vector<std::pair<VarId, const Partition*>> order = slots;
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return *a.second < *b.second;
    });
    std::vector<int> key;
    for (auto& [coord, part] : order) {
        key.push_back(static_cast<int>(coord));
        key.insert(key.end(), part->begin(), part->end());
        key.push_back(-1);
    }
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }

    std::vector<Leg> legs;
    std::vector<VarId> coords;
    for (auto& [coord, part] : order) {
        int host = static_cast<int>(coords.size());
        coords.push_back(coord);
        for (int n : *part) legs.push_back({n - 1, host});
    }
    RationalFunction value;
    if (legs.size() % 2 == 0) {
        std::vector<char> used(legs.size(), 0);
        std::vector<RationalFunction> terms;
        wick_rec(legs, coords, used, 0, RationalFunction(1), terms);
        value = tree_sum(terms);
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::move(key), std::move(value)).first->second;
}

void expand_states(const std::vector<Insertion>& ins, std::size_t k, const Rational& coeff,
                   std::vector<std::pair<VarId, const Partition*>>& slots,
                   std::vector<RationalFunction>& out) {
    if (k == ins.size()) {
        RationalFunction z = wick_basis(slots);
        if (!z.is_zero()) out.push_back(z.scaled(coeff));
        return;
    }
    for (auto& [part, c] : ins[k].state.terms()) {
        slots.push_back({ins[k].coord, &part});
        expand_states(ins, k + 1, coeff * c, slots, out);
        slots.pop_back();
    }
}

const voa::DualBasis& level_basis(const voa::HeisenbergVOA& voa, int level) {
    static std::mutex mu;
    static std::map<std::pair<const voa::HeisenbergVOA*, int>, voa::DualBasis> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(&voa, level);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, voa::dual_basis(voa, level)).first;
    return it->second;
}

// numeric centers are substituted after the symbolic contraction step, so
// the pairing cache stays shared between parameter sets
std::map<VarId, Rational> center_values(const schottky::SchottkyParams& params) {
    std::map<VarId, Rational> out;
    for (int a = 1; a <= params.g; ++a) {
        for (int s : {a, -a}) {
            const RationalFunction& w = params.w(s);
            if (w == RationalFunction::variable(exact::var_w(s))) continue;
            if (!w.is_constant())
                throw InvalidError("sewing centers must be canonical symbols or constants");
            out[exact::var_w(s)] = w.constant_value();
        }
    }
    return out;
}

template <class F>
void dual_tuples_rec(const voa::HeisenbergVOA& voa, int g, int budget, int handle,
                     std::vector<int>& levels, std::vector<FockState>& minus,
                     std::vector<FockState>& plus, F&& visit) {
    if (handle == g) {
        visit(levels, minus, plus);
        return;
    }
    for (int l = 0; l <= budget; ++l) {
        const voa::DualBasis& db = level_basis(voa, l);
        for (std::size_t i = 0; i < db.basis.size(); ++i) {
            levels[static_cast<std::size_t>(handle)] = l;
            plus[static_cast<std::size_t>(handle)] = FockState::basis(db.basis[i]);
            minus[static_cast<std::size_t>(handle)] = db.duals[i];
            dual_tuples_rec(voa, g, budget - l, handle + 1, levels, minus, plus, visit);
        }
    }
}

// sum over dual tuples with total weight <= maxw; when slot != 0 the state
// at w_slot is first hit with u(mode)
TruncatedSeries handle_sum(const CharacterContext& ctx, const std::vector<Insertion>& ins,
                           int maxw, int order2, int slot, int mode, const FockState* u) {
    const voa::HeisenbergVOA& voa = *ctx.voa;
    const int g = ctx.params.g;
    const auto values = center_values(ctx.params);
    TruncatedSeries out(g, order2);
    std::vector<int> levels(static_cast<std::size_t>(g));
    std::vector<FockState> minus(static_cast<std::size_t>(g)), plus(static_cast<std::size_t>(g));
    dual_tuples_rec(voa, g, maxw, 0, levels, minus, plus,
                    [&](const std::vector<int>& lv, const std::vector<FockState>& mn,
                        const std::vector<FockState>& pl) {
                        std::vector<Insertion> full = ins;
                        for (int a = 1; a <= g; ++a) {
                            FockState below = mn[static_cast<std::size_t>(a - 1)];
                            FockState above = pl[static_cast<std::size_t>(a - 1)];
                            if (slot == -a) below = voa.mode_action(*u, mode, below);
                            if (slot == a) above = voa.mode_action(*u, mode, above);
                            if (below.is_zero() || above.is_zero()) return;
                            full.push_back({std::move(below), exact::var_w(-a)});
                            full.push_back({std::move(above), exact::var_w(a)});
                        }
                        RationalFunction z = genus0_npoint(voa, full);
                        if (z.is_zero()) return;
                        if (!values.empty()) z = z.eval_at(values);
                        std::vector<int> exp2(lv.size());
                        for (std::size_t a = 0; a < lv.size(); ++a) exp2[a] = 2 * lv[a];
                        out.add_term(exp2, z);
                    });
    return out;
}

std::map<VarId, int> form_degrees(const std::vector<Insertion>& ins) {
    std::map<VarId, int> deg;
    for (auto& one : ins) {
        if (!one.state.is_homogeneous())
            throw InvalidError("insertions must be homogeneous to carry a form weight");
        int w = one.state.weight();
        if (w != 0) deg[one.coord] += w;
    }
    return deg;
}

TruncatedSeries map_coeffs(const TruncatedSeries& s,
                           const std::function<RationalFunction(const RationalFunction&)>& f) {
    TruncatedSeries out(s.genus(), s.order2());
    for (auto& [e, c] : s.terms()) out.add_term(e, f(c));
    return out;
}

void guard_coordinates(const CharacterContext& ctx, const std::vector<Insertion>& ins,
                       const VarId* x) {
    std::set<VarId> seen;
    for (int a = 1; a <= ctx.params.g; ++a) {
        seen.insert(exact::var_w(a));
        seen.insert(exact::var_w(-a));
    }
    if (x != nullptr && !seen.insert(*x).second)
        throw InvalidError("reduction point collides with a sewing center");
    for (auto& one : ins)
        if (!seen.insert(one.coord).second)
            throw InvalidError("insertion coordinate collides with another point");
    if (seen.count(kernel_point()) != 0 && (x == nullptr || *x != kernel_point()))
        throw InvalidError("the kernel scratch symbol cannot be an insertion point");
}

int reducing_weight(const CharacterContext& ctx, const FockState& u) {
    if (u.is_zero()) throw InvalidError("reducing state must be nonzero");
    if (!ctx.voa->is_quasiprimary(u)) throw InvalidError("reducing state must be quasiprimary");
    return u.weight();
}

} // namespace

void CharacterContext::validate() const {
    if (voa == nullptr) throw InvalidError("character context has no state space");
    if (params.g < 1) throw InvalidError("genus must be at least one");
    if (static_cast<int>(params.w_plus.size()) != params.g ||
        static_cast<int>(params.w_minus.size()) != params.g)
        throw InvalidError("center list does not match the genus");
    if (T < 0 || L < T) throw InvalidError("truncation orders need 0 <= T <= L");
    if (L > voa->cutoff()) throw CutoffError("basis bound exceeds the state-space cutoff");
}

RationalFunction genus0_npoint(const voa::HeisenbergVOA& voa, const std::vector<Insertion>& ins) {
    (void)voa;
    std::set<VarId> seen;
    for (auto& one : ins)
        if (!seen.insert(one.coord).second) throw InvalidError("coincident insertion coordinates");
    std::vector<RationalFunction> terms;
    std::vector<std::pair<VarId, const Partition*>> slots;
    slots.reserve(ins.size());
    expand_states(ins, 0, Rational(1), slots, terms);
    return tree_sum(terms);
}

TruncatedSeries genus_g_partition(const CharacterContext& ctx) {
    ctx.validate();
    return handle_sum(ctx, {}, ctx.L, ctx.order2(), 0, 0, nullptr);
}

TruncatedSeries genus_g_partition_rank2(const CharacterContext& ctx) {
    ctx.validate();
    const int g = ctx.params.g;
    TruncatedSeries out(g, ctx.order2());
    std::vector<int> levels(static_cast<std::size_t>(g));
    std::vector<FockState> minus(static_cast<std::size_t>(g)), plus(static_cast<std::size_t>(g));
    const auto values = center_values(ctx.params);
    auto one_factor = [&](const std::vector<FockState>& mn, const std::vector<FockState>& pl) {
        std::vector<Insertion> full;
        for (int a = 1; a <= g; ++a) {
            full.push_back({mn[static_cast<std::size_t>(a - 1)], exact::var_w(-a)});
            full.push_back({pl[static_cast<std::size_t>(a - 1)], exact::var_w(a)});
        }
        RationalFunction z = genus0_npoint(*ctx.voa, full);
        if (!values.empty() && !z.is_zero()) z = z.eval_at(values);
        return z;
    };
    dual_tuples_rec(*ctx.voa, g, ctx.L, 0, levels, minus, plus,
                    [&](const std::vector<int>& lv_l, const std::vector<FockState>& mn_l,
                        const std::vector<FockState>& pl_l) {
                        RationalFunction left = one_factor(mn_l, pl_l);
                        if (left.is_zero()) return;
                        int used = 0;
                        for (int l : lv_l) used += l;
                        std::vector<int> levels_r(static_cast<std::size_t>(g));
                        std::vector<FockState> mn_r(static_cast<std::size_t>(g)),
                            pl_r(static_cast<std::size_t>(g));
                        dual_tuples_rec(*ctx.voa, g, ctx.L - used, 0, levels_r, mn_r, pl_r,
                                        [&](const std::vector<int>& lv_r,
                                            const std::vector<FockState>& mn2,
                                            const std::vector<FockState>& pl2) {
                                            RationalFunction right = one_factor(mn2, pl2);
                                            if (right.is_zero()) return;
                                            std::vector<int> exp2(lv_l.size());
                                            for (std::size_t a = 0; a < lv_l.size(); ++a)
                                                exp2[a] = 2 * (lv_l[a] + lv_r[a]);
                                            out.add_term(exp2, left * right);
                                        });
                    });
    return out;
}

NPointResult genus_g_npoint(const CharacterContext& ctx, const std::vector<Insertion>& ins) {
    ctx.validate();
    guard_coordinates(ctx, ins, nullptr);
    auto deg = form_degrees(ins);
    TruncatedSeries body = handle_sum(ctx, ins, ctx.L, ctx.order2(), 0, 0, nullptr);
    return {DiffForm::make(std::move(body), std::move(deg)), ins};
}

NPointResult module_npoint(const CharacterContext& ctx, Decomposition dec,
                           const std::vector<int>& alpha, const std::vector<Insertion>& ins) {
    if (dec != Decomposition::Trivial) throw InvalidError("unknown module decomposition");
    if (static_cast<int>(alpha.size()) != ctx.params.g)
        throw InvalidError("block tuple does not match the genus");
    for (int a : alpha)
        if (a != 0) throw InvalidError("the one-block splitting has block index zero only");
    return genus_g_npoint(ctx, ins);
}

NPointResult module_npoint_sum(const CharacterContext& ctx, Decomposition dec,
                               const std::vector<std::vector<int>>& alphas,
                               const std::vector<Insertion>& ins) {
    ctx.validate();
    TruncatedSeries acc(ctx.params.g, ctx.order2());
    for (auto& alpha : alphas) acc += module_npoint(ctx, dec, alpha, ins).value.body;
    return {DiffForm::make(std::move(acc), form_degrees(ins)), ins};
}

zhu::ModeVector X_vector(const CharacterContext& ctx, const FockState& u,
                         const std::vector<Insertion>& ins, int M, int order2) {
    ctx.validate();
    guard_coordinates(ctx, ins, nullptr);
    reducing_weight(ctx, u);
    if (M < 0) throw InvalidError("mode bound must be nonnegative");
    zhu::ModeVector out;
    for (int a = 1; a <= ctx.params.g; ++a) {
        for (int s : {a, -a}) {
            for (int m = 0; m <= M; ++m) {
                TruncatedSeries sum = handle_sum(ctx, ins, ctx.L, order2, s, m, &u);
                std::vector<int> shift(static_cast<std::size_t>(ctx.params.g), 0);
                shift[static_cast<std::size_t>(a - 1)] = -m;
                out.emplace(zhu::ModeKey{s, m}, sum.mul_monomial(shift, RationalFunction(1)));
            }
        }
    }
    return out;
}

zhu::ModeVector o_vector(const CharacterContext& ctx, const FockState& u,
                         const std::vector<Insertion>& ins) {
    ctx.validate();
    guard_coordinates(ctx, ins, nullptr);
    const int p = reducing_weight(ctx, u);
    const int order2 = ctx.order2() + 2 * (p - 1);
    zhu::ModeVector out;
    for (int a = 1; a <= ctx.params.g; ++a) {
        for (int s : {a, -a}) {
            for (int l = 0; l <= 2 * p - 2; ++l) {
                int depth = ctx.L + std::max(0, l - (p - 1));
                TruncatedSeries sum = handle_sum(ctx, ins, depth, order2, s, l, &u);
                if (!sum.nonnegative_exponents())
                    throw VerifyError("window entry with a negative scale exponent");
                out.emplace(zhu::ModeKey{s, l}, std::move(sum));
            }
        }
    }
    return out;
}

zhu::FormVector O_vector(const CharacterContext& ctx, const FockState& u,
                         const std::vector<Insertion>& ins) {
    auto deg = form_degrees(ins);
    zhu::FormVector out;
    for (auto& [key, series] : o_vector(ctx, u, ins))
        out.emplace(key, DiffForm::make(series, deg));
    return out;
}

VarId kernel_point() { return exact::var("z"); }

zhu::ModeVector G_vector(const CharacterContext& ctx, const FockState& u,
                         const std::vector<Insertion>& ins,
                         const std::vector<RationalFunction>& f) {
    ctx.validate();
    guard_coordinates(ctx, ins, nullptr);
    const int p = reducing_weight(ctx, u);
    zhu::ModeVector out;
    zhu::ModeVector q; // built on first demand; vacuous reducing states never need it
    for (std::size_t k = 0; k < ins.size(); ++k) {
        if (!ins[k].state.is_homogeneous())
            throw InvalidError("insertions must be homogeneous");
        int wk = ins[k].state.weight();
        for (int j = 0; j <= p + wk - 1; ++j) {
            FockState moved = ctx.voa->mode_action(u, j, ins[k].state);
            if (moved.is_zero()) continue;
            std::vector<Insertion> mod = ins;
            mod[k].state = std::move(moved);
            TruncatedSeries z = handle_sum(ctx, mod, ctx.L, ctx.order2(), 0, 0, nullptr);
            if (z.is_zero()) continue;
            if (q.empty()) {
                zhu::KernelConfig cfg;
                cfg.g = ctx.params.g;
                cfg.p = p;
                cfg.T2 = ctx.order2();
                cfg.f = f;
                q = zhu::q_vector(cfg, kernel_point());
            }
            const auto values = center_values(ctx.params);
            for (auto& [key, qs] : q) {
                TruncatedSeries dq = map_coeffs(qs, [&](const RationalFunction& c) {
                    RationalFunction d = c.divided_derivative(kernel_point(), static_cast<unsigned>(j))
                                             .rename({{kernel_point(), ins[k].coord}});
                    return values.empty() ? d : d.eval_at(values);
                });
                dq *= z;
                if (dq.is_zero()) continue;
                auto [it, fresh] = out.emplace(key, dq);
                if (!fresh) it->second += dq;
            }
        }
    }
    return out;
}

NPointResult zhu_reduce(const CharacterContext& ctx, const FockState& u, VarId x,
                        const std::vector<Insertion>& ins,
                        const std::vector<RationalFunction>& f,
                        const TruncatedSeries* kernel_fault) {
    ctx.validate();
    guard_coordinates(ctx, ins, &x);
    const int p = reducing_weight(ctx, u);
    const int g = ctx.params.g;
    const int order2 = ctx.order2();
    zhu::KernelConfig cfg;
    cfg.g = g;
    cfg.p = p;
    cfg.T2 = order2;
    cfg.f = f;
    cfg.validate();
    const auto values = center_values(ctx.params);
    auto eval = [&](const RationalFunction& c) { return values.empty() ? c : c.eval_at(values); };

    TruncatedSeries acc(g, order2);

    // window term Theta . o, folded at internal depth since theta reaches
    // down p-1 scale orders
    auto cths = zhu::chi_theta(cfg, x);
    auto o = o_vector(ctx, u, ins);
    const int inner2 = order2 + 2 * (p - 1);
    for (int a = 1; a <= g; ++a) {
        for (int l = 0; l <= 2 * p - 2; ++l) {
            auto th = cths.theta.find({a, l});
            auto ov = o.find({a, l});
            if (th == cths.theta.end() || ov == o.end()) continue;
            if (th->second.is_zero() || ov->second.is_zero()) continue;
            TruncatedSeries prod = map_coeffs(th->second, eval).truncated(inner2);
            prod *= ov->second;
            acc += prod.truncated(order2);
        }
    }

    // kernel terms against the shifted insertions
    if (!ins.empty()) {
        TruncatedSeries psi = zhu::psi_full(cfg, x, kernel_point()).body;
        if (kernel_fault != nullptr) {
            if (kernel_fault->genus() != g) throw InvalidError("fault genus mismatch");
            for (auto& [e, c] : kernel_fault->terms()) psi.add_term(e, c);
        }
        for (std::size_t k = 0; k < ins.size(); ++k) {
            if (!ins[k].state.is_homogeneous())
                throw InvalidError("insertions must be homogeneous");
            int wk = ins[k].state.weight();
            for (int j = 0; j <= p + wk - 1; ++j) {
                FockState moved = ctx.voa->mode_action(u, j, ins[k].state);
                if (moved.is_zero()) continue;
                // replaced insertion weight p + wk - j - 1 plus the kernel's
                // dy^{1-p} and the explicit dy^j restore weight wk exactly
                if (moved.weight() != p + wk - j - 1)
                    throw VerifyError("mode action broke the weight bookkeeping");
                TruncatedSeries dpsi = map_coeffs(psi, [&](const RationalFunction& c) {
                    RationalFunction d =
                        c.divided_derivative(kernel_point(), static_cast<unsigned>(j))
                            .rename({{kernel_point(), ins[k].coord}});
                    return eval(d);
                });
                if (dpsi.is_zero()) continue;
                std::vector<Insertion> mod = ins;
                mod[k].state = std::move(moved);
                dpsi *= handle_sum(ctx, mod, ctx.L, order2, 0, 0, nullptr);
                acc += dpsi;
            }
        }
    }

    auto deg = form_degrees(ins);
    deg[x] += p;
    return {DiffForm::make(std::move(acc), std::move(deg)), ins};
}

ReductionReport verify_reduction(const CharacterContext& ctx, const FockState& u, VarId x,
                                 const std::vector<Insertion>& ins,
                                 const std::vector<RationalFunction>& f,
                                 const TruncatedSeries* kernel_fault) {
    NPointResult rhs = zhu_reduce(ctx, u, x, ins, f, kernel_fault);
    std::vector<Insertion> lhs_ins;
    lhs_ins.push_back({u, x});
    lhs_ins.insert(lhs_ins.end(), ins.begin(), ins.end());
    NPointResult lhs = genus_g_npoint(ctx, lhs_ins);

    ReductionReport rep;
    if (lhs.value.degrees != rhs.value.degrees) {
        rep.detail = "form degree mismatch between the direct sum and the reduction";
        return rep;
    }
    TruncatedSeries diff = lhs.value.body - rhs.value.body;
    if (diff.is_zero()) {
        rep.ok = true;
        std::ostringstream os;
        os << "equal through scale order " << ctx.T;
        rep.detail = os.str();
        return rep;
    }
    auto& [e, c] = *diff.terms().begin();
    std::ostringstream os;
    os << "first discrepancy at half exponents [";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i != 0 ? " " : "") << e[i];
    auto [num, den] = c.num_den_strings();
    os << "]: direct minus reduced = (" << num << ")/(" << den << ")";
    rep.detail = os.str();
    return rep;
}

std::vector<Rational> nome_coefficients(const TruncatedSeries& s, unsigned count) {
    if (s.genus() != 1) throw InvalidError("nome expansion is a genus-one operation");
    RationalFunction q = RationalFunction::variable(exact::var_q());
    RationalFunction inv1mq = (RationalFunction(1) - q).inverse();
    RationalFunction w1 = inv1mq;
    RationalFunction wm1 = -(q * inv1mq);
    RationalFunction rho = -(q * inv1mq * inv1mq);
    RationalFunction f = exact::series_to_rf(s, {rho},
                                             {{exact::var_w(1), w1}, {exact::var_w(-1), wm1}});
    return exact::taylor_coefficients(f, exact::var_q(), Rational(0), count);
}

} // namespace voac::chars
