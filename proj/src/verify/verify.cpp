#include "verify/verify.hpp"

#include "exact/errors.hpp"
#include "util/rng.hpp"
#include "voa/bilinear.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace voac::verify {

using exact::Rational;
using exact::RationalFunction;
using exact::TruncatedSeries;
using exact::VarId;
using voa::FockState;
using voa::Partition;

void Suite::add(std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
}

void Suite::merge(const Suite& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
}

bool Suite::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::size_t Suite::failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

namespace {

std::vector<Partition> basis_up_to(int cap) {
    std::vector<Partition> out;
    for (int w = 0; w <= cap; ++w)
        for (auto& p : voa::partitions_of(w)) out.push_back(p);
    return out;
}

std::string case_tag(const FockState& u, const FockState& v, int n) {
    std::ostringstream os;
    os << "u=" << u.str() << " v=" << v.str() << " n=" << n;
    return os.str();
}

RationalFunction rf_power(const RationalFunction& base, int e) {
    RationalFunction out(1);
    const RationalFunction b = e < 0 ? base.inverse() : base;
    for (int i = 0; i < std::abs(e); ++i) out *= b;
    return out;
}

} // namespace

Suite axiom_suite(const voa::HeisenbergVOA& v, int weight_cap) {
    Suite suite;
    const int tri = std::max(0, weight_cap - 1); // three-state checks go one lighter
    const auto basis2 = basis_up_to(weight_cap);
    const auto basis3 = basis_up_to(tri);
    const FockState vac = v.vacuum();
    const FockState a = v.a_state();
    const FockState om = v.omega();

    {
        bool ok = true;
        std::string bad;
        for (auto& pu : basis2) {
            FockState u = FockState::basis(pu);
            int wu = voa::partition_weight(pu);
            for (auto& pv : basis2) {
                FockState s = FockState::basis(pv);
                int wv = voa::partition_weight(pv);
                for (int n = -weight_cap; ok && n <= wu + wv + 2; ++n) {
                    FockState r = v.mode_action(u, n, s);
                    if (r.is_zero()) continue;
                    if (!r.is_homogeneous() || r.weight() != wu + wv - n - 1) {
                        ok = false;
                        bad = case_tag(u, s, n);
                    }
                }
            }
        }
        suite.add("axiom grading", ok, bad);
    }
    {
        bool ok = true;
        std::string bad;
        for (auto& pu : basis2) {
            FockState u = FockState::basis(pu);
            int wu = voa::partition_weight(pu);
            for (auto& pv : basis2) {
                FockState s = FockState::basis(pv);
                int wv = voa::partition_weight(pv);
                for (int n = wu + wv; ok && n <= wu + wv + 3; ++n)
                    if (!v.mode_action(u, n, s).is_zero()) {
                        ok = false;
                        bad = case_tag(u, s, n);
                    }
            }
        }
        suite.add("axiom lower truncation", ok, bad);
    }
    {
        bool ok = true;
        std::string bad;
        for (auto& pu : basis2) {
            FockState u = FockState::basis(pu);
            if (!(v.mode_action(u, -1, vac) == u)) {
                ok = false;
                bad = "u(-1)|0> != u for u=" + u.str();
                break;
            }
            for (int n = 0; n <= voa::partition_weight(pu) + 1; ++n)
                if (!v.mode_action(u, n, vac).is_zero()) {
                    ok = false;
                    bad = case_tag(u, vac, n);
                }
        }
        suite.add("axiom creativity", ok, bad);
    }
    {
        bool ok = true;
        std::string bad;
        for (auto& pu : basis2) {
            FockState u = FockState::basis(pu);
            FockState du = v.translate(u);
            int wu = voa::partition_weight(pu);
            for (auto& pv : basis2) {
                FockState s = FockState::basis(pv);
                int wv = voa::partition_weight(pv);
                for (int n = -weight_cap; ok && n <= wu + wv + 1; ++n) {
                    FockState lhs = v.mode_action(du, n, s);
                    FockState rhs = v.mode_action(u, n - 1, s).scaled(Rational(-n));
                    if (!(lhs == rhs)) {
                        ok = false;
                        bad = case_tag(u, s, n);
                    }
                }
            }
        }
        suite.add("axiom translation", ok, bad);
    }
    {
        // Y(u,z)v = exp(z L(-1)) Y(v,-z) u, compared coefficientwise in z;
        // the translate tower caps the usable weight, so go one lighter
        bool ok = true;
        std::string bad;
        for (auto& pu : basis3) {
            FockState u = FockState::basis(pu);
            int wu = voa::partition_weight(pu);
            for (auto& pv : basis3) {
                FockState s = FockState::basis(pv);
                int wv = voa::partition_weight(pv);
                for (int N = -wu - wv; ok && N <= 6; ++N) {
                    FockState lhs = v.mode_action(u, -N - 1, s);
                    FockState rhs;
                    for (int k = 0; k <= N + wu + wv; ++k) {
                        int m = k - N - 1;
                        if (m > wu + wv - 1) break;
                        FockState t = v.mode_action(s, m, u);
                        if (t.is_zero()) continue;
                        for (int i = 0; i < k; ++i) t = v.translate(t);
                        Rational c(1);
                        c /= Rational(exact::factorial(static_cast<unsigned>(k)));
                        if ((m + 1) % 2 != 0) c = -c;
                        rhs += t.scaled(c);
                    }
                    if (!(lhs == rhs)) {
                        ok = false;
                        bad = case_tag(u, s, -N - 1);
                    }
                }
            }
        }
        suite.add("axiom skew symmetry", ok, bad);
    }
    {
        bool ok = true;
        std::string bad;
        for (auto& pu : basis3) {
            FockState u = FockState::basis(pu);
            for (auto& px : basis3) {
                FockState x = FockState::basis(px);
                for (const FockState& smp : {vac, a, om})
                    for (int k = -2; ok && k <= 3; ++k)
                        if (!v.commutator_check(u, k, x, smp)) {
                            ok = false;
                            bad = case_tag(u, x, k) + " sample=" + smp.str();
                        }
            }
        }
        suite.add("axiom commutator formula", ok, bad);
    }
    {
        bool ok = true;
        std::string bad;
        for (auto& pv : basis2) {
            FockState s = FockState::basis(pv);
            for (int m = -3; m <= 3; ++m)
                for (int n = -3; ok && n <= 3; ++n) {
                    FockState lhs = v.virasoro(m, v.virasoro(n, s)) - v.virasoro(n, v.virasoro(m, s));
                    FockState rhs = v.virasoro(m + n, s).scaled(Rational(m - n));
                    if (m + n == 0) {
                        Rational central = v.central_charge() *
                                           Rational((static_cast<long long>(m) * m - 1) * m) /
                                           Rational(12);
                        rhs += s.scaled(central);
                    }
                    if (!(lhs == rhs)) {
                        ok = false;
                        std::ostringstream os;
                        os << "[L(" << m << "),L(" << n << ")] on " << s.str();
                        bad = os.str();
                    }
                }
        }
        suite.add("axiom virasoro bracket", ok, bad);
    }
    {
        // <u(n) b, c> = sign alpha^e <b, u(2p-2-n) c> with symbolic alpha
        bool ok = true;
        std::string bad;
        RationalFunction alpha = RationalFunction::variable(exact::var_alpha());
        for (const FockState& u : {a, om}) {
            int p = u.weight();
            for (int n = -2; n <= 2 * p; ++n) {
                voa::AdjointMode am = voa::adjoint_mode(v, u, n);
                for (auto& pa : basis3)
                    for (auto& pb : basis3) {
                        FockState sa = FockState::basis(pa);
                        FockState sb = FockState::basis(pb);
                        RationalFunction lhs =
                            voa::bilinear_form(v, v.mode_action(u, n, sa), sb, alpha);
                        RationalFunction rhs =
                            voa::bilinear_form(v, sa, v.mode_action(u, am.mode, sb), alpha) *
                            rf_power(alpha, am.alpha_exp).scaled(Rational(am.sign));
                        if (!(lhs == rhs)) {
                            ok = false;
                            bad = case_tag(u, sa, n) + " against " + sb.str();
                        }
                    }
            }
        }
        suite.add("axiom form invariance", ok, bad);
    }
    {
        bool ok = true;
        std::string bad;
        for (const FockState& u : {vac, a, om})
            for (int m = -1; m <= 2; ++m)
                for (int level = 0; ok && level <= tri; ++level)
                    if (!voa::adjoint_lemma_check(v, u, m, level)) {
                        ok = false;
                        std::ostringstream os;
                        os << "u=" << u.str() << " m=" << m << " level=" << level;
                        bad = os.str();
                    }
        suite.add("axiom dual-basis adjoint relation", ok, bad);
    }
    return suite;
}

namespace {

schottky::SchottkyParams random_handles(util::Rng& rng, int g) {
    std::vector<Rational> fixed = rng.distinct_rationals(static_cast<std::size_t>(2 * g));
    std::vector<RationalFunction> wp, wm, q;
    for (int i = 0; i < g; ++i) {
        wp.emplace_back(fixed[static_cast<std::size_t>(2 * i)]);
        wm.emplace_back(fixed[static_cast<std::size_t>(2 * i + 1)]);
        Rational mult = Rational(rng.int_in(1, 9)) / Rational(10 + rng.int_in(0, 20));
        if (rng.int_in(0, 1) == 1) mult = -mult;
        q.emplace_back(mult);
    }
    return schottky::params_from_fixed_points(wp, wm, q);
}

} // namespace

Suite schottky_suite(unsigned trials, unsigned rng_seed) {
    Suite suite;
    util::Rng rng(rng_seed);

    {
        bool ok = true;
        std::string bad;
        for (unsigned t = 0; ok && t < trials; ++t) {
            int g = static_cast<int>(rng.int_in(1, 3));
            std::vector<Rational> fixed = rng.distinct_rationals(static_cast<std::size_t>(2 * g));
            std::vector<RationalFunction> wp, wm, q;
            std::vector<Rational> qr;
            for (int i = 0; i < g; ++i) {
                wp.emplace_back(fixed[static_cast<std::size_t>(2 * i)]);
                wm.emplace_back(fixed[static_cast<std::size_t>(2 * i + 1)]);
                Rational mult = Rational(rng.int_in(1, 9)) / Rational(10 + rng.int_in(0, 20));
                if (rng.int_in(0, 1) == 1) mult = -mult;
                q.emplace_back(mult);
                qr.push_back(mult);
            }
            schottky::SchottkyParams p = schottky::params_from_fixed_points(wp, wm, q);
            for (int a = 1; ok && a <= g; ++a) {
                // the two presentations of gamma_a are the same projective map
                if (!schottky::generator_map(p, a).proportional(schottky::conjugated_generator(
                        wp[static_cast<std::size_t>(a - 1)], wm[static_cast<std::size_t>(a - 1)],
                        q[static_cast<std::size_t>(a - 1)]))) {
                    ok = false;
                    bad = "sewing forms disagree at handle " + std::to_string(a);
                }
                schottky::FixedPointData f = schottky::fixed_points(p, a);
                if (f.W_plus != wp[static_cast<std::size_t>(a - 1)].constant_value() ||
                    f.W_minus != wm[static_cast<std::size_t>(a - 1)].constant_value() ||
                    f.q != qr[static_cast<std::size_t>(a - 1)]) {
                    ok = false;
                    bad = "fixed points fail to round trip at handle " + std::to_string(a);
                }
            }
        }
        suite.add("schottky sewing forms and fixed points", ok, bad);
    }
    {
        bool ok = true;
        std::string bad;
        unsigned done = 0;
        for (unsigned t = 0; ok && done < trials && t < 20 * trials + 50; ++t) {
            schottky::SchottkyParams p = random_handles(rng, 1);
            Rational z = rng.small_rational();
            try {
                schottky::ProjMap m = schottky::generator_map(p, 1);
                RationalFunction image = m.apply(RationalFunction(z));
                if (!image.is_constant()) continue;
                if (!schottky::sewing_check(p, 1, z, image.constant_value())) {
                    ok = false;
                    bad = "sewing relation fails at z=" + exact::rational_str(z);
                }
                ++done;
            } catch (const PoleError&) {
                continue; // z hit the pole of gamma; resample
            }
        }
        suite.add("schottky sewing relation pointwise", ok && done == trials,
                  done == trials ? bad : "not enough usable samples");
    }
    {
        bool ok = true;
        std::string bad;
        unsigned done = 0;
        for (unsigned t = 0; ok && done < trials && t < 20 * trials + 50; ++t) {
            Rational ma = rng.small_rational_nonzero();
            Rational mb = rng.small_rational();
            Rational mc = rng.small_rational();
            schottky::MobiusMap m(ma, mb, mc, (1 + mb * mc) / ma);
            int g = static_cast<int>(rng.int_in(1, 2));
            std::vector<Rational> fixed = rng.distinct_rationals(static_cast<std::size_t>(2 * g));
            std::vector<RationalFunction> wp, wm, q;
            for (int i = 0; i < g; ++i) {
                wp.emplace_back(fixed[static_cast<std::size_t>(2 * i)]);
                wm.emplace_back(fixed[static_cast<std::size_t>(2 * i + 1)]);
                q.emplace_back(Rational(rng.int_in(1, 9)) / Rational(10 + rng.int_in(0, 20)));
            }
            try {
                schottky::SchottkyParams base = schottky::params_from_fixed_points(wp, wm, q);
                schottky::SchottkyParams moved = schottky::sl2_action(m, base);
                std::vector<RationalFunction> wpm, wmm;
                for (int i = 0; i < g; ++i) {
                    wpm.emplace_back(m.apply(wp[static_cast<std::size_t>(i)].constant_value()));
                    wmm.emplace_back(m.apply(wm[static_cast<std::size_t>(i)].constant_value()));
                }
                schottky::SchottkyParams direct = schottky::params_from_fixed_points(wpm, wmm, q);
                for (int a = 1; a <= g; ++a) {
                    if (moved.w_value(a) != direct.w_value(a) ||
                        moved.w_value(-a) != direct.w_value(-a) ||
                        moved.rho_value(a) != direct.rho_value(a)) {
                        ok = false;
                        bad = "action disagrees with moved fixed points at handle " +
                              std::to_string(a);
                    }
                }
                ++done;
            } catch (const PoleError&) {
                continue; // a fixed point hit the pole of m; resample
            }
        }
        suite.add("schottky sl2 equivariance", ok && done == trials,
                  done == trials ? bad : "not enough usable samples");
    }
    {
        bool ok = true;
        std::string bad;
        unsigned done = 0;
        for (unsigned t = 0; ok && done < trials && t < 20 * trials + 50; ++t) {
            Rational a1 = rng.small_rational_nonzero(), a2 = rng.small_rational_nonzero();
            Rational b1 = rng.small_rational(), b2 = rng.small_rational();
            Rational c1 = rng.small_rational(), c2 = rng.small_rational();
            schottky::MobiusMap m1(a1, b1, c1, (1 + b1 * c1) / a1);
            schottky::MobiusMap m2(a2, b2, c2, (1 + b2 * c2) / a2);
            schottky::SchottkyParams p = random_handles(rng, 2);
            try {
                schottky::SchottkyParams lhs = schottky::sl2_action(m2, schottky::sl2_action(m1, p));
                schottky::SchottkyParams rhs = schottky::sl2_action(m2.compose(m1), p);
                for (int h : {1, -1, 2, -2})
                    if (lhs.w_value(h) != rhs.w_value(h)) {
                        ok = false;
                        bad = "composition disagrees at handle " + std::to_string(h);
                    }
                for (int a = 1; a <= 2; ++a)
                    if (lhs.rho_value(a) != rhs.rho_value(a)) {
                        ok = false;
                        bad = "composition disagrees on the scale of handle " + std::to_string(a);
                    }
                ++done;
            } catch (const PoleError&) {
                continue;
            }
        }
        suite.add("schottky sl2 group law", ok && done == trials,
                  done == trials ? bad : "not enough usable samples");
    }
    {
        bool ok = true;
        std::string bad;
        for (int g = 1; ok && g <= 3; ++g) {
            auto words = schottky::enumerate_words(g, 5);
            std::vector<long long> count(6, 0);
            for (auto& w : words) ++count[w.letters.size()];
            long long expect = 1;
            for (int k = 0; k <= 5; ++k) {
                if (count[static_cast<std::size_t>(k)] != expect) {
                    ok = false;
                    bad = "wrong count at genus " + std::to_string(g) + " length " +
                          std::to_string(k);
                }
                expect = (k == 0 ? 2LL * g : expect * (2LL * g - 1));
            }
        }
        suite.add("schottky reduced word counts", ok, bad);
    }
    return suite;
}

Suite kernel_suite(int g, int p, int T) {
    Suite suite;
    zhu::KernelConfig cfg;
    cfg.g = g;
    cfg.p = p;
    cfg.T2 = 2 * T;
    cfg.validate();
    const VarId x = exact::var_x();
    const VarId y = exact::var("z");

    {
        zhu::KernelConfig wide = cfg;
        wide.M = cfg.mode_cutoff() + 2;
        bool psi_ok = zhu::psi_full(cfg, x, y).equals(zhu::psi_full(wide, x, y));
        auto base = zhu::chi_theta(cfg, x);
        auto more = zhu::chi_theta(wide, x);
        bool theta_ok = true;
        for (int a = 1; a <= g; ++a)
            for (int l = 0; l <= 2 * p - 2; ++l) {
                auto i1 = base.theta.find({a, l});
                auto i2 = more.theta.find({a, l});
                bool z1 = i1 == base.theta.end() || i1->second.is_zero();
                bool z2 = i2 == more.theta.end() || i2->second.is_zero();
                if (z1 != z2 || (!z1 && !(i1->second == i2->second))) theta_ok = false;
            }
        suite.add("kernel mode-cutoff stability", psi_ok && theta_ok,
                  psi_ok ? (theta_ok ? "" : "theta window moved") : "dressed kernel moved");
    }
    {
        // (I - R Delta) resolvent == I at the retained order
        zhu::ModeMatrix R = zhu::R_matrix(cfg);
        zhu::ModeMatrix rt;
        for (const auto& [key, s] : R)
            if (key.second.second >= cfg.shift())
                rt.emplace(zhu::MatKey{key.first, {key.second.first, key.second.second - cfg.shift()}},
                           s);
        zhu::ModeMatrix resolv = zhu::resolvent(cfg);
        zhu::ModeMatrix prod = zhu::mode_mat_mul(rt, resolv);
        zhu::ModeMatrix lhs = resolv;
        for (const auto& [key, s] : prod) {
            auto [slot, fresh] = lhs.try_emplace(key, -s);
            if (!fresh) {
                slot->second -= s;
                if (slot->second.is_zero()) lhs.erase(slot);
            }
        }
        zhu::ModeMatrix id = zhu::mode_identity(cfg, cfg.T2);
        bool ok = lhs.size() == id.size();
        for (const auto& [key, s] : id) {
            auto it = lhs.find(key);
            if (it == lhs.end() || !(it->second == s)) ok = false;
        }
        suite.add("kernel resolvent telescoping", ok,
                  ok ? "" : "residual after one fold is not the identity");
    }
    return suite;
}

namespace {

chars::CharacterContext random_context(const voa::HeisenbergVOA& voa, util::Rng& rng, int g,
                                       int T) {
    schottky::SchottkyParams p;
    p.g = g;
    std::vector<Rational> centers = rng.distinct_rationals(static_cast<std::size_t>(2 * g));
    for (int i = 0; i < g; ++i) {
        p.w_plus.emplace_back(centers[static_cast<std::size_t>(2 * i)]);
        p.w_minus.emplace_back(centers[static_cast<std::size_t>(2 * i + 1)]);
    }
    return {&voa, std::move(p), T, T};
}

std::string tuple_tag(const std::vector<chars::Insertion>& ins) {
    std::string s = "(";
    for (std::size_t i = 0; i < ins.size(); ++i) {
        if (i) s += ", ";
        s += ins[i].state.str();
    }
    return s + ")";
}

} // namespace

Suite reduction_suite(const voa::HeisenbergVOA& voa, int g, int T, unsigned rounds,
                      unsigned rng_seed) {
    Suite suite;
    util::Rng rng(rng_seed);
    const FockState a = voa.a_state();
    const FockState om = voa.omega();
    const VarId x = exact::var_x();
    const VarId y1 = exact::var_y(1);
    const VarId y2 = exact::var_y(2);

    std::vector<std::vector<chars::Insertion>> tuples;
    tuples.push_back({});
    for (const FockState& v1 : {a, om}) tuples.push_back({{v1, y1}});
    for (const FockState& v1 : {a, om})
        for (const FockState& v2 : {a, om}) tuples.push_back({{v1, y1}, {v2, y2}});

    for (const FockState& u : {a, om}) {
        for (const auto& ins : tuples) {
            for (unsigned r = 0; r < rounds; ++r) {
                chars::CharacterContext ctx = random_context(voa, rng, g, T);
                chars::ReductionReport rep = chars::verify_reduction(ctx, u, x, ins);
                std::ostringstream os;
                os << "reduction g=" << g << " T=" << T << " u=" << u.str() << " ins="
                   << tuple_tag(ins) << " draw " << (r + 1);
                suite.add(os.str(), rep.ok, rep.ok ? "" : rep.detail);
            }
        }
    }
    return suite;
}

namespace {

cluster::ExchangeMatrix random_symmetrizable(util::Rng& rng, int n) {
    std::vector<long long> d(static_cast<std::size_t>(n));
    for (auto& di : d) di = rng.int_in(1, 3);
    std::vector<std::vector<long long>> b(static_cast<std::size_t>(n),
                                          std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long m = rng.int_in(-1, 1);
            if (m == 0) continue;
            long long gg = std::gcd(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(j)]);
            b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                m * d[static_cast<std::size_t>(j)] / gg;
            b[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                -m * d[static_cast<std::size_t>(i)] / gg;
        }
    return cluster::ExchangeMatrix(b);
}

std::vector<cluster::TropicalElement> random_tropical(util::Rng& rng, int n) {
    std::size_t rank = static_cast<std::size_t>(rng.int_in(1, 2));
    std::vector<cluster::TropicalElement> y;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(rank);
        for (auto& v : e) v = static_cast<int>(rng.int_in(-2, 2));
        y.push_back({e});
    }
    return y;
}

} // namespace

Suite cluster_suite(unsigned trials, unsigned rng_seed) {
    Suite suite;
    util::Rng rng(rng_seed);

    {
        bool ok = true;
        std::string bad;
        for (unsigned t = 0; ok && t < trials; ++t) {
            int n = static_cast<int>(rng.int_in(2, 4));
            cluster::ClassicalSeed seed =
                cluster::initial_seed(random_symmetrizable(rng, n), random_tropical(rng, n));
            // walk a short random word first so involutivity is tested away
            // from the initial cluster too
            int steps = static_cast<int>(rng.int_in(0, 2));
            for (int s = 0; s < steps; ++s)
                seed = cluster::mutate_seed(seed, static_cast<int>(rng.int_in(1, n)));
            for (int k = 1; ok && k <= n; ++k) {
                cluster::ClassicalSeed back = cluster::mutate_seed(cluster::mutate_seed(seed, k), k);
                if (!(back == seed)) {
                    ok = false;
                    bad = "mutation " + std::to_string(k) + " fails to square back at trial " +
                          std::to_string(t);
                }
            }
        }
        suite.add("cluster mutation involutivity", ok, bad);
    }
    {
        cluster::ExchangeMatrix A2(std::vector<std::vector<long long>>{{0, 1}, {-1, 0}});
        cluster::EnumerationResult res =
            cluster::enumerate_clusters(cluster::trivial_seed(A2), 8, 100);
        bool ok = res.closed && res.clusters == 5 && res.variables == 5;
        suite.add("cluster five clusters of rank two", ok,
                  ok ? ""
                     : "clusters=" + std::to_string(res.clusters) +
                           " variables=" + std::to_string(res.variables));
    }
    {
        bool ok = true;
        std::string bad;
        for (auto& rows : {std::vector<std::vector<long long>>{{0, 1}, {-1, 0}},
                           std::vector<std::vector<long long>>{{0, -1}, {2, 0}}}) {
            cluster::ExchangeMatrix B(rows);
            cluster::ClassicalSeed seed = cluster::trivial_seed(B);
            // every reduced direction word of length <= 6 at rank two
            std::vector<std::vector<int>> words = {{}};
            for (int len = 1; len <= 6; ++len)
                for (int first : {1, 2}) {
                    std::vector<int> w;
                    int cur = first;
                    for (int i = 0; i < len; ++i) {
                        w.push_back(cur);
                        cur = 3 - cur;
                    }
                    words.push_back(std::move(w));
                }
            for (auto& w : words) {
                cluster::LaurentReport rep = cluster::laurent_check(seed, w);
                if (!rep.laurent) {
                    ok = false;
                    std::string ws;
                    for (int k : w) ws += std::to_string(k);
                    bad = "non-Laurent variable after word " + ws;
                }
            }
        }
        suite.add("cluster Laurent certificates", ok, bad);
    }
    return suite;
}

Suite involution_suite(const voa::HeisenbergVOA& voa, int T) {
    Suite suite;
    chars::CharacterContext ctx{&voa, schottky::symbolic_params(1), T, T};
    const VarId x = exact::var_x();
    const FockState a = voa.a_state();
    const FockState om = voa.omega();

    std::vector<std::vector<chars::Insertion>> tuples = {
        {},
        {{a, exact::var_y(1)}},
        {{a, exact::var_y(1)}, {om, exact::var_y(2)}},
    };
    for (const auto& ins : tuples) {
        vcluster::VSeed seed = vcluster::make_seed(ctx, ins);
        for (int sign : {1, -1}) {
            std::ostringstream os;
            os << "vacuum involution n=" << ins.size() << " xi=" << sign;
            suite.add(os.str(), vcluster::vacuum_involution_check(seed, Rational(sign), x));
        }
        vcluster::NPointResult moved =
            vcluster::mutate_character(seed, vcluster::vacuum_spec(voa), x);
        std::ostringstream os;
        os << "vacuum transform identity n=" << ins.size();
        suite.add(os.str(), moved.value.equals(seed.character.value) &&
                                moved.value.body.str() == seed.character.value.body.str());
    }
    return suite;
}

Suite verify_all(const voa::HeisenbergVOA& voa, int g, int T, unsigned rng_seed) {
    Suite suite;
    suite.merge(axiom_suite(voa, 3));
    suite.merge(schottky_suite(20, rng_seed));
    suite.merge(kernel_suite(g, 1, T));
    suite.merge(kernel_suite(g, 2, T));
    suite.merge(reduction_suite(voa, g, std::min(T, g > 1 ? 1 : 2), 1, rng_seed + 1));
    suite.merge(cluster_suite(20, rng_seed + 2));
    suite.merge(involution_suite(voa, std::min(T, 1)));
    return suite;
}

} // namespace voac::verify
