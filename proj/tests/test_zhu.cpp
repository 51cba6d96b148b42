#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exact/errors.hpp"
#include "exact/symbols.hpp"
#include "zhu/kernel.hpp"

using namespace voac;
using namespace voac::zhu;
using exact::Polynomial;
using exact::rat;
using exact::Rational;
using exact::RationalFunction;
using exact::TruncatedSeries;
using exact::VarId;

namespace {

RationalFunction v(VarId id) { return RationalFunction::variable(id); }

// (a - b)^{-k}
RationalFunction inv_pow(const RationalFunction& base, int k) {
    RationalFunction acc(1);
    for (int i = 0; i < k; ++i) acc *= base;
    return acc.inverse();
}

const VarId X = exact::var_x();
const VarId Y = exact::var_y(1);
const VarId W1 = exact::var_w(1);
const VarId Wm1 = exact::var_w(-1);

KernelConfig cfg_g1(int p, int T2) {
    KernelConfig c;
    c.g = 1;
    c.p = p;
    c.T2 = T2;
    return c;
}

} // namespace

TEST_CASE("configuration rules") {
    CHECK(cfg_g1(1, 2).mode_cutoff() == 4);  // 2T + 2p
    CHECK(cfg_g1(2, 2).mode_cutoff() == 6);
    KernelConfig c = cfg_g1(1, 2);
    c.M = 6;
    CHECK(c.mode_cutoff() == 6);
    c.M = 3; // below 2T + 2p
    CHECK_THROWS_AS((void)c.mode_cutoff(), InvalidError);
    KernelConfig bad = cfg_g1(1, 2);
    bad.p = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidError);
    KernelConfig toomany = cfg_g1(1, 2);
    toomany.f = {RationalFunction(1), RationalFunction(2)}; // p=1 allows one entry
    CHECK_THROWS_AS(toomany.validate(), InvalidError);
}

TEST_CASE("base kernel") {
    RationalFunction xy = RationalFunction::quotient(
        Polynomial(1), Polynomial::variable(X) - Polynomial::variable(Y));

    CHECK(psi0(cfg_g1(1, 0), X, Y) == xy);
    CHECK(psi0(cfg_g1(3, 0), X, Y) == xy); // weight-independent when f vanishes

    KernelConfig c = cfg_g1(1, 0);
    c.f = {v(X).inverse()};
    CHECK(psi0(c, X, Y) == xy + v(X).inverse());

    // first divided y-derivative
    CHECK(psi0(cfg_g1(1, 0), X, Y).divided_derivative(Y, 1) == inv_pow(v(X) - v(Y), 2));

    CHECK_THROWS_AS((void)psi0(cfg_g1(1, 0), X, X), InvalidError);
}

TEST_CASE("f-moment matrix entries") {
    SUBCASE("vanishing choice") {
        KernelConfig c = cfg_g1(2, 0);
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) CHECK(E_entry(c, m, n, Y).is_zero());
    }
    SUBCASE("constant f") {
        KernelConfig c = cfg_g1(1, 0);
        c.f = {RationalFunction(rat(5, 3))};
        CHECK(E_entry(c, 0, 0, Y) == RationalFunction(rat(5, 3)));
        CHECK(E_entry(c, 1, 0, Y).is_zero()); // derivative of a constant
        CHECK(E_entry(c, 0, 1, Y).is_zero()); // d^(1) y^0 = 0
    }
    SUBCASE("linear f_1 at weight two") {
        KernelConfig c = cfg_g1(2, 0);
        c.f = {RationalFunction(0), v(X)}; // f_1(x) = x
        CHECK(E_entry(c, 0, 1, Y) == v(Y)); // f_1(y) * d^(1) y^1
        CHECK(E_entry(c, 0, 0, Y) == v(Y) * v(Y));
        CHECK(E_entry(c, 1, 0, Y) == v(Y));  // d^(1)(y) * y^1
        CHECK(E_entry(c, 1, 1, Y) == RationalFunction(1));
    }
}

TEST_CASE("moment vectors") {
    KernelConfig c = cfg_g1(1, 4);

    SUBCASE("p carries exact half-order m/2") {
        ModeVector p = p_vector(c, X);
        for (int a : {1, -1}) {
            for (int m = 0; m <= 4; ++m) {
                auto it = p.find({a, m});
                REQUIRE(it != p.end());
                // single term rho^{m/2} (x - w_a)^{-m-1}
                CHECK(it->second.terms().size() == 1);
                CHECK(it->second.coefficient({m}) ==
                      inv_pow(v(X) - v(exact::var_w(a)), m + 1));
            }
            CHECK(p.find({a, 5}) == p.end()); // above the order window
        }
    }

    SUBCASE("q signs at weight one") {
        ModeVector q = q_vector(c, Y);
        CHECK(q.at({1, 0}).coefficient({1}) == -(v(Wm1) - v(Y)).inverse());
        CHECK(q.at({1, 1}).coefficient({2}) == inv_pow(v(Wm1) - v(Y), 2));
        CHECK(q.at({-1, 0}).coefficient({1}) == -(v(W1) - v(Y)).inverse());
    }

    SUBCASE("q sign flips with the weight parity") {
        KernelConfig c2 = cfg_g1(2, 2);
        ModeVector q = q_vector(c2, Y);
        CHECK(q.at({1, 0}).coefficient({1}) == (v(Wm1) - v(Y)).inverse());
    }

    SUBCASE("insertion point must avoid the centers") {
        CHECK_THROWS_AS((void)p_vector(c, W1), InvalidError);
        CHECK_THROWS_AS((void)q_vector(c, Wm1), InvalidError);
    }
}

TEST_CASE("moment matrix") {
    SUBCASE("weight one frozen entries") {
        KernelConfig c = cfg_g1(1, 4);
        ModeMatrix R = R_matrix(c);
        CHECK(R.at({{1, 0}, {1, 0}}).coefficient({1}) == -(v(Wm1) - v(W1)).inverse());
        CHECK(R.at({{1, 1}, {1, 1}}).coefficient({3}) ==
              inv_pow(v(Wm1) - v(W1), 3).scaled(Rational(2)));
        // vanishing f kills the inverse-handle block
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n) {
                CHECK(R.find({{1, m}, {-1, n}}) == R.end());
                CHECK(R.find({{-1, m}, {1, n}}) == R.end());
            }
    }

    SUBCASE("entries match the closed form of the difference kernel") {
        // d^(m,n) (x-y)^{-1} = (-1)^m binom(m+n,n) (x-y)^{-m-n-1}
        KernelConfig c = cfg_g1(1, 6);
        ModeMatrix R = R_matrix(c);
        for (int m = 0; m <= 2; ++m) {
            for (int n = 0; n <= 2; ++n) {
                Rational coeff(exact::binomial(m + n, static_cast<unsigned>(n)));
                if (m % 2) coeff = -coeff;
                coeff = -coeff; // (-1)^p at p = 1
                CHECK(R.at({{1, m}, {1, n}}).coefficient({m + 1 + n}) ==
                      inv_pow(v(Wm1) - v(W1), m + n + 1).scaled(coeff));
            }
        }
    }

    SUBCASE("f restores the inverse-handle block") {
        KernelConfig c = cfg_g1(1, 2);
        c.f = {RationalFunction(rat(5, 3))};
        ModeMatrix R = R_matrix(c);
        CHECK(R.at({{1, 0}, {-1, 0}}).coefficient({1}) == RationalFunction(rat(-5, 3)));
    }

    SUBCASE("genus two cross entry") {
        KernelConfig c;
        c.g = 2;
        c.p = 1;
        c.T2 = 2;
        ModeMatrix R = R_matrix(c);
        CHECK(R.at({{1, 0}, {2, 0}}).coefficient({1, 0}) ==
              -(v(Wm1) - v(exact::var_w(2))).inverse());
    }
}

TEST_CASE("index shift matrix") {
    KernelConfig c1 = cfg_g1(1, 2);
    ModeMatrix d1 = delta_matrix(c1);
    CHECK(d1.at({{1, 3}, {1, 2}}).coefficient({0}) == RationalFunction(1));
    CHECK(d1.find({{1, 3}, {-1, 2}}) == d1.end());
    CHECK(d1.find({{1, 2}, {1, 2}}) == d1.end());

    KernelConfig c2 = cfg_g1(2, 2);
    ModeMatrix d2 = delta_matrix(c2);
    for (int m = 0; m <= c2.mode_cutoff(); ++m)
        for (int n = 0; n <= c2.mode_cutoff(); ++n) {
            bool hit = d2.find({{1, m}, {1, n}}) != d2.end();
            CHECK(hit == (m == n + 3));
        }
}

TEST_CASE("geometric inverse of the shifted moment matrix") {
    SUBCASE("order below the first correction") {
        KernelConfig c = cfg_g1(1, 0);
        ModeMatrix resolv = resolvent(c);
        ModeMatrix id = mode_identity(c, 0);
        CHECK(resolv.size() == id.size());
        for (const auto& [key, s] : id) CHECK(resolv.at(key) == s);
    }

    SUBCASE("single correction at order one") {
        KernelConfig c = cfg_g1(1, 2);
        ModeMatrix R = R_matrix(c);
        ModeMatrix rt; // R Delta by hand: column shift by 2p-1 = 1
        for (const auto& [key, s] : R)
            if (key.second.second >= 1)
                rt.emplace(MatKey{key.first, {key.second.first, key.second.second - 1}}, s);
        ModeMatrix expect = mode_mat_add(mode_identity(c, 2), rt);
        ModeMatrix got = resolvent(c);
        CHECK(got.size() == expect.size());
        for (const auto& [key, s] : expect) CHECK(got.at(key) == s);
    }

    SUBCASE("telescoping closes exactly at the retained order") {
        for (int p : {1, 2}) {
            KernelConfig c = cfg_g1(p, 4);
            ModeMatrix R = R_matrix(c);
            ModeMatrix rt;
            for (const auto& [key, s] : R)
                if (key.second.second >= c.shift())
                    rt.emplace(MatKey{key.first, {key.second.first, key.second.second - c.shift()}}, s);
            ModeMatrix resolv = resolvent(c);
            // (I - Rt) resolvent = I - Rt^{K+1}, and the tail is beyond order T
            ModeMatrix prod = mode_mat_mul(rt, resolv);
            ModeMatrix lhs;
            for (const auto& [key, s] : resolv) lhs.emplace(key, s);
            for (const auto& [key, s] : prod) {
                auto [slot, fresh] = lhs.try_emplace(key, -s);
                if (!fresh) {
                    slot->second -= s;
                    if (slot->second.is_zero()) lhs.erase(slot);
                }
            }
            ModeMatrix id = mode_identity(c, 4);
            CHECK(lhs.size() == id.size());
            for (const auto& [key, s] : id) CHECK(lhs.at(key) == s);

            int K = (c.T2 + c.shift() - 1) / c.shift();
            ModeMatrix tail = mode_identity(c, 4);
            for (int k = 0; k <= K; ++k) tail = mode_mat_mul(tail, rt);
            CHECK(tail.empty()); // every entry of Rt^k has order >= k(2p-1)/2
        }
    }
}

TEST_CASE("dressed kernel") {
    SUBCASE("moduli off") {
        KernelConfig c = cfg_g1(1, 0);
        exact::DiffForm f = psi_full(c, X, Y);
        CHECK(f.body.terms().size() == 1);
        CHECK(f.body.coefficient({0}) == psi0(c, X, Y));
    }

    SUBCASE("order-one correction at weight one") {
        KernelConfig c = cfg_g1(1, 2);
        exact::DiffForm f = psi_full(c, X, Y);
        CHECK(f.body.coefficient({0}) == psi0(c, X, Y));
        // no half-order term: the lowest product p~ q costs a full order
        CHECK(f.body.coefficient({1}).is_zero());
        RationalFunction expect =
            -inv_pow(v(X) - v(W1), 2) * (v(Wm1) - v(Y)).inverse() -
            inv_pow(v(X) - v(Wm1), 2) * (v(W1) - v(Y)).inverse();
        CHECK(f.body.coefficient({2}) == expect);
        CHECK(f.degrees == std::map<VarId, int>{{X, 1}}); // dy^0 is erased
    }

    SUBCASE("form degrees carry the weight") {
        KernelConfig c = cfg_g1(2, 0);
        exact::DiffForm f = psi_full(c, X, Y);
        CHECK(f.degrees == std::map<VarId, int>{{X, 2}, {Y, -1}});
    }
}

TEST_CASE("boundary vectors") {
    SUBCASE("weight one fold") {
        KernelConfig c = cfg_g1(1, 2);
        ChiTheta ct = chi_theta(c, X);
        // rho-free part of chi_a(0) is the bare kernel at the center
        CHECK(ct.chi.at({1, 0}).coefficient({0}) == (v(X) - v(W1)).inverse());
        CHECK(ct.chi.at({-1, 0}).coefficient({0}) == (v(X) - v(Wm1)).inverse());
        // theta_a(0) = chi_a(0) - chi_{-a}(0)
        CHECK(ct.theta.at({1, 0}) == ct.chi.at({1, 0}) - ct.chi.at({-1, 0}));
        CHECK(ct.theta.at({-1, 0}) == ct.chi.at({-1, 0}) - ct.chi.at({1, 0}));
        for (const auto& [key, s] : ct.chi) CHECK(s.nonnegative_exponents());
        CHECK(ct.Theta.at({1, 0}).degrees == std::map<VarId, int>{{X, 1}});
        CHECK(ct.Theta.at({1, 0}).body == ct.theta.at({1, 0}));
    }

    SUBCASE("weight two window") {
        KernelConfig c = cfg_g1(2, 2);
        ChiTheta ct = chi_theta(c, X);
        for (int l = 0; l <= 2; ++l) {
            // leading term is the windowed derivative of the bare kernel
            CHECK(ct.chi.at({1, l}).coefficient({0}) == inv_pow(v(X) - v(W1), l + 1));
            CHECK(ct.chi.at({1, l}).nonnegative_exponents());
        }
        CHECK(ct.chi.find({1, 3}) == ct.chi.end()); // window ends at 2p-2

        // the fold reaches below order zero at the top of the window
        const TruncatedSeries& top = ct.theta.at({1, 2});
        CHECK(top.coefficient({-2}) == (v(X) - v(Wm1)).inverse());
        CHECK_FALSE(top.nonnegative_exponents());
    }

    SUBCASE("mode cutoff stability") {
        for (int p : {1, 2}) {
            KernelConfig base = cfg_g1(p, 2);
            KernelConfig wide = base;
            wide.M = base.mode_cutoff() + 2;
            ChiTheta a = chi_theta(base, X);
            ChiTheta b = chi_theta(wide, X);
            for (const auto& [key, s] : a.theta) CHECK(b.theta.at(key) == s);
            for (const auto& [key, s] : a.chi) CHECK(b.chi.at(key) == s);
            exact::DiffForm fa = psi_full(base, X, Y);
            exact::DiffForm fb = psi_full(wide, X, Y);
            CHECK(fa.equals(fb));
        }
    }

    SUBCASE("genus two fold pairs handles independently") {
        KernelConfig c;
        c.g = 2;
        c.p = 1;
        c.T2 = 2;
        ChiTheta ct = chi_theta(c, X);
        CHECK(ct.theta.at({2, 0}).coefficient({0, 0}) ==
              (v(X) - v(exact::var_w(2))).inverse() -
                  (v(X) - v(exact::var_w(-2))).inverse());
    }
}
