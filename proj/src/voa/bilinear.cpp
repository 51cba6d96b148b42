#include "voa/bilinear.hpp"

#include "exact/errors.hpp"
#include "util/linalg.hpp"

#include <map>
#include <utility>

namespace voac::voa {

using exact::Rational;

namespace {

RationalFunction rf_power(const RationalFunction& f, int e) {
    RationalFunction acc{Rational(1)};
    for (int i = 0; i < std::abs(e); ++i) acc *= f;
    return e < 0 ? acc.inverse() : acc;
}

// <a(-m)s, t> = -alpha^{-m} <s, a(m)t>, <1,1> = 1
RationalFunction form_basis(const Partition& a, const FockState& b,
                            const RationalFunction& alpha) {
    if (a.empty()) return RationalFunction(b.coefficient({}));
    int m = a[0];
    Partition s(a.begin() + 1, a.end());
    FockState reduced = b.annihilated(m);
    if (reduced.is_zero()) return {};
    return -rf_power(alpha, -m) * form_basis(s, reduced, alpha);
}

} // namespace

RationalFunction bilinear_form(const HeisenbergVOA& voa, const FockState& a, const FockState& b,
                               const RationalFunction& alpha) {
    if (a.max_weight() > voa.cutoff() || b.max_weight() > voa.cutoff())
        throw CutoffError("bilinear form arguments exceed cutoff");
    if (alpha.is_zero()) throw InvalidError("bilinear form needs alpha != 0");
    RationalFunction out;
    for (auto& [pa, ca] : a.terms())
        for (auto& [pb, cb] : b.terms()) {
            if (partition_weight(pa) != partition_weight(pb)) continue; // graded pieces orthogonal
            RationalFunction f = form_basis(pa, FockState::basis(pb), alpha);
            out += f.scaled(ca * cb);
        }
    return out;
}

Rational bilinear_form_ref(const HeisenbergVOA& voa, const FockState& a, const FockState& b) {
    return bilinear_form(voa, a, b, RationalFunction(Rational(1))).constant_value();
}

AdjointMode adjoint_mode(const HeisenbergVOA& voa, const FockState& u, int n) {
    if (!voa.is_quasiprimary(u))
        throw InvalidError("adjoint mode formula needs a quasiprimary state: " + u.str());
    int p = u.weight();
    return {2 * p - 2 - n, n + 1 - p, p % 2 ? -1 : 1};
}

FockState adjoint_apply(const HeisenbergVOA& voa, const FockState& u, int n, const FockState& v,
                        const Rational& alpha) {
    if (alpha == 0) throw InvalidError("adjoint needs alpha != 0");
    AdjointMode am = adjoint_mode(voa, u, n);
    Rational c = exact::pow_int(alpha, am.alpha_exp) * Rational(am.sign);
    return voa.mode_action(u, am.mode, v).scaled(c);
}

std::vector<std::vector<Rational>> gram_matrix(const HeisenbergVOA& voa, int level) {
    auto parts = partitions_of(level);
    std::vector<std::vector<Rational>> g(parts.size(), std::vector<Rational>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j)
            g[i][j] = bilinear_form_ref(voa, FockState::basis(parts[i]),
                                        FockState::basis(parts[j]));
    return g;
}

DualBasis dual_basis(const HeisenbergVOA& voa, int level) {
    if (level > voa.cutoff()) throw CutoffError("dual basis level exceeds cutoff");
    DualBasis out;
    out.basis = partitions_of(level);
    auto inv = util::invert(gram_matrix(voa, level));
    if (!inv)
        throw VerifyError("degenerate invariant form at level " + std::to_string(level));
    // dual_j = sum_i inv[i][j] basis_i gives <basis_i, dual_j> = delta_ij
    for (std::size_t j = 0; j < out.basis.size(); ++j) {
        FockState d;
        for (std::size_t i = 0; i < out.basis.size(); ++i)
            d += FockState::basis(out.basis[i]).scaled((*inv)[i][j]);
        out.duals.push_back(std::move(d));
    }
    return out;
}

bool adjoint_lemma_check(const HeisenbergVOA& voa, const FockState& u, int m, int level) {
    int p = u.weight();
    int level2 = level + p - m - 1;
    using TensorKey = std::pair<Partition, Partition>;
    std::map<TensorKey, Rational> lhs, rhs;
    auto accumulate = [](std::map<TensorKey, Rational>& acc, const FockState& left,
                         const FockState& right) {
        for (auto& [pl, cl] : left.terms())
            for (auto& [pr, cr] : right.terms()) {
                auto [it, fresh] = acc.emplace(TensorKey{pl, pr}, cl * cr);
                if (!fresh) it->second += cl * cr;
            }
    };
    if (level >= 0) {
        DualBasis db = dual_basis(voa, level);
        for (std::size_t i = 0; i < db.basis.size(); ++i)
            accumulate(lhs, voa.mode_action(u, m, FockState::basis(db.basis[i])), db.duals[i]);
    }
    if (level2 >= 0) {
        DualBasis db2 = dual_basis(voa, level2);
        for (std::size_t i = 0; i < db2.basis.size(); ++i)
            accumulate(rhs, FockState::basis(db2.basis[i]),
                       adjoint_apply(voa, u, m, db2.duals[i], Rational(1)));
    }
    auto purge = [](std::map<TensorKey, Rational>& acc) {
        for (auto it = acc.begin(); it != acc.end();)
            it = it->second == 0 ? acc.erase(it) : std::next(it);
    };
    purge(lhs);
    purge(rhs);
    return lhs == rhs;
}

} // namespace voac::voa
