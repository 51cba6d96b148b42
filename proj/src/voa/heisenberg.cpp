#include "voa/heisenberg.hpp"

#include "exact/errors.hpp"

#include <algorithm>

namespace voac::voa {

using exact::binomial;
using exact::Integer;

HeisenbergVOA::HeisenbergVOA(int weight_cutoff) : cutoff_(weight_cutoff) {
    if (weight_cutoff < 1) throw InvalidError("weight cutoff must be >= 1");
}

FockState HeisenbergVOA::mode_action(const FockState& u, int n, const FockState& v) const {
    FockState out;
    for (auto& [uw, uc] : u.graded_components()) {
        for (auto& [vw, vc] : v.graded_components()) {
            int wout = uw + vw - n - 1;
            if (wout > cutoff_)
                throw CutoffError("mode action result weight " + std::to_string(wout) +
                                  " exceeds cutoff " + std::to_string(cutoff_));
            if (wout < 0) continue; // charge-zero module is lower bounded
            for (auto& [p, c] : uc.terms())
                out += mode_action_basis(p, n, vc.scaled(c));
        }
    }
    return out;
}

// (a(-m) s)(n) = sum_{j>=0} binom(m+j-1, j)
//                [ a(-m-j) s(n+j)  -  (-1)^m s(n-m-j) a(j) ]
// with 1(n) = delta_{n,-1} Id and a(0) = 0 on the charge-zero module.
FockState HeisenbergVOA::mode_action_basis(const Partition& u, int n, const FockState& v) const {
    if (v.is_zero()) return {};
    if (u.empty()) return n == -1 ? v : FockState();
    int m = u[0];
    Partition s(u.begin() + 1, u.end());
    int ws = partition_weight(s);
    FockState out;
    int bound1 = ws + v.max_weight() - 1 - n; // s(n+j) v = 0 beyond this
    int bound2 = v.max_part();                // a(j) v = 0 beyond this
    for (int j = 0; j <= std::max(bound1, bound2); ++j) {
        Rational coef{binomial(Integer(m + j - 1), static_cast<unsigned>(j))};
        if (coef == 0) continue;
        if (j <= bound1) {
            FockState t = mode_action_basis(s, n + j, v);
            if (!t.is_zero()) out += t.created(m + j).scaled(coef);
        }
        if (j >= 1 && j <= bound2) {
            FockState t = mode_action_basis(s, n - m - j, v.annihilated(j));
            if (!t.is_zero()) {
                Rational c2 = m % 2 ? coef : -coef; // -(-1)^m
                out += t.scaled(c2);
            }
        }
    }
    return out;
}

FockState HeisenbergVOA::virasoro(int n, const FockState& v) const {
    return mode_action(omega(), n + 1, v);
}

FockState HeisenbergVOA::translate(const FockState& v) const { return virasoro(-1, v); }

bool HeisenbergVOA::is_quasiprimary(const FockState& u) const {
    return u.is_homogeneous() && virasoro(1, u).is_zero();
}

FockState HeisenbergVOA::zero_mode(const FockState& v, const FockState& w) const {
    FockState out;
    for (auto& [vw, vc] : v.graded_components()) out += mode_action(vc, vw - 1, w);
    return out;
}

std::vector<std::vector<Rational>> HeisenbergVOA::vertex_block(const FockState& v, int win,
                                                               int wout, int ypow) const {
    auto in_basis = partitions_of(win);
    auto out_basis = partitions_of(wout);
    std::vector<std::vector<Rational>> block(
        out_basis.size(), std::vector<Rational>(in_basis.size(), Rational(0)));
    int n = -ypow - 1; // Y(v,y) = sum v(n) y^{-n-1}
    for (auto& [wv, vc] : v.graded_components()) {
        if (win + wv - n - 1 != wout) continue; // this y-power skips the target grade
        for (std::size_t col = 0; col < in_basis.size(); ++col) {
            FockState img = mode_action(vc, n, FockState::basis(in_basis[col]));
            for (auto& [p, c] : img.terms()) {
                if (partition_weight(p) != wout)
                    throw VerifyError("vertex block image escaped the target grade");
                for (std::size_t row = 0; row < out_basis.size(); ++row)
                    if (out_basis[row] == p) block[row][col] += c;
            }
        }
    }
    return block;
}

bool HeisenbergVOA::commutator_check(const FockState& u, int k, const FockState& v,
                                     const FockState& sample) const {
    int wu = u.max_weight(), wv = v.max_weight(), wd = sample.max_weight();
    // coefficient of z^t: n = -t-1 on the left, n' = k-j-t-1 on the right;
    // output weight wu+wv+wd-k+t-1 must lie in [0, cutoff]
    int tmin = k + 1 - wu - wv - wd;
    // the v(n)-first intermediate has weight wv+wd+t, also capped
    int tmax = std::min(k + 1 + cutoff_ - wu - wv - wd, cutoff_ - wv - wd);
    for (int t = tmin; t <= tmax; ++t) {
        int n = -t - 1;
        FockState lhs =
            mode_action(u, k, mode_action(v, n, sample)) -
            mode_action(v, n, mode_action(u, k, sample));
        FockState rhs;
        for (int j = 0; j <= wu + wv - 1; ++j) { // u(j)v = 0 beyond this
            FockState ujv = mode_action(u, j, v);
            if (ujv.is_zero()) continue;
            // z^{k-j} Y(u(j)v, z) contributes the mode n' = k-j-t-1 at z^t
            Rational c{binomial(Integer(k), static_cast<unsigned>(j))};
            if (c == 0) continue;
            rhs += mode_action(ujv, k - j - t - 1, sample).scaled(c);
        }
        if (!(lhs == rhs)) return false;
    }
    return true;
}

} // namespace voac::voa
