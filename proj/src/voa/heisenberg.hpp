#pragma once

#include "voa/fock.hpp"

#include <vector>

namespace voac::voa {

// Rank-one free boson: [a(m), a(n)] = m delta_{m+n,0} on the charge-zero
// Fock module, central charge 1, conformal vector omega = (1/2) a(-1)^2 |0>.
// All operations are exact; weights are capped by the cutoff.
class HeisenbergVOA {
public:
    explicit HeisenbergVOA(int weight_cutoff = 16);

    int cutoff() const { return cutoff_; }
    Rational central_charge() const { return Rational(1); }
    FockState vacuum() const { return FockState::vacuum(); }
    FockState a_state() const { return FockState::basis({1}); }
    FockState omega() const { return FockState::basis({1, 1}).scaled(exact::rat(1, 2)); }
    int dim(int level) const { return static_cast<int>(partitions_of(level).size()); }

    // u(n)v with Y(u,z) = sum_n u(n) z^{-n-1}
    FockState mode_action(const FockState& u, int n, const FockState& v) const;

    FockState virasoro(int n, const FockState& v) const; // L(n) = omega-mode (n+1)
    FockState translate(const FockState& v) const;       // L(-1)
    bool is_quasiprimary(const FockState& u) const;      // homogeneous, L(1)u = 0

    // o(v)w with o(v) = v(wt(v)-1) on homogeneous components
    FockState zero_mode(const FockState& v, const FockState& w) const;

    // matrix of the y^ypow coefficient of Y(v,y) between graded pieces;
    // rows indexed by partitions_of(wout), columns by partitions_of(win)
    std::vector<std::vector<Rational>> vertex_block(const FockState& v, int win, int wout,
                                                    int ypow) const;

    // u(k) Y(v,z) - Y(v,z) u(k) = sum_{j>=0} binom(k,j) Y(u(j)v, z) z^{k-j},
    // checked coefficientwise in z on sample over the full computable window
    bool commutator_check(const FockState& u, int k, const FockState& v,
                          const FockState& sample) const;

private:
    FockState mode_action_basis(const Partition& u, int n, const FockState& v) const;
    int cutoff_;
};

} // namespace voac::voa
