#pragma once

#include "schottky/schottky.hpp"
#include "voa/bilinear.hpp"
#include "zhu/kernel.hpp"

#include <string>
#include <vector>

namespace voac::chars {

using exact::DiffForm;
using exact::Rational;
using exact::RationalFunction;
using exact::TruncatedSeries;
using exact::VarId;

// a state inserted at a coordinate symbol
struct Insertion {
    voa::FockState state;
    VarId coord;
};

// Read-only bundle for the handle sums: the state space, the sewing centers
// (the scales rho_a stay formal expansion variables throughout), the basis
// weight bound L and the retained rho order T. Terms of total basis weight
// above T sit at rho order above T, so L = T already makes every retained
// coefficient exact; larger L must reproduce the same series.
struct CharacterContext {
    const voa::HeisenbergVOA* voa = nullptr;
    schottky::SchottkyParams params;
    int L = 0;
    int T = 0;

    void validate() const;
    int order2() const { return 2 * T; }
};

// <1, Y(v1,y1)...Y(vn,yn) 1> as the rational function agreeing with the
// |y1| > ... > |yn| mode expansion: normal ordering leaves no contraction
// inside an insertion, so the value is the sum over complete pairings of
// cross-insertion oscillator contractions.
RationalFunction genus0_npoint(const voa::HeisenbergVOA& voa, const std::vector<Insertion>& ins);

struct NPointResult {
    DiffForm value;
    std::vector<Insertion> insertions;
};

TruncatedSeries genus_g_partition(const CharacterContext& ctx);
// tensor square V (x) V by explicit pair-basis enumeration per handle
TruncatedSeries genus_g_partition_rank2(const CharacterContext& ctx);

// sum over per-handle dual pairs of sphere correlators, dressed with
// prod_k dy_k^{wt(v_k)}; insertions must be homogeneous
NPointResult genus_g_npoint(const CharacterContext& ctx, const std::vector<Insertion>& ins);

// Submodule splittings of the state space restricting each handle sum; only
// the one-block splitting ships. alpha picks a block per handle.
enum class Decomposition { Trivial };
NPointResult module_npoint(const CharacterContext& ctx, Decomposition dec,
                           const std::vector<int>& alpha, const std::vector<Insertion>& ins);
// sum over an explicit list of block tuples; the empty list gives zero
NPointResult module_npoint_sum(const CharacterContext& ctx, Decomposition dec,
                               const std::vector<std::vector<int>>& alphas,
                               const std::vector<Insertion>& ins);

// X_a(m) = rho_a^{-m/2} sum_b Z^(0)(v,y; ...; u(m) b_a, w_a; ...) over signed
// handles a and modes 0 <= m <= M, kept at the given series order; u must be
// quasiprimary. Entries may carry negative half powers of the scales.
zhu::ModeVector X_vector(const CharacterContext& ctx, const voa::FockState& u,
                         const std::vector<Insertion>& ins, int M, int order2);

// o_a(l) = rho_a^{l/2} X_a(l) over the window l in [0, 2p-2]. The basis depth
// per entry is L + max(0, l-p+1): the theta fold reaches down by p-1-l scale
// orders, so the window dot product needs o that much deeper to stay exact
// at order T. Every entry is audited to have nonnegative exponents.
zhu::ModeVector o_vector(const CharacterContext& ctx, const voa::FockState& u,
                         const std::vector<Insertion>& ins);
zhu::FormVector O_vector(const CharacterContext& ctx, const voa::FockState& u,
                         const std::vector<Insertion>& ins);

// G_a(m) = sum_k sum_j d_k^(j) q_a(y_k; m) Z^(g)(...; u(j)v_k, y_k; ...);
// the derivative acts on the kernel slot only
zhu::ModeVector G_vector(const CharacterContext& ctx, const voa::FockState& u,
                         const std::vector<Insertion>& ins,
                         const std::vector<RationalFunction>& f = {});

// the scratch symbol holding the kernel's second argument before insertion
// points are substituted; exposed so tests can plant kernel defects
VarId kernel_point();

// Right side of the weight-p reduction identity: kernel terms against
// u(j)v_k plus the Theta window contracted with o. f seeds the free part of
// the kernel; kernel_fault, when set, is added to the dressed kernel before
// use (verification probes only).
NPointResult zhu_reduce(const CharacterContext& ctx, const voa::FockState& u, VarId x,
                        const std::vector<Insertion>& ins,
                        const std::vector<RationalFunction>& f = {},
                        const TruncatedSeries* kernel_fault = nullptr);

struct ReductionReport {
    bool ok = false;
    std::string detail;
};

// brute-force left side sum_b Z^(0)(u,x; v,y; b,w) dx^p dy^wt compared
// coefficient by coefficient against zhu_reduce through order T
ReductionReport verify_reduction(const CharacterContext& ctx, const voa::FockState& u, VarId x,
                                 const std::vector<Insertion>& ins,
                                 const std::vector<RationalFunction>& f = {},
                                 const TruncatedSeries* kernel_fault = nullptr);

// genus-one multiplier expansion: w_1 = 1/(1-q), w_{-1} = -q/(1-q),
// rho = -q/(1-q)^2, Taylor coefficients at q = 0
std::vector<Rational> nome_coefficients(const TruncatedSeries& s, unsigned count);

} // namespace voac::chars
