#pragma once

#include "exact/ratfun.hpp"
#include "voa/heisenberg.hpp"

namespace voac::voa {

using exact::RationalFunction;

// Unique invariant bilinear form with <1,1> = 1; alpha is the Mobius scale
// of the adjoint (alpha = 1 is the reference form). Symmetric, and zero
// across distinct weights.
RationalFunction bilinear_form(const HeisenbergVOA& voa, const FockState& a, const FockState& b,
                               const RationalFunction& alpha);
Rational bilinear_form_ref(const HeisenbergVOA& voa, const FockState& a, const FockState& b);

// u^dag(n) = sign * alpha^alpha_exp * u(mode) for quasiprimary u of weight p:
// sign = (-1)^p, alpha_exp = n+1-p, mode = 2p-2-n
struct AdjointMode {
    int mode;
    int alpha_exp;
    int sign;
};
AdjointMode adjoint_mode(const HeisenbergVOA& voa, const FockState& u, int n);
FockState adjoint_apply(const HeisenbergVOA& voa, const FockState& u, int n, const FockState& v,
                        const Rational& alpha);

// basis of V_level with its reference-form dual: <basis_i, dual_j> = delta_ij
struct DualBasis {
    std::vector<Partition> basis;
    std::vector<FockState> duals;
};
DualBasis dual_basis(const HeisenbergVOA& voa, int level);
std::vector<std::vector<Rational>> gram_matrix(const HeisenbergVOA& voa, int level);

// sum_{b in V_level} (u(m)b) (x) dual(b)  ==  sum_{b' in V_{level+p-m-1}} b' (x) u^dag(m) dual(b')
bool adjoint_lemma_check(const HeisenbergVOA& voa, const FockState& u, int m, int level);

} // namespace voac::voa
