#pragma once

#include "exact/series.hpp"

#include <map>
#include <utility>
#include <vector>

namespace voac::zhu {

// Universal reduction kernels for a weight-p quasiprimary state at genus g.
// Everything here is built from rational functions of the sewing centers and
// formal powers of the moduli; no state-space object ever enters.
struct KernelConfig {
    int g = 1;  // genus
    int p = 1;  // weight of the reducing state
    int T2 = 0; // retained rho order, half units (2T)
    int M = -1; // mode cutoff, -1 selects the default

    // optional Laurent polynomials f_0..f_{2p-2}, written in var_x();
    // missing tail entries are zero
    std::vector<exact::RationalFunction> f;

    void validate() const;
    int mode_cutoff() const; // default keeps every retained order exact
    int shift() const { return 2 * p - 1; } // index offset of the delta matrix
};

using ModeKey = std::pair<int, int>; // (signed handle a, mode index m >= 0)
using ModeVector = std::map<ModeKey, exact::TruncatedSeries>;
using MatKey = std::pair<ModeKey, ModeKey>;
using ModeMatrix = std::map<MatKey, exact::TruncatedSeries>;
using FormVector = std::map<ModeKey, exact::DiffForm>;

// psi_p^(0)(x,y) = 1/(x-y) + sum_l f_l(x) y^l
exact::RationalFunction psi0(const KernelConfig& cfg, exact::VarId x, exact::VarId y);

// E_m^n(y) = sum_l d^(m)f_l(y) * d^(n)(y^l), divided derivatives
exact::RationalFunction E_entry(const KernelConfig& cfg, int m, int n, exact::VarId y);

// p_a(x,m) = rho_a^(m/2) d_y^(m) psi0(x, w_a)
ModeVector p_vector(const KernelConfig& cfg, exact::VarId x);

// q_a(y;m) = (-1)^p rho_a^((m+1)/2) d_x^(m) psi0(w_{-a}, y)
ModeVector q_vector(const KernelConfig& cfg, exact::VarId y);

// R_ab(m,n): moment matrix of psi0 between handles; the a = -b diagonal is
// carried entirely by the f-dependent E terms
ModeMatrix R_matrix(const KernelConfig& cfg);

// Delta_ab(m,n) = delta_{m,n+2p-1} delta_ab
ModeMatrix delta_matrix(const KernelConfig& cfg);

ModeMatrix mode_identity(const KernelConfig& cfg, int order2);
ModeMatrix mode_mat_mul(const ModeMatrix& A, const ModeMatrix& B);
ModeMatrix mode_mat_add(const ModeMatrix& A, const ModeMatrix& B);
ModeVector vec_mat_mul(const ModeVector& v, const ModeMatrix& A); // row vector
exact::TruncatedSeries vec_dot(const ModeVector& v, const ModeVector& w, int genus, int order2);

// sum_{k<=K} (R Delta)^k with K = ceil(2T/(2p-1)); exact at order T
ModeMatrix resolvent(const KernelConfig& cfg);

// psi_p = psi0 + p~ (I - R Delta)^{-1} q, dressed as dx^p dy^{1-p}
exact::DiffForm psi_full(const KernelConfig& cfg, exact::VarId x, exact::VarId y);

struct ChiTheta {
    ModeVector chi_full; // every mode index, internal accuracy
    ModeVector chi;      // window l in [0, 2p-2], truncated to T2
    ModeVector theta;    // same window; negative rho powers may appear for p >= 2
    FormVector Theta;    // theta dressed with dx^p
};

// chi_a(l) = rho_a^{-l/2} (p + p~ (I - R Delta)^{-1} R)_a(l);
// theta folds chi onto positive handles
ChiTheta chi_theta(const KernelConfig& cfg, exact::VarId x);

} // namespace voac::zhu
