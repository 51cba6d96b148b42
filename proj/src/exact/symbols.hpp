#pragma once

#include <cstdint>
#include <string>

namespace voac::exact {

using VarId = std::int32_t;

// Process-global interned symbols. A fixed block is interned at startup in a
// deterministic order, so variable ids, monomial orderings, and printed term
// orders are identical across runs regardless of call order.
VarId var(const std::string& name);
const std::string& var_name(VarId id);
bool var_known(const std::string& name);

// canonical names shared across modules
std::string y_name(int k);   // "y1", insertion points, k >= 1
std::string w_name(int a);   // "w_1", "w_-1", sewing centers, a in ±{1..g}
std::string fix_name(int a); // "W_1", Schottky fixed points
std::string mult_name(int a); // "q_1", Schottky multipliers, a >= 1
std::string cluster_x_name(int i); // "x1", initial cluster variables
std::string coeff_u_name(int i);   // "u1", coefficient-monomial variables

VarId var_x();       // "x", the distinguished insertion point
VarId var_y(int k);
VarId var_w(int a);
VarId var_fix(int a);
VarId var_mult(int a);
VarId var_q();       // "q", nome for 1-parameter expansions
VarId var_alpha();   // bilinear form parameter

} // namespace voac::exact
