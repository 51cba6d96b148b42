#pragma once

#include "exact/ratfun.hpp"

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace voac::schottky {

// Sewing data for genus g: per handle a = 1..g the two centers w_{±a} and the
// modulus rho_a (= rho_{-a}). Entries are rational functions so one record
// serves both numeric runs and formal parameter studies. An empty rho vector
// means the moduli are kept formal (series bookkeeping happens elsewhere).
struct SchottkyParams {
    int g = 0;
    std::vector<exact::RationalFunction> w_plus;  // w_a at index a-1
    std::vector<exact::RationalFunction> w_minus; // w_{-a} at index a-1
    std::vector<exact::RationalFunction> rho;     // rho_a at index a-1, may be empty

    const exact::RationalFunction& w(int a) const; // signed handle index
    const exact::RationalFunction& rho_of(int a) const;
    bool has_rho() const { return !rho.empty(); }
    bool numeric() const; // every entry a constant, rho present
    exact::Rational w_value(int a) const;
    exact::Rational rho_value(int a) const;
};

// centers as interned symbols w_{±a}, moduli formal
SchottkyParams symbolic_params(int g);

nlohmann::json params_json(const SchottkyParams& p);
SchottkyParams params_from_json(const nlohmann::json& j);

// 2x2 exact matrix acting on P^1 by (A z + B)/(C z + D). Only the class of
// the matrix up to scale matters; determinants are nonzero but arbitrary
// (handle generators have det = -rho_a, which has no rational square root).
struct ProjMap {
    exact::RationalFunction A, B, C, D;

    static ProjMap identity();
    ProjMap compose(const ProjMap& o) const; // matrix product
    ProjMap inverse_map() const;             // adjugate
    exact::RationalFunction apply(const exact::RationalFunction& z) const;
    exact::RationalFunction det() const;
    bool proportional(const ProjMap& o) const;
};

// determinant exactly 1; the parameter-space action takes these
struct MobiusMap {
    exact::Rational A, B, C, D;
    MobiusMap(exact::Rational a, exact::Rational b, exact::Rational c, exact::Rational d);
    MobiusMap compose(const MobiusMap& o) const;
    exact::Rational apply(const exact::Rational& z) const;
};

// reduced word in the free group on handles: letters[i] != -letters[i+1]
struct GroupWord {
    std::vector<int> letters;
    bool operator==(const GroupWord& o) const { return letters == o.letters; }
    std::string str() const; // "1,-2,1"; empty word prints "e"
};

// attracting/repelling fixed points and multiplier of a handle generator
struct FixedPointData {
    exact::Rational W_plus;  // repelling fixed point of gamma_a
    exact::Rational W_minus; // attracting, |q| < 1
    exact::Rational q;
};

// w_a = (W_a - q_a W_{-a})/(1 - q_a), rho_a = -q_a (W_a - W_{-a})^2/(1 - q_a)^2
SchottkyParams params_from_fixed_points(const std::vector<exact::RationalFunction>& W_plus,
                                        const std::vector<exact::RationalFunction>& W_minus,
                                        const std::vector<exact::RationalFunction>& q);

// gamma_a z = w_{-a} + rho_a/(z - w_a); negative index gives the inverse map
ProjMap generator_map(const SchottkyParams& p, int a);

// conjugation form of the generator: adj(sigma) diag(q, 1) sigma with
// sigma = [[1, -W_minus], [1, -W_plus]]; the square-root normalization of
// sigma cancels in the composition, so this is exact
ProjMap conjugated_generator(const exact::RationalFunction& W_plus,
                             const exact::RationalFunction& W_minus,
                             const exact::RationalFunction& q);

// recover (W_a, W_{-a}, q_a) from sewing data by solving the fixed-point
// quadratic exactly; numeric mode only
FixedPointData fixed_points(const SchottkyParams& p, int a);

// true iff ((z'-W_{-a})/(z'-W_a)) ((z-W_a)/(z-W_{-a})) = q_a
bool sewing_check(const SchottkyParams& p, int a, const exact::Rational& z,
                  const exact::Rational& z_prime);

struct JordanResult {
    bool ok = true;
    int a = 0, b = 0; // first violating pair of signed indices when !ok
};

// isometric discs are disjoint iff |w_a - w_b| > sqrt|rho_a| + sqrt|rho_b|
// for all a != b; decided by exact nested squaring, no radicals materialized
JordanResult jordan_condition(const SchottkyParams& p);

// (w_a, rho_a) -> (w'_a, rho'_a) under gamma in SL2
SchottkyParams sl2_action(const MobiusMap& gamma, const SchottkyParams& p);

// all reduced words of length <= max_len, shortest first; count at length
// k >= 1 is 2g(2g-1)^{k-1}
std::vector<GroupWord> enumerate_words(int g, int max_len);

// product of generator matrices in letter order
ProjMap word_map(const SchottkyParams& p, const GroupWord& word);

struct LimitPoint {
    GroupWord word;
    std::optional<exact::Rational> point; // attracting fixed point when rational
    exact::Rational trace;                // of the word matrix
    exact::Rational disc;                 // trace^2 - 4 det
    bool parabolic = false;
};

// attracting fixed points of nonempty words, identity skipped
std::vector<LimitPoint> limit_point_cloud(const SchottkyParams& p, int max_len);

} // namespace voac::schottky
