#pragma once

#include "exact/ratfun.hpp"

#include <string>
#include <vector>

namespace voac::cluster {

// Element of a tropical semifield on m generators: the exponent vector of a
// Laurent monomial u_1^{e_1}..u_m^{e_m}. Multiplication adds exponents and
// the auxiliary addition takes componentwise minima; m = 0 models the
// one-element semifield of coefficient-free seeds.
struct TropicalElement {
    std::vector<int> e;

    static TropicalElement one(std::size_t m) { return {std::vector<int>(m, 0)}; }
    std::size_t rank() const { return e.size(); }
    bool is_one() const;

    TropicalElement times(const TropicalElement& o) const;
    TropicalElement inverse() const;
    TropicalElement pow(int k) const;
    TropicalElement oplus(const TropicalElement& o) const;
    TropicalElement oplus_one() const; // componentwise min with 0

    bool operator==(const TropicalElement&) const = default;
    std::string str() const;
};

// Integer exchange matrix, validated at construction: some positive integer
// diagonal D makes DB skew-symmetric. The symmetrizer is recovered by
// propagating the forced ratios d_j / d_i = -b_ij / b_ji across the nonzero
// pattern and checking consistency on cycles.
class ExchangeMatrix {
public:
    explicit ExchangeMatrix(std::vector<std::vector<long long>> b);

    int n() const { return static_cast<int>(b_.size()); }
    long long at(int i, int j) const; // 1-based
    const std::vector<std::vector<long long>>& rows() const { return b_; }
    const std::vector<long long>& symmetrizer() const { return d_; }

    bool operator==(const ExchangeMatrix& o) const { return b_ == o.b_; }
    std::string str() const;

private:
    std::vector<std::vector<long long>> b_;
    std::vector<long long> d_;
};

ExchangeMatrix mutate_B(const ExchangeMatrix& B, int k);

std::vector<TropicalElement> mutate_y(const std::vector<TropicalElement>& y,
                                      const ExchangeMatrix& B, int k);

// Seed of a rank-n cluster algebra. Cluster variables are kept as exact
// rational functions of the initial variables x_1..x_n with coefficient
// monomials in u_1..u_m, so every identity check is literal equality.
struct ClassicalSeed {
    std::vector<exact::RationalFunction> x;
    std::vector<TropicalElement> y;
    ExchangeMatrix B;

    bool operator==(const ClassicalSeed&) const = default;
};

exact::VarId var_cluster_x(int i); // 1-based
exact::VarId var_coeff_u(int i);

// u_1^{e_1}..u_m^{e_m} as a rational function
exact::RationalFunction coefficient_monomial(const TropicalElement& t);

ClassicalSeed initial_seed(const ExchangeMatrix& B, std::vector<TropicalElement> y);
ClassicalSeed trivial_seed(const ExchangeMatrix& B);   // one-element semifield
ClassicalSeed principal_seed(const ExchangeMatrix& B); // y_i = u_i

// exchange relation in direction k; only entry k changes
std::vector<exact::RationalFunction> mutate_x(const ClassicalSeed& s, int k);

ClassicalSeed mutate_seed(const ClassicalSeed& s, int k);
ClassicalSeed apply_word(const ClassicalSeed& s, const std::vector<int>& word);

struct EnumerationResult {
    long long clusters = 0;  // distinct unordered variable sets
    long long variables = 0; // distinct cluster variables
    bool closed = false;     // every discovered cluster was expanded under cap
    int depth = 0;           // largest depth that contributed a new cluster
};

enum class SearchOrder { Breadth, Depth };

// Closure of the seed under all mutations, deduplicated by the normalized
// variable set. closed is only reported when neither the depth bound nor the
// cluster cap cut anything off, so it certifies a finite exchange graph.
EnumerationResult enumerate_clusters(const ClassicalSeed& seed, int max_depth, long long cap,
                                     SearchOrder order = SearchOrder::Breadth);

struct LaurentReport {
    bool laurent = true;
    // per variable: exponent of each initial x_i in the (monomial) denominator
    std::vector<std::vector<long long>> denominators;
};

// Mutates along word and checks that every resulting cluster variable is a
// Laurent polynomial in the initial variables: its normalized denominator
// must be a single monomial. Coefficient generators may appear there too;
// they are units of the coefficient ring and are not reported.
LaurentReport laurent_check(const ClassicalSeed& seed, const std::vector<int>& word);

} // namespace voac::cluster
