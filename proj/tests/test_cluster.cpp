#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cluster/cluster.hpp"
#include "exact/errors.hpp"
#include "util/rng.hpp"

#include <numeric>
#include <vector>

using namespace voac;
using cluster::ClassicalSeed;
using cluster::ExchangeMatrix;
using cluster::TropicalElement;
using exact::RationalFunction;

namespace {

RationalFunction X(int i) { return RationalFunction::variable(cluster::var_cluster_x(i)); }
RationalFunction U(int i) { return RationalFunction::variable(cluster::var_coeff_u(i)); }

ExchangeMatrix A2() { return ExchangeMatrix({{0, 1}, {-1, 0}}); }
ExchangeMatrix A3() { return ExchangeMatrix({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}); }
ExchangeMatrix markov() { return ExchangeMatrix({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}}); }

// d_i b_ij = -d_j b_ji with the product rule keeps entries integral
ExchangeMatrix random_symmetrizable(util::Rng& rng, int n) {
    std::vector<long long> d(static_cast<std::size_t>(n));
    for (auto& v : d) v = rng.int_in(1, 3);
    std::vector<std::vector<long long>> b(static_cast<std::size_t>(n),
                                          std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            long long m = rng.int_in(-1, 1);
            long long g = std::gcd(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(j)]);
            b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                m * d[static_cast<std::size_t>(j)] / g;
            b[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                -m * d[static_cast<std::size_t>(i)] / g;
        }
    }
    return ExchangeMatrix(b);
}

std::vector<TropicalElement> random_tropical(util::Rng& rng, int n) {
    int rank = rng.int_in(0, 2);
    std::vector<TropicalElement> y;
    for (int i = 0; i < n; ++i) {
        TropicalElement t = TropicalElement::one(static_cast<std::size_t>(rank));
        for (auto& e : t.e) e = rng.int_in(-2, 2);
        y.push_back(t);
    }
    return y;
}

bool symmetrizes(const std::vector<long long>& d, const ExchangeMatrix& B) {
    for (int i = 1; i <= B.n(); ++i)
        for (int j = 1; j <= B.n(); ++j)
            if (d[static_cast<std::size_t>(i - 1)] * B.at(i, j) !=
                -d[static_cast<std::size_t>(j - 1)] * B.at(j, i))
                return false;
    return true;
}

} // namespace

TEST_CASE("tropical elements") {
    TropicalElement one = TropicalElement::one(3);
    CHECK(one.is_one());
    CHECK(one.rank() == 3);

    TropicalElement a{{1, -2, 0}};
    TropicalElement b{{0, 3, -1}};
    CHECK(a.times(b) == TropicalElement{{1, 1, -1}});
    CHECK(a.inverse() == TropicalElement{{-1, 2, 0}});
    CHECK(a.pow(3) == TropicalElement{{3, -6, 0}});
    CHECK(a.pow(-2) == TropicalElement{{-2, 4, 0}});
    CHECK(a.pow(0) == one);
    CHECK(a.times(a.inverse()) == one);

    CHECK(a.oplus(b) == TropicalElement{{0, -2, -1}});
    CHECK(a.oplus_one() == TropicalElement{{0, -2, 0}});
    CHECK(one.oplus_one() == one);
    CHECK(TropicalElement::one(0).oplus_one() == TropicalElement::one(0));

    CHECK_THROWS_AS(a.times(TropicalElement::one(2)), voac::InvalidError);
    CHECK_THROWS_AS(a.oplus(TropicalElement::one(1)), voac::InvalidError);
}

TEST_CASE("exchange matrix validation") {
    CHECK(A2().n() == 2);
    CHECK(A2().at(1, 2) == 1);
    CHECK(A2().at(2, 1) == -1);
    CHECK(symmetrizes(A2().symmetrizer(), A2()));

    ExchangeMatrix b2({{0, 1}, {-2, 0}});
    CHECK(symmetrizes(b2.symmetrizer(), b2));
    // d_1 b_12 = -d_2 b_21 forces d_1 = 2 d_2
    CHECK(b2.symmetrizer()[0] == 2 * b2.symmetrizer()[1]);

    CHECK(symmetrizes(markov().symmetrizer(), markov()));

    CHECK_THROWS_AS(ExchangeMatrix({{0, 1}, {1, 0}}), voac::InvalidError);
    CHECK_THROWS_AS(ExchangeMatrix({{1, 0}, {0, 0}}), voac::InvalidError);
    CHECK_THROWS_AS(ExchangeMatrix({{0, 1}, {-1, 0}, {0, 0}}), voac::InvalidError);
    // pairwise ratios force d1 = d2 = d3 and d1 = 2 d3 at once
    CHECK_THROWS_AS(ExchangeMatrix({{0, 1, 1}, {-1, 0, 1}, {-2, -1, 0}}), voac::InvalidError);

    util::Rng rng(2028);
    for (int trial = 0; trial < 100; ++trial) {
        ExchangeMatrix B = random_symmetrizable(rng, rng.int_in(1, 4));
        CHECK(symmetrizes(B.symmetrizer(), B));
        for (auto v : B.symmetrizer()) CHECK(v > 0);
    }
}

TEST_CASE("matrix mutation") {
    ExchangeMatrix m1 = cluster::mutate_B(A2(), 1);
    CHECK(m1.at(1, 2) == -1);
    CHECK(m1.at(2, 1) == 1);

    // mu_2 on the A3 quiver creates the 1-3 arrow pair
    ExchangeMatrix m2 = cluster::mutate_B(A3(), 2);
    std::vector<std::vector<long long>> want = {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};
    CHECK(m2.rows() == want);

    ExchangeMatrix b2({{0, 1}, {-2, 0}});
    CHECK(cluster::mutate_B(b2, 1).rows() == std::vector<std::vector<long long>>{{0, -1}, {2, 0}});

    CHECK_THROWS_AS(cluster::mutate_B(A2(), 0), voac::InvalidError);
    CHECK_THROWS_AS(cluster::mutate_B(A2(), 3), voac::InvalidError);

    util::Rng rng(515);
    for (int trial = 0; trial < 100; ++trial) {
        ExchangeMatrix B = random_symmetrizable(rng, rng.int_in(1, 4));
        int k = rng.int_in(1, B.n());
        ExchangeMatrix Bp = cluster::mutate_B(B, k);
        CHECK(symmetrizes(B.symmetrizer(), Bp)); // same symmetrizer survives
        CHECK(cluster::mutate_B(Bp, k).rows() == B.rows());
    }
}

TEST_CASE("coefficient mutation") {
    std::vector<TropicalElement> trivial = {TropicalElement::one(0), TropicalElement::one(0)};
    CHECK(cluster::mutate_y(trivial, A2(), 1) == trivial);
    CHECK(cluster::mutate_y(trivial, A2(), 2) == trivial);

    // principal coefficients: y_i has exponent vector e_i
    std::vector<TropicalElement> principal = {TropicalElement{{1, 0}}, TropicalElement{{0, 1}}};
    auto y1 = cluster::mutate_y(principal, A2(), 1);
    CHECK(y1[0] == TropicalElement{{-1, 0}});
    CHECK(y1[1] == TropicalElement{{1, 1}});

    auto y2 = cluster::mutate_y(principal, A2(), 2);
    CHECK(y2[0] == TropicalElement{{1, 0}});
    CHECK(y2[1] == TropicalElement{{0, -1}});

    // continue along the pentagon: mu_2 acts with the mutated matrix
    auto y12 = cluster::mutate_y(y1, cluster::mutate_B(A2(), 1), 2);
    CHECK(y12[0] == TropicalElement{{0, 1}});
    CHECK(y12[1] == TropicalElement{{-1, -1}});

    CHECK_THROWS_AS(cluster::mutate_y(principal, A2(), 0), voac::InvalidError);

    util::Rng rng(909);
    for (int trial = 0; trial < 100; ++trial) {
        ExchangeMatrix B = random_symmetrizable(rng, rng.int_in(1, 4));
        auto y = random_tropical(rng, B.n());
        int k = rng.int_in(1, B.n());
        auto back = cluster::mutate_y(cluster::mutate_y(y, B, k), cluster::mutate_B(B, k), k);
        CHECK(back == y);
    }
}

TEST_CASE("cluster mutation") {
    ClassicalSeed seed = cluster::trivial_seed(A2());
    CHECK(seed.x[0] == X(1));
    CHECK(seed.x[1] == X(2));

    auto c1 = cluster::mutate_x(seed, 1);
    CHECK(c1[0] == (RationalFunction(1) + X(2)) / X(1));
    CHECK(c1[1] == X(2));

    ClassicalSeed s1 = cluster::mutate_seed(seed, 1);
    auto c12 = cluster::mutate_x(s1, 2);
    CHECK(c12[1] == (RationalFunction(1) + X(1) + X(2)) / (X(1) * X(2)));

    // principal coefficients keep the exchange monomials in the numerator
    ClassicalSeed ps = cluster::principal_seed(A2());
    auto p1 = cluster::mutate_x(ps, 1);
    CHECK(p1[0] == (U(1) + X(2)) / X(1));
    ClassicalSeed ps12 = cluster::mutate_seed(cluster::mutate_seed(ps, 1), 2);
    CHECK(ps12.x[1] == (U(1) * U(2) * X(1) + U(1) + X(2)) / (X(1) * X(2)));

    CHECK_THROWS_AS(cluster::mutate_x(seed, 0), voac::InvalidError);
    CHECK_THROWS_AS(cluster::mutate_x(seed, 3), voac::InvalidError);
}

TEST_CASE("pentagon periodicity") {
    ClassicalSeed seed = cluster::trivial_seed(A2());
    ClassicalSeed end = cluster::apply_word(seed, {1, 2, 1, 2, 1});
    CHECK(end.x[0] == X(2));
    CHECK(end.x[1] == X(1));

    // five more steps restore the seed on the nose
    ClassicalSeed full = cluster::apply_word(end, {1, 2, 1, 2, 1});
    CHECK(full == seed);
}

TEST_CASE("seed mutation is an involution") {
    util::Rng rng(77u);
    for (int trial = 0; trial < 100; ++trial) {
        ExchangeMatrix B = random_symmetrizable(rng, rng.int_in(1, 4));
        ClassicalSeed seed = cluster::initial_seed(B, random_tropical(rng, B.n()));
        int k = rng.int_in(1, B.n());
        ClassicalSeed back = cluster::mutate_seed(cluster::mutate_seed(seed, k), k);
        CHECK(back == seed);
    }
}

TEST_CASE("exchange graph enumeration") {
    auto a2 = cluster::enumerate_clusters(cluster::trivial_seed(A2()), 6, 50);
    CHECK(a2.clusters == 5);
    CHECK(a2.variables == 5);
    CHECK(a2.closed);

    ExchangeMatrix single(std::vector<std::vector<long long>>{{0}});
    auto rank1 = cluster::enumerate_clusters(cluster::trivial_seed(single), 4, 10);
    CHECK(rank1.clusters == 2);
    CHECK(rank1.variables == 2);
    CHECK(rank1.closed);

    auto a3 = cluster::enumerate_clusters(cluster::trivial_seed(A3()), 12, 100);
    CHECK(a3.clusters == 14);
    CHECK(a3.variables == 9);
    CHECK(a3.closed);

    auto a2d = cluster::enumerate_clusters(cluster::trivial_seed(A2()), 6, 50,
                                           cluster::SearchOrder::Depth);
    CHECK(a2d.clusters == a2.clusters);
    CHECK(a2d.variables == a2.variables);
    CHECK(a2d.closed);
    auto a3d = cluster::enumerate_clusters(cluster::trivial_seed(A3()), 12, 100,
                                           cluster::SearchOrder::Depth);
    CHECK(a3d.clusters == a3.clusters);
    CHECK(a3d.variables == a3.variables);
    CHECK(a3d.closed);

    // rank-two matrix of Markov type: the closure never stabilizes
    auto mk = cluster::enumerate_clusters(cluster::trivial_seed(markov()), 4, 500);
    CHECK_FALSE(mk.closed);
    CHECK(mk.clusters >= 40);
    CHECK(mk.clusters <= 500);

    // cap cuts the search off without claiming closure
    auto capped = cluster::enumerate_clusters(cluster::trivial_seed(A2()), 6, 3);
    CHECK(capped.clusters == 3);
    CHECK_FALSE(capped.closed);
}

TEST_CASE("laurent certificates") {
    ClassicalSeed seed = cluster::trivial_seed(A2());

    auto empty = cluster::laurent_check(seed, {});
    CHECK(empty.laurent);
    CHECK(empty.denominators ==
          std::vector<std::vector<long long>>{{0, 0}, {0, 0}});

    auto two = cluster::laurent_check(seed, {1, 2});
    CHECK(two.laurent);
    CHECK(two.denominators == std::vector<std::vector<long long>>{{1, 0}, {1, 1}});

    auto penta = cluster::laurent_check(seed, {1, 2, 1, 2, 1});
    CHECK(penta.laurent);
    CHECK(penta.denominators == std::vector<std::vector<long long>>{{0, 0}, {0, 0}});

    // coefficient monomials may sit in the denominator without breaking the
    // Laurent certificate over the cluster variables
    auto pr = cluster::laurent_check(cluster::principal_seed(A2()), {1, 2, 1});
    CHECK(pr.laurent);

    util::Rng rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<long long>> b(3, std::vector<long long>(3, 0));
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                long long v = rng.int_in(-1, 1);
                b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
                b[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -v;
            }
        }
        std::vector<int> word;
        int len = rng.int_in(0, 6);
        for (int i = 0; i < len; ++i) word.push_back(rng.int_in(1, 3));
        auto rep = cluster::laurent_check(cluster::trivial_seed(ExchangeMatrix(b)), word);
        CHECK(rep.laurent);
    }
}
