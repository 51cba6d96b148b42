#pragma once

#include "exact/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace voac::util {

// Deterministic source of small exact rationals for evaluated-mode checks
// and randomized property tests. Small numerators/denominators keep the
// downstream GMP arithmetic cheap.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::int64_t int_in(std::int64_t lo, std::int64_t hi); // inclusive
    exact::Rational small_rational();                      // num in [-30,30], den in {1,2,3}
    exact::Rational small_rational_nonzero();

    // pairwise distinct rationals, also distinct from `avoid`
    std::vector<exact::Rational> distinct_rationals(std::size_t n,
                                                    const std::vector<exact::Rational>& avoid = {});

    std::mt19937_64& raw() { return gen_; }

private:
    std::mt19937_64 gen_;
};

} // namespace voac::util
