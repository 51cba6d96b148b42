#include "util/rng.hpp"

#include "exact/errors.hpp"

#include <algorithm>

namespace voac::util {

using exact::Rational;

std::int64_t Rng::int_in(std::int64_t lo, std::int64_t hi) {
    std::uniform_int_distribution<std::int64_t> d(lo, hi);
    return d(gen_);
}

Rational Rng::small_rational() {
    return exact::rat(int_in(-30, 30), int_in(1, 3));
}

Rational Rng::small_rational_nonzero() {
    for (;;) {
        Rational r = small_rational();
        if (r != 0) return r;
    }
}

std::vector<Rational> Rng::distinct_rationals(std::size_t n, const std::vector<Rational>& avoid) {
    std::vector<Rational> out;
    int guard = 0;
    while (out.size() < n) {
        Rational r = small_rational();
        bool fresh = std::find(avoid.begin(), avoid.end(), r) == avoid.end() &&
                     std::find(out.begin(), out.end(), r) == out.end();
        if (fresh)
            out.push_back(r);
        else if (++guard > 10000)
            throw voac::InvalidError("could not sample enough distinct rationals");
    }
    return out;
}

} // namespace voac::util
