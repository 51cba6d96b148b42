#pragma once

#include "chars/chars.hpp"
#include "cluster/cluster.hpp"
#include "vcluster/vcluster.hpp"

#include <string>
#include <vector>

namespace voac::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail; // empty when passing, first bad case otherwise
};

struct Suite {
    std::vector<CheckResult> checks;
    void add(std::string name, bool pass, std::string detail = "");
    void merge(const Suite& o);
    bool all_pass() const;
    std::size_t failures() const;
};

// grading, lower truncation, creativity, translation, skew symmetry,
// commutator formula, Virasoro bracket at central charge one, form
// invariance against the adjoint, dual-basis adjoint relation. Exhaustive
// over basis states up to weight_cap (one less where three states meet).
Suite axiom_suite(const voa::HeisenbergVOA& voa, int weight_cap = 4);

// random exact instances: the two sewing forms agree, fixed points round
// trip, the sewing relation holds pointwise, the parameter-space action is
// equivariant and composes, and reduced word counts match 2g(2g-1)^(k-1)
Suite schottky_suite(unsigned trials, unsigned rng_seed);

// retained kernel coefficients are stable under raising the mode cutoff by
// one full order, and the resolvent telescopes exactly at the retained order
Suite kernel_suite(int g, int p, int T);

// brute-force reduction identity across reducing states {a, omega} and all
// insertion tuples from {a, omega} with up to two slots; each case runs on
// `rounds` random rational center draws (scales stay formal)
Suite reduction_suite(const voa::HeisenbergVOA& voa, int g, int T, unsigned rounds,
                      unsigned rng_seed);

// mutation involutivity on random symmetrizable seeds, the five-cluster
// enumeration, and Laurent certificates on every short rank-two word
Suite cluster_suite(unsigned trials, unsigned rng_seed);

// vacuum mutation squares to the identity on all layers for zero, one and
// two insertions and both signs; the character transform is byte-identical
Suite involution_suite(const voa::HeisenbergVOA& voa, int T);

// the aggregate behind `verify-all`; sizes are chosen for interactive runs
Suite verify_all(const voa::HeisenbergVOA& voa, int g, int T, unsigned rng_seed);

} // namespace voac::verify
