#pragma once

#include "chars/chars.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace voac::vcluster {

using chars::CharacterContext;
using chars::Insertion;
using chars::NPointResult;
using exact::Rational;
using exact::RationalFunction;
using exact::VarId;

// seed: inserted states with their marked points plus the character they
// generate; the three layers are mutated separately and compared afterwards
struct VSeed {
    CharacterContext ctx;
    std::vector<Insertion> insertions;
    NPointResult character;
};

VSeed make_seed(const CharacterContext& ctx, std::vector<Insertion> ins);
// recomputes the character from the insertions and compares exactly
bool seed_consistent(const VSeed& seed);

// state-valued mutation map (u, m, v) -> new state; the scaling is passed
// through so involutive signs stay with the map
using StateMap = std::function<voa::FockState(const voa::HeisenbergVOA&, const voa::FockState&,
                                              int, const voa::FockState&, const Rational&)>;

// Maps are looked up by name so specs stay serializable. Ships "mode"
// (u(m)v), "vacuum_scale" (xi u(m)v) and "translation" (L(-1)v).
class MapRegistry {
public:
    MapRegistry();
    void add(const std::string& name, StateMap map);
    bool has(const std::string& name) const;
    const StateMap& at(const std::string& name) const;
    static const MapRegistry& builtins();

private:
    std::map<std::string, StateMap> maps_;
};

// Binding of the inhomogeneous character term. ThetaO instantiates it as
// the Theta . o window of the weight-p reduction, so the transformed
// character is the reduction right side read as a rewriting rule.
// ReductionRemainder defines it as the stored character minus the kernel
// sum; that is only available where the kernel sum provably vanishes and
// collapses the transform to the identity.
enum class TildeBinding { ThetaO, ReductionRemainder };

struct MutationSpec {
    int direction = 0; // 0 mutates every slot, otherwise one-based
    voa::FockState u;
    int mode = -1;
    std::string F = "mode"; // state layer
    std::string G = "mode"; // operator layer
    std::string H = "mode"; // character layer; receives the kernel sum index
    Rational xi = Rational(1);
    TildeBinding tilde = TildeBinding::ThetaO;
    std::vector<RationalFunction> f_laurent; // free part of the kernel

    void validate() const; // xi^2 = 1, mode >= -1, direction >= 0
};

// reduction-backed spec; u must be nonzero quasiprimary of weight >= 1
MutationSpec schottky_instantiation(const voa::HeisenbergVOA& voa, const voa::FockState& u,
                                    int direction = 0, std::vector<RationalFunction> f = {});
// xi 1(-1) in every slot; squares to the identity on all three layers
MutationSpec vacuum_spec(const voa::HeisenbergVOA& voa, const Rational& xi = Rational(1));

std::vector<voa::FockState> mutate_states(const VSeed& seed, const MutationSpec& spec,
                                          const MapRegistry& reg = MapRegistry::builtins());
std::vector<Insertion> mutate_operators(const VSeed& seed, const MutationSpec& spec,
                                        const MapRegistry& reg = MapRegistry::builtins());

// character layer: kernel terms against H(u, j)v_k plus the bound remainder
NPointResult mutate_character(const VSeed& seed, const MutationSpec& spec, VarId x,
                              const MapRegistry& reg = MapRegistry::builtins());

struct MutationOutcome {
    VSeed seed;               // mutated insertions with a recomputed character
    NPointResult transformed; // character moved by the rewriting rule
    bool consistent = false;  // the two agree exactly, degrees included
};

MutationOutcome mutate(const VSeed& seed, const MutationSpec& spec, VarId x,
                       const MapRegistry& reg = MapRegistry::builtins());

// applies the vacuum spec twice; true iff states, operators and character
// all return exactly
bool vacuum_involution_check(const VSeed& seed, const Rational& xi = Rational(1),
                             VarId x = exact::var_x(),
                             const MapRegistry& reg = MapRegistry::builtins());

struct SeedSpace {
    int n = 0;
    std::function<VSeed(std::vector<Insertion>)> make; // checks the slot count
};

// the tower of n-slot seed spaces over one context
class AlgebraRegistry {
public:
    AlgebraRegistry(CharacterContext ctx, int max_n);
    std::size_t size() const { return spaces_.size(); }
    int max_n() const { return static_cast<int>(spaces_.size()) - 1; }
    const SeedSpace& space(int n) const;
    void add_spec(MutationSpec spec) { specs_.push_back(std::move(spec)); }
    const std::vector<MutationSpec>& specs() const { return specs_; }
    // one more slot in front: the vacuum lift keeps the character
    NPointResult lift(const VSeed& seed, const voa::FockState& u, VarId x) const;

private:
    CharacterContext ctx_;
    std::vector<SeedSpace> spaces_;
    std::vector<MutationSpec> specs_;
};

// Parameter sets with any mix of symbolic and numeric sewing data; numeric
// values are exact rational strings, canonical symbols are written as
// "symbolic". Moduli are included only when numeric.
nlohmann::json params_json_mixed(const schottky::SchottkyParams& p);
schottky::SchottkyParams params_from_json_mixed(const nlohmann::json& j);

// states, marked point names, parameters and a digest of the character;
// reading recomputes the character and verifies the digest
nlohmann::json seed_json(const VSeed& seed);
VSeed seed_from_json(const voa::HeisenbergVOA& voa, const nlohmann::json& j);

} // namespace voac::vcluster
