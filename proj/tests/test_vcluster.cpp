#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exact/errors.hpp"
#include "vcluster/vcluster.hpp"

#include <vector>

using namespace voac;
using chars::CharacterContext;
using chars::Insertion;
using exact::Rational;
using exact::RationalFunction;
using exact::TruncatedSeries;
using exact::VarId;
using voa::FockState;
using vcluster::MutationSpec;
using vcluster::VSeed;

namespace {

const voa::HeisenbergVOA& V() {
    static voa::HeisenbergVOA voa(16);
    return voa;
}

CharacterContext ctx_g1(int T, int L = -1) {
    return {&V(), schottky::symbolic_params(1), L < 0 ? T : L, T};
}

const VarId X = exact::var_x();
const VarId Y1 = exact::var_y(1);
const VarId Y2 = exact::var_y(2);

FockState a_state() { return FockState::basis({1}); }
FockState omega() { return V().omega(); }

VSeed seed_a(int T) { return vcluster::make_seed(ctx_g1(T), {{a_state(), Y1}}); }

TruncatedSeries term_derivative(const TruncatedSeries& s, VarId id) {
    TruncatedSeries out(s.genus(), s.order2());
    for (auto& [e, c] : s.terms()) out.add_term(e, c.derivative(id));
    return out;
}

} // namespace

TEST_CASE("mutation spec validation") {
    MutationSpec bad = vcluster::vacuum_spec(V());
    bad.xi = Rational(2);
    CHECK_THROWS_AS(bad.validate(), voac::InvalidError);

    MutationSpec unknown = vcluster::schottky_instantiation(V(), a_state());
    unknown.F = "no-such-map";
    VSeed seed = seed_a(1);
    CHECK_THROWS_AS(vcluster::mutate_states(seed, unknown), voac::InvalidError);

    MutationSpec out_of_range = vcluster::schottky_instantiation(V(), a_state(), 5);
    CHECK_THROWS_AS(vcluster::mutate_states(seed, out_of_range), voac::InvalidError);

    // the window instantiation rejects states the reduction cannot handle
    CHECK_THROWS_AS(vcluster::schottky_instantiation(V(), FockState::basis({2})),
                    voac::InvalidError);
}

TEST_CASE("state mutation") {
    VSeed seed = vcluster::make_seed(ctx_g1(1), {{a_state(), Y1}, {omega(), Y2}});

    // a(1) annihilates one creation quantum: a(1)a(-1)|0> = |0>, a(1)w = a(-1)|0>
    MutationSpec spec = vcluster::schottky_instantiation(V(), a_state(), 1);
    spec.mode = 1;
    auto s1 = vcluster::mutate_states(seed, spec);
    CHECK(s1[0] == FockState::vacuum());
    CHECK(s1[1] == omega());

    spec.direction = 2;
    auto s2 = vcluster::mutate_states(seed, spec);
    CHECK(s2[0] == a_state());
    CHECK(s2[1] == a_state());

    spec.direction = 0; // every direction at once
    auto sall = vcluster::mutate_states(seed, spec);
    CHECK(sall[0] == FockState::vacuum());
    CHECK(sall[1] == a_state());

    MutationSpec flip = vcluster::vacuum_spec(V(), Rational(-1));
    auto flipped = vcluster::mutate_states(seed, flip);
    CHECK(flipped[0] == -a_state());
    CHECK(flipped[1] == -omega());
    VSeed fseed{seed.ctx, {{flipped[0], Y1}, {flipped[1], Y2}}, seed.character};
    auto back = vcluster::mutate_states(fseed, flip);
    CHECK(back[0] == a_state());
    CHECK(back[1] == omega());
}

TEST_CASE("operator mutation") {
    VSeed seed = vcluster::make_seed(ctx_g1(1), {{a_state(), Y1}, {omega(), Y2}});

    // matching state and operator maps keep the two layers synchronized
    MutationSpec spec = vcluster::schottky_instantiation(V(), a_state(), 2);
    spec.mode = 1;
    auto states = vcluster::mutate_states(seed, spec);
    auto ops = vcluster::mutate_operators(seed, spec);
    REQUIRE(ops.size() == 2);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        CHECK(ops[i].state == states[i]);
        CHECK(ops[i].coord == seed.insertions[i].coord);
    }

    MutationSpec flip = vcluster::vacuum_spec(V(), Rational(-1));
    auto fops = vcluster::mutate_operators(seed, flip);
    CHECK(fops[0].state == -a_state());
    CHECK(fops[1].state == -omega());
}

TEST_CASE("translation mutation differentiates the character") {
    VSeed seed = vcluster::make_seed(ctx_g1(1), {{omega(), Y1}});
    MutationSpec spec = vcluster::vacuum_spec(V());
    spec.G = "translation";
    spec.direction = 1;
    auto ops = vcluster::mutate_operators(seed, spec);
    CHECK(ops[0].state == V().translate(omega()));

    auto moved = chars::genus_g_npoint(seed.ctx, ops);
    CHECK(moved.value.body == term_derivative(seed.character.value.body, Y1));
}

TEST_CASE("character mutation matches the reduction") {
    // the bound mutation is the reduction identity read as a rewriting rule
    VSeed seed = seed_a(2);
    MutationSpec spec = vcluster::schottky_instantiation(V(), a_state());
    auto got = vcluster::mutate_character(seed, spec, X);
    auto want = chars::zhu_reduce(seed.ctx, a_state(), X, seed.insertions);
    CHECK_FALSE(got.value.body.is_zero());
    CHECK(got.value.equals(want.value));

    VSeed seed_w = vcluster::make_seed(ctx_g1(1), {{omega(), Y1}});
    MutationSpec wspec = vcluster::schottky_instantiation(V(), omega());
    auto wgot = vcluster::mutate_character(seed_w, wspec, X);
    auto wwant = chars::zhu_reduce(seed_w.ctx, omega(), X, seed_w.insertions);
    CHECK_FALSE(wgot.value.body.is_zero());
    CHECK(wgot.value.equals(wwant.value));

    // kernel freedom passes straight through
    VSeed seed1 = seed_a(1);
    std::vector<RationalFunction> f = {RationalFunction::variable(exact::var_x()) +
                                       RationalFunction(1)};
    MutationSpec fspec = vcluster::schottky_instantiation(V(), a_state(), 0, f);
    auto fgot = vcluster::mutate_character(seed1, fspec, X);
    auto fwant = chars::zhu_reduce(seed1.ctx, a_state(), X, seed1.insertions, f);
    CHECK_FALSE(fgot.value.body.is_zero());
    CHECK(fgot.value.equals(fwant.value));

    // n = 0 leaves only the window remainder
    VSeed empty = vcluster::make_seed(ctx_g1(1), {});
    auto egot = vcluster::mutate_character(empty, wspec, X);
    auto ewant = chars::zhu_reduce(empty.ctx, omega(), X, {});
    CHECK_FALSE(egot.value.body.is_zero());
    CHECK(egot.value.equals(ewant.value));

    // odd-charge reducing state has a vanishing window
    auto agot = vcluster::mutate_character(empty, spec, X);
    CHECK(agot.value.body.is_zero());
}

TEST_CASE("vacuum character transform is the identity") {
    VSeed seed = seed_a(1);
    MutationSpec spec = vcluster::vacuum_spec(V());
    auto got = vcluster::mutate_character(seed, spec, X);
    CHECK(got.value.equals(seed.character.value));

    VSeed empty = vcluster::make_seed(ctx_g1(1), {});
    auto egot = vcluster::mutate_character(empty, spec, X);
    CHECK(egot.value.equals(empty.character.value));

    // the collapse binding is tied to the vacuum state
    MutationSpec wrong = spec;
    wrong.u = a_state();
    CHECK_THROWS_AS(vcluster::mutate_character(seed, wrong, X), voac::InvalidError);
}

TEST_CASE("mutation outcome consistency") {
    VSeed seed = vcluster::make_seed(ctx_g1(1), {{omega(), Y1}});
    REQUIRE_FALSE(seed.character.value.body.is_zero());

    auto keep = vcluster::mutate(seed, vcluster::vacuum_spec(V()), X);
    CHECK(keep.consistent);
    CHECK(keep.seed.insertions[0].state == omega());
    CHECK(keep.seed.character.value.equals(seed.character.value));
    CHECK(keep.transformed.value.equals(seed.character.value));

    // xi = -1 flips the recomputed character but not the transformed one
    auto flip = vcluster::mutate(seed, vcluster::vacuum_spec(V(), Rational(-1)), X);
    CHECK_FALSE(flip.consistent);
    CHECK(flip.seed.insertions[0].state == -omega());
    CHECK(flip.transformed.value.equals(seed.character.value));
    CHECK(flip.seed.character.value.body == seed.character.value.body.scaled(RationalFunction(-1)));
}

TEST_CASE("vacuum involution") {
    CHECK(vcluster::vacuum_involution_check(seed_a(1)));
    CHECK(vcluster::vacuum_involution_check(seed_a(1), Rational(-1)));

    // nonzero character with an odd slot count is the sharp case
    VSeed ws = vcluster::make_seed(ctx_g1(1), {{omega(), Y1}});
    REQUIRE_FALSE(ws.character.value.body.is_zero());
    CHECK(vcluster::vacuum_involution_check(ws));
    CHECK(vcluster::vacuum_involution_check(ws, Rational(-1)));

    VSeed two = vcluster::make_seed(ctx_g1(1), {{a_state(), Y1}, {omega(), Y2}});
    CHECK(vcluster::vacuum_involution_check(two));
    CHECK(vcluster::vacuum_involution_check(two, Rational(-1)));

    VSeed empty = vcluster::make_seed(ctx_g1(1), {});
    CHECK(vcluster::vacuum_involution_check(empty));
}

TEST_CASE("algebra registry") {
    vcluster::AlgebraRegistry reg(ctx_g1(1), 2);
    CHECK(reg.size() == 3);
    CHECK(reg.max_n() == 2);

    VSeed s0 = reg.space(0).make({});
    CHECK(s0.character.value.body == chars::genus_g_partition(ctx_g1(1)));

    VSeed s1 = reg.space(1).make({{a_state(), Y1}});
    CHECK(vcluster::seed_consistent(s1));
    CHECK_THROWS_AS(reg.space(1).make({}), voac::InvalidError);
    CHECK_THROWS_AS(reg.space(3), voac::InvalidError);

    // the vacuum lift keeps the character; a state lift is the next character
    auto kept = reg.lift(s1, FockState::vacuum(), X);
    CHECK(kept.value.equals(s1.character.value));
    auto next = reg.lift(s1, a_state(), X);
    auto direct = chars::genus_g_npoint(ctx_g1(1), {{a_state(), X}, {a_state(), Y1}});
    CHECK(next.value.equals(direct.value));

    vcluster::AlgebraRegistry small(ctx_g1(1), 0);
    CHECK(small.size() == 1);

    MutationSpec spec = vcluster::vacuum_spec(V());
    reg.add_spec(spec);
    CHECK(reg.specs().size() == 1);
}

TEST_CASE("seed serialization") {
    VSeed seed = vcluster::make_seed(ctx_g1(1), {{a_state(), Y1}, {omega(), Y2}});
    auto j = vcluster::seed_json(seed);
    CHECK(j.contains("character_sha256"));

    VSeed back = vcluster::seed_from_json(V(), j);
    CHECK(back.insertions.size() == 2);
    CHECK(back.insertions[0].state == a_state());
    CHECK(back.insertions[1].state == omega());
    CHECK(back.insertions[0].coord == Y1);
    CHECK(back.ctx.T == seed.ctx.T);
    CHECK(back.ctx.L == seed.ctx.L);
    CHECK(back.character.value.equals(seed.character.value));

    auto tampered = j;
    tampered["character_sha256"] = std::string(64, '0');
    CHECK_THROWS_AS(vcluster::seed_from_json(V(), tampered), voac::VerifyError);

    auto reordered = j;
    reordered["insertions"][0]["state"] = voa::state_json(omega());
    CHECK_THROWS_AS(vcluster::seed_from_json(V(), reordered), voac::VerifyError);
}
