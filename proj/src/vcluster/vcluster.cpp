#include "vcluster/vcluster.hpp"

#include "exact/errors.hpp"
#include "exact/json_io.hpp"
#include "util/sha256.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace voac::vcluster {

using exact::DiffForm;
using exact::TruncatedSeries;
using voa::FockState;

namespace {

// numeric centers are substituted after the symbolic step; symbolic centers
// pass through untouched
std::map<VarId, Rational> center_values(const schottky::SchottkyParams& params) {
    std::map<VarId, Rational> out;
    for (int a = 1; a <= params.g; ++a) {
        for (int s : {a, -a}) {
            const RationalFunction& w = params.w(s);
            if (w == RationalFunction::variable(exact::var_w(s))) continue;
            if (!w.is_constant())
                throw InvalidError("sewing centers must be canonical symbols or constants");
            out[exact::var_w(s)] = w.constant_value();
        }
    }
    return out;
}

TruncatedSeries map_coeffs(const TruncatedSeries& s,
                           const std::function<RationalFunction(const RationalFunction&)>& f) {
    TruncatedSeries out(s.genus(), s.order2());
    for (auto& [e, c] : s.terms()) out.add_term(e, f(c));
    return out;
}

void guard_points(const CharacterContext& ctx, const std::vector<Insertion>& ins, VarId x) {
    std::set<VarId> seen;
    for (int a = 1; a <= ctx.params.g; ++a) {
        seen.insert(exact::var_w(a));
        seen.insert(exact::var_w(-a));
    }
    if (!seen.insert(x).second) throw InvalidError("reduction point collides with a sewing center");
    for (auto& one : ins)
        if (!seen.insert(one.coord).second)
            throw InvalidError("insertion coordinate collides with another point");
    if (seen.count(chars::kernel_point()) != 0 && x != chars::kernel_point())
        throw InvalidError("the kernel scratch symbol cannot be an insertion point");
}

std::map<VarId, int> form_degrees(const std::vector<Insertion>& ins) {
    std::map<VarId, int> deg;
    for (auto& one : ins) {
        if (!one.state.is_homogeneous())
            throw InvalidError("insertions must be homogeneous to carry a form weight");
        int w = one.state.weight();
        if (w != 0) deg[one.coord] += w;
    }
    return deg;
}

int reducing_weight(const CharacterContext& ctx, const FockState& u) {
    if (u.is_zero()) throw InvalidError("reducing state must be nonzero");
    if (!ctx.voa->is_quasiprimary(u)) throw InvalidError("reducing state must be quasiprimary");
    return u.weight();
}

// "symbolic" marks a canonical symbol; anything else is an exact rational.
// Cannot collide: rational_str never prints letters.
std::string center_str(const RationalFunction& f, VarId id) {
    if (f == RationalFunction::variable(id)) return "symbolic";
    if (f.is_constant()) return exact::rational_str(f.constant_value());
    throw InvalidError("sewing data must be canonical symbols or constants");
}

RationalFunction center_from(const nlohmann::json& j, VarId id) {
    const std::string s = j.get<std::string>();
    if (s == "symbolic") return RationalFunction::variable(id);
    return RationalFunction(exact::parse_rational(s));
}

std::string character_digest(const NPointResult& r) {
    nlohmann::json j;
    j["series"] = exact::series_json(r.value.body);
    nlohmann::json deg = nlohmann::json::array();
    for (auto& [id, d] : r.value.degrees)
        deg.push_back(nlohmann::json::array({exact::var_name(id), d}));
    j["degrees"] = deg;
    return util::sha256_hex(j.dump());
}

} // namespace

nlohmann::json params_json_mixed(const schottky::SchottkyParams& p) {
    nlohmann::json handles = nlohmann::json::array();
    for (int i = 0; i < p.g; ++i) {
        nlohmann::json h;
        h["w_plus"] = center_str(p.w_plus[static_cast<std::size_t>(i)], exact::var_w(i + 1));
        h["w_minus"] = center_str(p.w_minus[static_cast<std::size_t>(i)], exact::var_w(-(i + 1)));
        if (p.has_rho()) {
            const RationalFunction& r = p.rho[static_cast<std::size_t>(i)];
            if (!r.is_constant()) throw InvalidError("moduli must be numeric when present");
            h["rho"] = exact::rational_str(r.constant_value());
        }
        handles.push_back(std::move(h));
    }
    return nlohmann::json{{"g", p.g}, {"handles", std::move(handles)}};
}

schottky::SchottkyParams params_from_json_mixed(const nlohmann::json& j) {
    schottky::SchottkyParams p;
    p.g = j.at("g").get<int>();
    const auto& handles = j.at("handles");
    if (!handles.is_array() || static_cast<int>(handles.size()) != p.g || p.g < 1)
        throw InvalidError("handles array must have length g >= 1");
    int i = 0;
    for (const auto& h : handles) {
        ++i;
        p.w_plus.push_back(center_from(h.at("w_plus"), exact::var_w(i)));
        p.w_minus.push_back(center_from(h.at("w_minus"), exact::var_w(-i)));
        if (h.contains("rho"))
            p.rho.emplace_back(exact::parse_rational(h.at("rho").get<std::string>()));
    }
    if (!p.rho.empty() && static_cast<int>(p.rho.size()) != p.g)
        throw InvalidError("moduli must be given for every handle or none");
    return p;
}

void MutationSpec::validate() const {
    if (xi * xi != Rational(1)) throw InvalidError("mutation scaling must square to one");
    if (mode < -1) throw InvalidError("mutation modes reach down to -1 only");
    if (direction < 0) throw InvalidError("direction is zero or a one-based slot index");
}

MapRegistry::MapRegistry() {
    maps_["mode"] = [](const voa::HeisenbergVOA& voa, const FockState& u, int m,
                       const FockState& v, const Rational&) { return voa.mode_action(u, m, v); };
    maps_["vacuum_scale"] = [](const voa::HeisenbergVOA& voa, const FockState& u, int m,
                               const FockState& v, const Rational& xi) {
        return voa.mode_action(u, m, v).scaled(xi);
    };
    maps_["translation"] = [](const voa::HeisenbergVOA& voa, const FockState&, int,
                              const FockState& v, const Rational&) { return voa.translate(v); };
}

void MapRegistry::add(const std::string& name, StateMap map) { maps_[name] = std::move(map); }

bool MapRegistry::has(const std::string& name) const { return maps_.count(name) != 0; }

const StateMap& MapRegistry::at(const std::string& name) const {
    auto it = maps_.find(name);
    if (it == maps_.end()) throw InvalidError("unregistered mutation map: " + name);
    return it->second;
}

const MapRegistry& MapRegistry::builtins() {
    static MapRegistry reg;
    return reg;
}

VSeed make_seed(const CharacterContext& ctx, std::vector<Insertion> ins) {
    NPointResult ch = chars::genus_g_npoint(ctx, ins);
    return {ctx, std::move(ins), std::move(ch)};
}

bool seed_consistent(const VSeed& seed) {
    return chars::genus_g_npoint(seed.ctx, seed.insertions).value.equals(seed.character.value);
}

MutationSpec schottky_instantiation(const voa::HeisenbergVOA& voa, const voa::FockState& u,
                                    int direction, std::vector<RationalFunction> f) {
    if (u.is_zero() || !voa.is_quasiprimary(u) || u.weight() < 1)
        throw InvalidError("window binding needs a nonzero quasiprimary state of weight >= 1");
    MutationSpec spec;
    spec.direction = direction;
    spec.u = u;
    spec.mode = 0;
    spec.tilde = TildeBinding::ThetaO;
    spec.f_laurent = std::move(f);
    return spec;
}

MutationSpec vacuum_spec(const voa::HeisenbergVOA& voa, const Rational& xi) {
    MutationSpec spec;
    spec.direction = 0;
    spec.u = voa.vacuum();
    spec.mode = -1;
    spec.F = "vacuum_scale";
    spec.G = "vacuum_scale";
    spec.H = "mode";
    spec.xi = xi;
    spec.tilde = TildeBinding::ReductionRemainder;
    return spec;
}

namespace {

std::vector<FockState> apply_layer(const VSeed& seed, const MutationSpec& spec,
                                   const StateMap& map) {
    spec.validate();
    if (spec.direction > static_cast<int>(seed.insertions.size()))
        throw InvalidError("mutation direction is out of range");
    std::vector<FockState> out;
    out.reserve(seed.insertions.size());
    for (std::size_t k = 0; k < seed.insertions.size(); ++k) {
        const FockState& v = seed.insertions[k].state;
        bool hit = spec.direction == 0 || spec.direction == static_cast<int>(k) + 1;
        out.push_back(hit ? map(*seed.ctx.voa, spec.u, spec.mode, v, spec.xi) : v);
    }
    return out;
}

} // namespace

std::vector<FockState> mutate_states(const VSeed& seed, const MutationSpec& spec,
                                     const MapRegistry& reg) {
    return apply_layer(seed, spec, reg.at(spec.F));
}

std::vector<Insertion> mutate_operators(const VSeed& seed, const MutationSpec& spec,
                                        const MapRegistry& reg) {
    auto states = apply_layer(seed, spec, reg.at(spec.G));
    std::vector<Insertion> out;
    out.reserve(states.size());
    for (std::size_t k = 0; k < states.size(); ++k)
        out.push_back({std::move(states[k]), seed.insertions[k].coord});
    return out;
}

NPointResult mutate_character(const VSeed& seed, const MutationSpec& spec, VarId x,
                              const MapRegistry& reg) {
    spec.validate();
    const CharacterContext& ctx = seed.ctx;
    ctx.validate();
    const std::vector<Insertion>& ins = seed.insertions;
    const StateMap& H = reg.at(spec.H);

    if (spec.tilde == TildeBinding::ReductionRemainder) {
        // remainder := stored character minus the kernel sum; defined only
        // where the kernel sum provably vanishes, which makes the transform
        // the identity regardless of any scaling on the other layers
        if (!(spec.u == ctx.voa->vacuum()))
            throw InvalidError("remainder binding needs the vacuum as reducing state");
        for (auto& one : ins) {
            if (!one.state.is_homogeneous()) throw InvalidError("insertions must be homogeneous");
            for (int j = 0; j <= one.state.weight() - 1; ++j)
                if (!H(*ctx.voa, spec.u, j, one.state, spec.xi).is_zero())
                    throw InvalidError("kernel sum does not vanish under the remainder binding");
        }
        return {seed.character.value, ins};
    }

    // window binding: mirror of the weight-p reduction with the kernel-sum
    // states rerouted through H
    guard_points(ctx, ins, x);
    const int p = reducing_weight(ctx, spec.u);
    const int g = ctx.params.g;
    const int order2 = ctx.order2();
    zhu::KernelConfig cfg;
    cfg.g = g;
    cfg.p = p;
    cfg.T2 = order2;
    cfg.f = spec.f_laurent;
    cfg.validate();
    const auto values = center_values(ctx.params);
    auto eval = [&](const RationalFunction& c) { return values.empty() ? c : c.eval_at(values); };

    TruncatedSeries acc(g, order2);

    auto cths = zhu::chi_theta(cfg, x);
    auto o = chars::o_vector(ctx, spec.u, ins);
    const int inner2 = order2 + 2 * (p - 1);
    for (int a = 1; a <= g; ++a) {
        for (int l = 0; l <= 2 * p - 2; ++l) {
            auto th = cths.theta.find({a, l});
            auto ov = o.find({a, l});
            if (th == cths.theta.end() || ov == o.end()) continue;
            if (th->second.is_zero() || ov->second.is_zero()) continue;
            TruncatedSeries prod = map_coeffs(th->second, eval).truncated(inner2);
            prod *= ov->second;
            acc += prod.truncated(order2);
        }
    }

    if (!ins.empty()) {
        TruncatedSeries psi = zhu::psi_full(cfg, x, chars::kernel_point()).body;
        for (std::size_t k = 0; k < ins.size(); ++k) {
            if (!ins[k].state.is_homogeneous())
                throw InvalidError("insertions must be homogeneous");
            int wk = ins[k].state.weight();
            for (int j = 0; j <= p + wk - 1; ++j) {
                FockState moved = H(*ctx.voa, spec.u, j, ins[k].state, spec.xi);
                if (moved.is_zero()) continue;
                // the replaced slot must carry weight p + wk - j - 1 or the
                // form degrees of the sum fall apart
                if (!moved.is_homogeneous() || moved.weight() != p + wk - j - 1)
                    throw InvalidError("character map is inconsistent with the form degrees");
                TruncatedSeries dpsi = map_coeffs(psi, [&](const RationalFunction& c) {
                    RationalFunction d =
                        c.divided_derivative(chars::kernel_point(), static_cast<unsigned>(j))
                            .rename({{chars::kernel_point(), ins[k].coord}});
                    return eval(d);
                });
                if (dpsi.is_zero()) continue;
                std::vector<Insertion> mod = ins;
                mod[k].state = std::move(moved);
                dpsi *= chars::genus_g_npoint(ctx, mod).value.body;
                acc += dpsi;
            }
        }
    }

    auto deg = form_degrees(ins);
    deg[x] += p;
    return {DiffForm::make(std::move(acc), std::move(deg)), ins};
}

MutationOutcome mutate(const VSeed& seed, const MutationSpec& spec, VarId x,
                       const MapRegistry& reg) {
    VSeed next = make_seed(seed.ctx, mutate_operators(seed, spec, reg));
    NPointResult moved = mutate_character(seed, spec, x, reg);
    bool ok = next.character.value.equals(moved.value);
    return {std::move(next), std::move(moved), ok};
}

bool vacuum_involution_check(const VSeed& seed, const Rational& xi, VarId x,
                             const MapRegistry& reg) {
    MutationSpec spec = vacuum_spec(*seed.ctx.voa, xi);

    // state layer squares back by itself
    std::vector<Insertion> flipped = seed.insertions;
    auto s1 = mutate_states(seed, spec, reg);
    for (std::size_t i = 0; i < flipped.size(); ++i) flipped[i].state = s1[i];
    VSeed smiddle{seed.ctx, std::move(flipped), seed.character};
    auto s2 = mutate_states(smiddle, spec, reg);
    for (std::size_t i = 0; i < s2.size(); ++i)
        if (!(s2[i] == seed.insertions[i].state)) return false;

    // operator and character layers travel together through the seed
    VSeed middle{seed.ctx, mutate_operators(seed, spec, reg),
                 mutate_character(seed, spec, x, reg)};
    auto twice_ops = mutate_operators(middle, spec, reg);
    auto twice_char = mutate_character(middle, spec, x, reg);
    for (std::size_t i = 0; i < twice_ops.size(); ++i) {
        if (!(twice_ops[i].state == seed.insertions[i].state)) return false;
        if (twice_ops[i].coord != seed.insertions[i].coord) return false;
    }
    return twice_char.value.equals(seed.character.value);
}

AlgebraRegistry::AlgebraRegistry(CharacterContext ctx, int max_n) : ctx_(std::move(ctx)) {
    if (max_n < 0) throw InvalidError("the seed space tower needs max_n >= 0");
    ctx_.validate();
    for (int n = 0; n <= max_n; ++n) {
        SeedSpace sp;
        sp.n = n;
        CharacterContext c = ctx_;
        sp.make = [c, n](std::vector<Insertion> ins) {
            if (static_cast<int>(ins.size()) != n)
                throw InvalidError("seed space expects exactly its slot count");
            return make_seed(c, std::move(ins));
        };
        spaces_.push_back(std::move(sp));
    }
}

const SeedSpace& AlgebraRegistry::space(int n) const {
    if (n < 0 || n >= static_cast<int>(spaces_.size()))
        throw InvalidError("no seed space with that slot count");
    return spaces_[static_cast<std::size_t>(n)];
}

NPointResult AlgebraRegistry::lift(const VSeed& seed, const voa::FockState& u, VarId x) const {
    std::vector<Insertion> lifted;
    lifted.reserve(seed.insertions.size() + 1);
    lifted.push_back({u, x});
    lifted.insert(lifted.end(), seed.insertions.begin(), seed.insertions.end());
    return chars::genus_g_npoint(seed.ctx, lifted);
}

nlohmann::json seed_json(const VSeed& seed) {
    nlohmann::json j;
    j["params"] = params_json_mixed(seed.ctx.params);
    j["L"] = seed.ctx.L;
    j["T"] = seed.ctx.T;
    nlohmann::json ins = nlohmann::json::array();
    for (auto& one : seed.insertions) {
        ins.push_back({{"state", voa::state_json(one.state)},
                       {"coordinate", exact::var_name(one.coord)}});
    }
    j["insertions"] = std::move(ins);
    j["character_sha256"] = character_digest(seed.character);
    return j;
}

VSeed seed_from_json(const voa::HeisenbergVOA& voa, const nlohmann::json& j) {
    CharacterContext ctx;
    ctx.voa = &voa;
    ctx.params = params_from_json_mixed(j.at("params"));
    ctx.L = j.at("L").get<int>();
    ctx.T = j.at("T").get<int>();
    std::vector<Insertion> ins;
    for (auto& one : j.at("insertions"))
        ins.push_back({voa::state_from_json(one.at("state")),
                       exact::var(one.at("coordinate").get<std::string>())});
    VSeed seed = make_seed(ctx, std::move(ins));
    if (j.contains("character_sha256") &&
        j.at("character_sha256").get<std::string>() != character_digest(seed.character))
        throw VerifyError("stored character digest does not match the recomputed seed");
    return seed;
}

} // namespace voac::vcluster
