#include "voacluster.h"

#include "exact/errors.hpp"
#include "exact/json_io.hpp"
#include "util/sha256.hpp"
#include "verify/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using nlohmann::json;
using namespace voac;

namespace {

thread_local std::string g_error;

char* copy_out(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void require(bool ok, const char* msg) {
    if (!ok) throw InvalidError(msg);
}

// every entry point funnels through here; exception type decides the status
template <typename Fn>
vc_status guarded(Fn&& fn) {
    try {
        fn();
        return VC_OK;
    } catch (const VerifyError& e) {
        g_error = e.what();
        return VC_VERIFY_FAILED;
    } catch (const InvalidError& e) {
        g_error = e.what();
        return VC_INVALID;
    } catch (const PoleError& e) {
        g_error = e.what();
        return VC_POLE;
    } catch (const CutoffError& e) {
        g_error = e.what();
        return VC_CUTOFF;
    } catch (const json::exception& e) {
        g_error = e.what();
        return VC_INVALID;
    } catch (const std::exception& e) {
        g_error = e.what();
        return VC_INTERNAL;
    } catch (...) {
        g_error = "unknown failure";
        return VC_INTERNAL;
    }
}

json parse_text(const char* text, const char* what) {
    require(text != nullptr, what);
    return json::parse(text);
}

std::vector<chars::Insertion> parse_insertions(const json& j) {
    require(j.is_array(), "insertions must be an array");
    std::vector<chars::Insertion> out;
    for (const auto& one : j) {
        out.push_back({voa::parse_state(one.at("state").get<std::string>()),
                       exact::var(one.at("coordinate").get<std::string>())});
    }
    return out;
}

// entry l: rational string for a constant, or ascending power coefficients
std::vector<exact::RationalFunction> parse_f(const json& j) {
    std::vector<exact::RationalFunction> out;
    if (j.is_null()) return out;
    require(j.is_array(), "f must be an array");
    const auto X = exact::RationalFunction::variable(exact::var_x());
    for (const auto& one : j) {
        if (one.is_string()) {
            out.emplace_back(exact::parse_rational(one.get<std::string>()));
            continue;
        }
        require(one.is_array(), "f entries are strings or coefficient arrays");
        exact::RationalFunction acc, xp(1);
        for (const auto& c : one) {
            acc += xp.scaled(exact::parse_rational(c.get<std::string>()));
            xp *= X;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

json form_json(const exact::DiffForm& form) {
    json degs = json::array();
    for (const auto& [v, d] : form.degrees) degs.push_back({exact::var_name(v), d});
    return json{{"series", exact::series_json(form.body)}, {"degrees", std::move(degs)}};
}

json suite_json(const verify::Suite& s) {
    json checks = json::array();
    for (const auto& c : s.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return json{
        {"pass", s.all_pass()}, {"failures", s.failures()}, {"checks", std::move(checks)}};
}

int default_cutoff(int order) { return std::max(16, 2 * order + 4); }

vcluster::MutationSpec spec_from_json(const voa::HeisenbergVOA& voa, const json& j) {
    const std::string preset = j.value("preset", "");
    const exact::Rational xi = exact::parse_rational(j.value("xi", "1"));
    if (preset == "vacuum") return vcluster::vacuum_spec(voa, xi);
    if (preset == "reduction")
        return vcluster::schottky_instantiation(voa,
                                                voa::parse_state(j.at("u").get<std::string>()),
                                                j.value("direction", 0),
                                                parse_f(j.value("f", json())));
    require(preset.empty(), "unknown mutation preset");
    vcluster::MutationSpec spec;
    spec.u = voa::parse_state(j.at("u").get<std::string>());
    spec.direction = j.value("direction", 0);
    spec.mode = j.value("mode", -1);
    spec.F = j.value("F", "mode");
    spec.G = j.value("G", "mode");
    spec.H = j.value("H", "mode");
    spec.xi = xi;
    const std::string tilde = j.value("tilde", "window");
    if (tilde == "window")
        spec.tilde = vcluster::TildeBinding::ThetaO;
    else if (tilde == "remainder")
        spec.tilde = vcluster::TildeBinding::ReductionRemainder;
    else
        throw InvalidError("tilde binding is window or remainder");
    spec.f_laurent = parse_f(j.value("f", json()));
    spec.validate();
    return spec;
}

} // namespace

// handles keep the state space alive through a shared_ptr; the raw pointer
// inside CharacterContext always targets that same object
struct vc_context {
    std::shared_ptr<voa::HeisenbergVOA> voa;
    chars::CharacterContext ctx;
};

struct vc_cluster_seed {
    cluster::ClassicalSeed seed;
};

struct vc_vseed {
    std::shared_ptr<voa::HeisenbergVOA> voa;
    vcluster::VSeed seed;
};

extern "C" {

const char* vc_version(void) { return VC_VERSION_STRING; }

const char* vc_last_error(void) { return g_error.c_str(); }

void vc_string_free(char* s) { std::free(s); }

vc_status vc_sha256(const char* data, size_t len, char** out_hex) {
    return guarded([&] {
        require(out_hex != nullptr, "null output pointer");
        require(data != nullptr || len == 0, "null data");
        *out_hex = copy_out(util::sha256_hex(std::string(data, len)));
    });
}

vc_status vc_context_create(int genus, int order, int cutoff, const char* params_json,
                            vc_context** out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        auto handle = std::make_unique<vc_context>();
        handle->voa = std::make_shared<voa::HeisenbergVOA>(cutoff > 0 ? cutoff
                                                                      : default_cutoff(order));
        handle->ctx.voa = handle->voa.get();
        handle->ctx.params = params_json == nullptr
                                 ? schottky::symbolic_params(genus)
                                 : vcluster::params_from_json_mixed(json::parse(params_json));
        require(handle->ctx.params.g == genus, "genus does not match the parameter set");
        handle->ctx.T = order;
        handle->ctx.L = order;
        handle->ctx.validate();
        *out = handle.release();
    });
}

void vc_context_free(vc_context* ctx) { delete ctx; }

vc_status vc_char_partition(const vc_context* ctx, int rank2, char** out_json) {
    return guarded([&] {
        require(ctx != nullptr && out_json != nullptr, "null argument");
        const auto s = rank2 ? chars::genus_g_partition_rank2(ctx->ctx)
                             : chars::genus_g_partition(ctx->ctx);
        *out_json = copy_out(exact::series_json(s).dump());
    });
}

vc_status vc_char_npoint(const vc_context* ctx, const char* insertions_json, char** out_json) {
    return guarded([&] {
        require(ctx != nullptr && out_json != nullptr, "null argument");
        const auto ins = parse_insertions(parse_text(insertions_json, "null insertions"));
        const auto r = chars::genus_g_npoint(ctx->ctx, ins);
        *out_json = copy_out(form_json(r.value).dump());
    });
}

vc_status vc_char_nome(const vc_context* ctx, int rank2, unsigned count, char** out_json) {
    return guarded([&] {
        require(ctx != nullptr && out_json != nullptr, "null argument");
        const auto s = rank2 ? chars::genus_g_partition_rank2(ctx->ctx)
                             : chars::genus_g_partition(ctx->ctx);
        json coeffs = json::array();
        for (const auto& c : chars::nome_coefficients(s, count))
            coeffs.push_back(exact::rational_str(c));
        *out_json = copy_out(json{{"coefficients", std::move(coeffs)}}.dump());
    });
}

vc_status vc_char_verify_zhu(const vc_context* ctx, const char* u_state,
                             const char* insertions_json, const char* f_json, char** out_json) {
    return guarded([&] {
        require(ctx != nullptr && out_json != nullptr, "null argument");
        require(u_state != nullptr, "null reducing state");
        const auto u = voa::parse_state(u_state);
        const auto ins = parse_insertions(parse_text(insertions_json, "null insertions"));
        const auto f = f_json == nullptr ? std::vector<exact::RationalFunction>{}
                                         : parse_f(json::parse(f_json));
        const auto rep = chars::verify_reduction(ctx->ctx, u, exact::var_x(), ins, f);
        *out_json = copy_out(json{{"ok", rep.ok}, {"detail", rep.detail}}.dump());
    });
}

vc_status vc_schottky_suite(unsigned trials, unsigned rng_seed, char** out_json) {
    return guarded([&] {
        require(out_json != nullptr, "null output pointer");
        *out_json = copy_out(suite_json(verify::schottky_suite(trials, rng_seed)).dump());
    });
}

vc_status vc_schottky_words(int genus, int max_len, char** out_json) {
    return guarded([&] {
        require(out_json != nullptr, "null output pointer");
        const auto words = schottky::enumerate_words(genus, max_len);
        json list = json::array();
        for (const auto& w : words) list.push_back(w.str());
        *out_json = copy_out(
            json{{"count", words.size()}, {"words", std::move(list)}}.dump());
    });
}

vc_status vc_schottky_orbit(const char* params_json, int max_len, char** out_json) {
    return guarded([&] {
        require(out_json != nullptr, "null output pointer");
        const auto p =
            vcluster::params_from_json_mixed(parse_text(params_json, "null parameters"));
        require(p.numeric(), "orbit requires fully numeric parameters");
        json list = json::array();
        for (const auto& lp : schottky::limit_point_cloud(p, max_len)) {
            json one{{"word", lp.word.str()},
                     {"trace", exact::rational_str(lp.trace)},
                     {"disc", exact::rational_str(lp.disc)},
                     {"parabolic", lp.parabolic}};
            if (lp.point) one["point"] = exact::rational_str(*lp.point);
            list.push_back(std::move(one));
        }
        *out_json = copy_out(json{{"points", std::move(list)}}.dump());
    });
}

vc_status vc_schottky_sl2(const char* params_json, const char* gamma, char** out_json) {
    return guarded([&] {
        require(out_json != nullptr, "null output pointer");
        require(gamma != nullptr, "null map");
        const auto p =
            vcluster::params_from_json_mixed(parse_text(params_json, "null parameters"));
        require(p.numeric(), "the parameter-space action needs numeric parameters");
        std::vector<exact::Rational> entries;
        std::string cell;
        for (std::istringstream in(gamma); std::getline(in, cell, ',');)
            entries.push_back(exact::parse_rational(cell));
        require(entries.size() == 4, "the map takes four entries a,b,c,d");
        const schottky::MobiusMap m(entries[0], entries[1], entries[2], entries[3]);
        *out_json = copy_out(vcluster::params_json_mixed(schottky::sl2_action(m, p)).dump());
    });
}

vc_status vc_zhu_kernel(int genus, int weight, int order, const char* f_json, char** out_json) {
    return guarded([&] {
        require(out_json != nullptr, "null output pointer");
        zhu::KernelConfig cfg;
        cfg.g = genus;
        cfg.p = weight;
        cfg.T2 = 2 * order;
        cfg.f = f_json == nullptr ? std::vector<exact::RationalFunction>{}
                                  : parse_f(json::parse(f_json));
        cfg.validate();
        const auto form = zhu::psi_full(cfg, exact::var_x(), exact::var_y(1));
        *out_json = copy_out(form_json(form).dump());
    });
}

vc_status vc_cluster_create(const char* b_json, const char* coeffs, vc_cluster_seed** out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        const auto rows =
            parse_text(b_json, "null matrix").get<std::vector<std::vector<long long>>>();
        cluster::ExchangeMatrix B(rows);
        const std::string kind = coeffs == nullptr ? "trivial" : coeffs;
        cluster::ClassicalSeed seed =
            kind == "trivial"     ? cluster::trivial_seed(B)
            : kind == "principal" ? cluster::principal_seed(B)
                                  : throw InvalidError("coefficients are trivial or principal");
        *out = new vc_cluster_seed{std::move(seed)};
    });
}

void vc_cluster_free(vc_cluster_seed* seed) { delete seed; }

vc_status vc_cluster_mutate(vc_cluster_seed* seed, const int* word, size_t len) {
    return guarded([&] {
        require(seed != nullptr, "null seed");
        require(word != nullptr || len == 0, "null word");
        auto next = cluster::apply_word(seed->seed, std::vector<int>(word, word + len));
        seed->seed = std::move(next);
    });
}

vc_status vc_cluster_json(const vc_cluster_seed* seed, char** out_json) {
    return guarded([&] {
        require(seed != nullptr && out_json != nullptr, "null argument");
        json x = json::array(), y = json::array();
        for (const auto& v : seed->seed.x) x.push_back(v.str());
        for (const auto& t : seed->seed.y) y.push_back(t.e);
        *out_json = copy_out(json{{"n", seed->seed.B.n()},
                                  {"B", seed->seed.B.rows()},
                                  {"x", std::move(x)},
                                  {"y", std::move(y)}}
                                 .dump());
    });
}

vc_status vc_cluster_enumerate(const vc_cluster_seed* seed, int max_depth, long long cap,
                               char** out_json) {
    return guarded([&] {
        require(seed != nullptr && out_json != nullptr, "null argument");
        const auto r = cluster::enumerate_clusters(seed->seed, max_depth, cap);
        *out_json = copy_out(json{{"clusters", r.clusters},
                                  {"variables", r.variables},
                                  {"closed", r.closed},
                                  {"depth", r.depth}}
                                 .dump());
    });
}

vc_status vc_cluster_laurent(const vc_cluster_seed* seed, const int* word, size_t len,
                             char** out_json) {
    return guarded([&] {
        require(seed != nullptr && out_json != nullptr, "null argument");
        require(word != nullptr || len == 0, "null word");
        const auto r = cluster::laurent_check(seed->seed, std::vector<int>(word, word + len));
        *out_json =
            copy_out(json{{"laurent", r.laurent}, {"denominators", r.denominators}}.dump());
    });
}

vc_status vc_vseed_build(const vc_context* ctx, const char* insertions_json, vc_vseed** out) {
    return guarded([&] {
        require(ctx != nullptr && out != nullptr, "null argument");
        const auto ins = parse_insertions(parse_text(insertions_json, "null insertions"));
        auto seed = vcluster::make_seed(ctx->ctx, ins);
        *out = new vc_vseed{ctx->voa, std::move(seed)};
    });
}

vc_status vc_vseed_create(const char* seed_json, int weight_cutoff, vc_vseed** out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        const json j = parse_text(seed_json, "null seed");
        const int L = j.at("L").get<int>();
        auto voa = std::make_shared<voa::HeisenbergVOA>(weight_cutoff > 0 ? weight_cutoff
                                                                          : default_cutoff(L));
        auto seed = vcluster::seed_from_json(*voa, j);
        *out = new vc_vseed{std::move(voa), std::move(seed)};
    });
}

void vc_vseed_free(vc_vseed* seed) { delete seed; }

vc_status vc_vseed_json(const vc_vseed* seed, char** out_json) {
    return guarded([&] {
        require(seed != nullptr && out_json != nullptr, "null argument");
        *out_json = copy_out(vcluster::seed_json(seed->seed).dump());
    });
}

vc_status vc_vseed_mutate(const vc_vseed* seed, const char* spec_json, char** out_json) {
    return guarded([&] {
        require(seed != nullptr && out_json != nullptr, "null argument");
        const auto spec = spec_from_json(*seed->voa, parse_text(spec_json, "null spec"));
        const auto o = vcluster::mutate(seed->seed, spec, exact::var_x());
        *out_json = copy_out(json{{"consistent", o.consistent},
                                  {"seed", vcluster::seed_json(o.seed)},
                                  {"transformed", form_json(o.transformed.value)}}
                                 .dump());
    });
}

vc_status vc_vseed_involution(const vc_vseed* seed, const char* xi, char** out_json) {
    return guarded([&] {
        require(seed != nullptr && out_json != nullptr, "null argument");
        const exact::Rational x = xi == nullptr ? exact::Rational(1) : exact::parse_rational(xi);
        const bool pass = vcluster::vacuum_involution_check(seed->seed, x);
        *out_json = copy_out(json{{"pass", pass}}.dump());
    });
}

vc_status vc_verify_all(int genus, int order, unsigned rng_seed, char** out_json) {
    return guarded([&] {
        require(out_json != nullptr, "null output pointer");
        voa::HeisenbergVOA voa(16);
        *out_json = copy_out(suite_json(verify::verify_all(voa, genus, order, rng_seed)).dump());
    });
}

} // extern "C"
