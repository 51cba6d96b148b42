// vc: batch front end over the shared library. Every computation goes
// through the C API; this file only does configuration, emission and the
// run manifest. Exit codes: 0 all requested checks pass, 1 verification
// failure, 2 usage or configuration error.

#include <voacluster.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string take(char* p) {
    std::string s = p ? p : "";
    vc_string_free(p);
    return s;
}

void check_status(vc_status st) {
    if (st == VC_OK) return;
    const std::string msg = vc_last_error();
    if (st == VC_VERIFY_FAILED) throw CheckFailure(msg);
    throw ConfigError(msg);
}

// option values are inline JSON when they look like it, file paths otherwise
std::string load_payload(const std::string& v) {
    if (v.empty() || v.front() == '{' || v.front() == '[') return v;
    std::ifstream in(v, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + v);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string sha256_of(const std::string& content) {
    char* hex = nullptr;
    check_status(vc_sha256(content.data(), content.size(), &hex));
    return take(hex);
}

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw ConfigError("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// One command run: a primary artifact, optional per-check results, and a
// manifest binding config echo, version, timing and content hashes.
class Run {
public:
    Run(std::string command, std::string out_dir, std::string format)
        : command_(std::move(command)), out_dir_(std::move(out_dir)),
          format_(std::move(format)), start_(std::chrono::steady_clock::now()) {}

    json& config() { return config_; }
    void set_checks(json checks) { checks_ = std::move(checks); }

    void artifact(const std::string& stem, const json& payload, const std::string& csv = "") {
        if (format_ == "csv" && csv.empty())
            throw ConfigError("no csv rendering for " + command_);
        const bool as_csv = format_ == "csv";
        std::string content = as_csv ? csv : payload.dump(2) + "\n";
        std::cout << content;
        files_.emplace_back(stem + (as_csv ? ".csv" : ".json"), std::move(content));
    }

    int finish(bool pass) {
        if (!pass && checks_.is_array()) {
            for (const auto& c : checks_) {
                if (c.at("pass").get<bool>()) continue;
                std::cerr << "FAIL " << c.at("name").get<std::string>() << ": "
                          << c.value("detail", std::string{}) << "\n";
                break;
            }
        }
        if (!out_dir_.empty()) {
            fs::create_directories(out_dir_);
            json hashes = json::object();
            for (const auto& [name, content] : files_) {
                write_atomic(fs::path(out_dir_) / name, content);
                hashes[name] = sha256_of(content);
            }
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start_)
                                .count();
            json manifest{{"command", command_}, {"config", config_},
                          {"version", vc_version()}, {"pass", pass},
                          {"wall_time_ms", ms},     {"artifacts", std::move(hashes)}};
            if (!checks_.is_null()) manifest["checks"] = checks_;
            write_atomic(fs::path(out_dir_) / "manifest.json", manifest.dump(2) + "\n");
        }
        return pass ? 0 : 1;
    }

private:
    std::string command_, out_dir_, format_;
    json config_ = json::object(), checks_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::pair<std::string, std::string>> files_;
};

struct CtxHandle {
    vc_context* p = nullptr;
    ~CtxHandle() { vc_context_free(p); }
};
struct ClusterHandle {
    vc_cluster_seed* p = nullptr;
    ~ClusterHandle() { vc_cluster_free(p); }
};
struct VSeedHandle {
    vc_vseed* p = nullptr;
    ~VSeedHandle() { vc_vseed_free(p); }
};

// shared context options for the char and vcluster families
struct CharOpts {
    int genus = 1;
    int order = 1;
    int cutoff = 0;
    unsigned seed = 1;
    std::string mode = "symbolic";
    std::string params;
    bool symbolic_flag = false;
};

// deterministic small rationals, distinct as exact values; mt19937 word
// stream only, so runs reproduce byte-identically everywhere
json evaluated_params(int genus, unsigned seed) {
    std::mt19937 mt(seed);
    std::vector<std::pair<long, long>> seen;
    auto draw = [&]() -> std::string {
        for (;;) {
            const long num = static_cast<long>(mt() % 61) - 30;
            const long den = 1 + static_cast<long>(mt() % 3);
            bool dup = false;
            for (const auto& [n, d] : seen) dup = dup || n * den == num * d;
            if (dup) continue;
            seen.emplace_back(num, den);
            return std::to_string(num) + "/" + std::to_string(den);
        }
    };
    json handles = json::array();
    for (int a = 0; a < genus; ++a) {
        json h{{"w_plus", draw()}, {"w_minus", draw()}};
        handles.push_back(std::move(h));
    }
    return json{{"g", genus}, {"handles", std::move(handles)}};
}

// params precedence: explicit file/JSON, else evaluated draws, else symbolic
std::optional<std::string> resolve_params(const CharOpts& o, json& cfg) {
    cfg["genus"] = o.genus;
    cfg["order"] = o.order;
    cfg["cutoff"] = o.cutoff;
    if (o.symbolic_flag && o.mode == "evaluated")
        throw ConfigError("--symbolic contradicts --mode evaluated");
    const std::string mode = o.symbolic_flag ? "symbolic" : o.mode;
    cfg["mode"] = mode;
    if (!o.params.empty()) {
        if (mode == "evaluated")
            throw ConfigError("choose --params or --mode evaluated, not both");
        const std::string text = load_payload(o.params);
        cfg["params"] = json::parse(text);
        return text;
    }
    if (mode == "evaluated") {
        json p = evaluated_params(o.genus, o.seed);
        cfg["params"] = p;
        cfg["seed"] = o.seed;
        return p.dump();
    }
    return std::nullopt;
}

CtxHandle make_context(const CharOpts& o, json& cfg) {
    const auto params = resolve_params(o, cfg);
    CtxHandle ctx;
    check_status(vc_context_create(o.genus, o.order, o.cutoff,
                                   params ? params->c_str() : nullptr, &ctx.p));
    return ctx;
}

std::string checks_csv(const json& checks) {
    std::string out = "name,pass,detail\n";
    for (const auto& c : checks)
        out += csv_cell(c.at("name").get<std::string>()) + ',' +
               (c.at("pass").get<bool>() ? "true" : "false") + ',' +
               csv_cell(c.value("detail", std::string{})) + '\n';
    return out;
}

std::string series_csv(const json& s) {
    std::string out = "rho_exp,num,den\n";
    for (const auto& t : s.at("terms")) {
        std::string e;
        for (const auto& x : t.at("rho_exp")) {
            if (!e.empty()) e += ' ';
            e += x.get<std::string>();
        }
        out += csv_cell(e) + ',' + csv_cell(t.at("coeff").at("num").get<std::string>()) + ',' +
               csv_cell(t.at("coeff").at("den").get<std::string>()) + '\n';
    }
    return out;
}

int run_suite_command(Run& run, const json& payload, const std::string& stem) {
    run.set_checks(payload.at("checks"));
    run.artifact(stem, payload, checks_csv(payload.at("checks")));
    return run.finish(payload.at("pass").get<bool>());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact genus-g characters, reduction kernels and cluster mutation"};
    app.require_subcommand(1);

    std::string out_dir, format = "json";
    app.add_option("--out-dir", out_dir, "write artifacts and a manifest here");
    app.add_option("--format", format, "artifact format")
        ->check(CLI::IsMember({"json", "csv"}));

    int exit_code = 0;
    auto make_run = [&](const std::string& command) { return Run(command, out_dir, format); };

    // ---- schottky ----------------------------------------------------
    auto* schottky = app.add_subcommand("schottky", "Schottky group tools");
    schottky->require_subcommand(1);
    schottky->fallthrough();

    struct {
        unsigned trials = 20, seed = 1;
    } sc;
    auto* s_check = schottky->add_subcommand("check", "randomized exact identity checks");
    s_check->fallthrough();
    s_check->add_option("--trials", sc.trials, "random instances per check");
    s_check->add_option("--seed", sc.seed, "RNG seed");
    s_check->callback([&] {
        auto run = make_run("schottky check");
        run.config() = {{"trials", sc.trials}, {"seed", sc.seed}};
        char* out = nullptr;
        check_status(vc_schottky_suite(sc.trials, sc.seed, &out));
        exit_code = run_suite_command(run, json::parse(take(out)), "checks");
    });

    struct {
        int genus = 1, max_len = 3;
    } sw;
    auto* s_words = schottky->add_subcommand("words", "reduced group words");
    s_words->fallthrough();
    s_words->add_option("--genus", sw.genus, "number of handles");
    s_words->add_option("--max-len", sw.max_len, "longest word length");
    s_words->callback([&] {
        auto run = make_run("schottky words");
        run.config() = {{"genus", sw.genus}, {"max_len", sw.max_len}};
        char* out = nullptr;
        check_status(vc_schottky_words(sw.genus, sw.max_len, &out));
        const json payload = json::parse(take(out));
        std::string csv = "word\n";
        for (const auto& w : payload.at("words")) csv += csv_cell(w.get<std::string>()) + '\n';
        run.artifact("words", payload, csv);
        exit_code = run.finish(true);
    });

    struct {
        std::string params, gamma;
        int max_len = 2;
    } so;
    auto* s_orbit = schottky->add_subcommand("orbit", "limit points and the parameter action");
    s_orbit->fallthrough();
    s_orbit->add_option("--params", so.params, "numeric parameter file or JSON")->required();
    s_orbit->add_option("--gamma", so.gamma, "det-one map a,b,c,d moving the parameters");
    s_orbit->add_option("--max-len", so.max_len, "word length bound for limit points");
    s_orbit->callback([&] {
        auto run = make_run("schottky orbit");
        std::string params = load_payload(so.params);
        run.config() = {{"params", json::parse(params)}, {"max_len", so.max_len}};
        if (!so.gamma.empty()) {
            run.config()["gamma"] = so.gamma;
            char* moved = nullptr;
            check_status(vc_schottky_sl2(params.c_str(), so.gamma.c_str(), &moved));
            params = take(moved);
        }
        char* out = nullptr;
        check_status(vc_schottky_orbit(params.c_str(), so.max_len, &out));
        json payload{{"params", json::parse(params)},
                     {"points", json::parse(take(out)).at("points")}};
        std::string csv = "word,point,trace,disc,parabolic\n";
        for (const auto& p : payload.at("points"))
            csv += csv_cell(p.at("word").get<std::string>()) + ',' +
                   csv_cell(p.value("point", std::string{})) + ',' +
                   csv_cell(p.at("trace").get<std::string>()) + ',' +
                   csv_cell(p.at("disc").get<std::string>()) + ',' +
                   (p.at("parabolic").get<bool>() ? "true" : "false") + '\n';
        run.artifact("orbit", payload, csv);
        exit_code = run.finish(true);
    });

    // ---- zhu-kernel ---------------------------------------------------
    struct {
        int genus = 1, weight = 1, order = 1;
        std::string f;
    } zk;
    auto* kernel = app.add_subcommand("zhu-kernel", "dressed reduction kernel");
    kernel->fallthrough();
    kernel->add_option("--genus", zk.genus, "number of handles");
    kernel->add_option("--weight", zk.weight, "weight of the reducing state");
    kernel->add_option("--order", zk.order, "retained series order");
    kernel->add_option("--f", zk.f, "free-part coefficients, file or JSON");
    kernel->callback([&] {
        auto run = make_run("zhu-kernel");
        run.config() = {{"genus", zk.genus}, {"weight", zk.weight}, {"order", zk.order}};
        std::string f;
        if (!zk.f.empty()) {
            f = load_payload(zk.f);
            run.config()["f"] = json::parse(f);
        }
        char* out = nullptr;
        check_status(vc_zhu_kernel(zk.genus, zk.weight, zk.order,
                                   zk.f.empty() ? nullptr : f.c_str(), &out));
        run.artifact("kernel", json::parse(take(out)));
        exit_code = run.finish(true);
    });

    // ---- char ---------------------------------------------------------
    auto* chr = app.add_subcommand("char", "genus-g character functions");
    chr->require_subcommand(1);
    chr->fallthrough();

    auto add_char_opts = [](CLI::App* sub, CharOpts& o) {
        sub->fallthrough();
        sub->add_option("--genus", o.genus, "number of handles");
        sub->add_option("--order", o.order, "retained series order");
        sub->add_option("--cutoff", o.cutoff, "state-space weight bound, 0 = automatic");
        sub->add_option("--params", o.params, "parameter file or JSON");
        sub->add_option("--mode", o.mode, "center handling")
            ->check(CLI::IsMember({"symbolic", "evaluated"}));
        sub->add_option("--seed", o.seed, "RNG seed for evaluated centers");
        sub->add_flag("--symbolic", o.symbolic_flag, "keep every center symbolic");
    };

    CharOpts cp;
    bool cp_rank2 = false;
    auto* c_part = chr->add_subcommand("partition", "partition character");
    add_char_opts(c_part, cp);
    c_part->add_flag("--rank2", cp_rank2, "tensor-square state space");
    c_part->callback([&] {
        auto run = make_run("char partition");
        auto ctx = make_context(cp, run.config());
        run.config()["rank2"] = cp_rank2;
        char* out = nullptr;
        check_status(vc_char_partition(ctx.p, cp_rank2 ? 1 : 0, &out));
        const json payload = json::parse(take(out));
        run.artifact("partition", payload, series_csv(payload));
        exit_code = run.finish(true);
    });

    CharOpts cn;
    std::string cn_insertions;
    auto* c_npoint = chr->add_subcommand("npoint", "n-point character");
    add_char_opts(c_npoint, cn);
    c_npoint->add_option("--insertions", cn_insertions, "insertion file or JSON")->required();
    c_npoint->callback([&] {
        auto run = make_run("char npoint");
        auto ctx = make_context(cn, run.config());
        const std::string ins = load_payload(cn_insertions);
        run.config()["insertions"] = json::parse(ins);
        char* out = nullptr;
        check_status(vc_char_npoint(ctx.p, ins.c_str(), &out));
        run.artifact("npoint", json::parse(take(out)));
        exit_code = run.finish(true);
    });

    CharOpts cq;
    bool cq_rank2 = false;
    unsigned cq_count = 0;
    auto* c_nome = chr->add_subcommand("nome", "genus-one multiplier expansion");
    add_char_opts(c_nome, cq);
    c_nome->add_flag("--rank2", cq_rank2, "tensor-square state space");
    c_nome->add_option("--count", cq_count, "coefficients to emit, 0 = order+1");
    c_nome->callback([&] {
        auto run = make_run("char nome");
        auto ctx = make_context(cq, run.config());
        const unsigned count = cq_count ? cq_count : static_cast<unsigned>(cq.order) + 1;
        run.config()["count"] = count;
        run.config()["rank2"] = cq_rank2;
        char* out = nullptr;
        check_status(vc_char_nome(ctx.p, cq_rank2 ? 1 : 0, count, &out));
        const json payload = json::parse(take(out));
        std::string csv = "k,coefficient\n";
        unsigned k = 0;
        for (const auto& c : payload.at("coefficients"))
            csv += std::to_string(k++) + ',' + csv_cell(c.get<std::string>()) + '\n';
        run.artifact("nome", payload, csv);
        exit_code = run.finish(true);
    });

    CharOpts cv;
    std::string cv_u, cv_insertions = "[]", cv_f;
    auto* c_verify = chr->add_subcommand("verify-zhu", "brute-force reduction check");
    add_char_opts(c_verify, cv);
    c_verify->add_option("--u", cv_u, "reducing state, e.g. \"a(-1)|0>\"")->required();
    c_verify->add_option("--insertions", cv_insertions, "insertion file or JSON");
    c_verify->add_option("--f", cv_f, "free-part coefficients, file or JSON");
    c_verify->callback([&] {
        auto run = make_run("char verify-zhu");
        auto ctx = make_context(cv, run.config());
        const std::string ins = load_payload(cv_insertions);
        run.config()["u"] = cv_u;
        run.config()["insertions"] = json::parse(ins);
        std::string f;
        if (!cv_f.empty()) {
            f = load_payload(cv_f);
            run.config()["f"] = json::parse(f);
        }
        char* out = nullptr;
        check_status(vc_char_verify_zhu(ctx.p, cv_u.c_str(), ins.c_str(),
                                        cv_f.empty() ? nullptr : f.c_str(), &out));
        const json payload = json::parse(take(out));
        const bool ok = payload.at("ok").get<bool>();
        json checks = json::array();
        checks.push_back(
            {{"name", "reduction"}, {"pass", ok}, {"detail", payload.at("detail")}});
        run.set_checks(checks);
        run.artifact("reduction", payload, checks_csv(checks));
        exit_code = run.finish(ok);
    });

    // ---- cluster -------------------------------------------------------
    auto* cluster = app.add_subcommand("cluster", "classical cluster mutation");
    cluster->require_subcommand(1);
    cluster->fallthrough();

    struct ClusterOpts {
        std::string B, coeffs = "trivial";
        std::vector<int> word;
    };
    auto add_cluster_opts = [](CLI::App* sub, ClusterOpts& o, bool need_word) {
        sub->fallthrough();
        sub->add_option("--B,--matrix", o.B, "exchange matrix file or JSON")->required();
        sub->add_option("--coeffs", o.coeffs, "coefficient seeding")
            ->check(CLI::IsMember({"trivial", "principal"}));
        auto* w = sub->add_option("--word", o.word, "one-based directions")->delimiter(',');
        if (need_word) w->required();
    };
    auto make_cluster = [](const ClusterOpts& o, json& cfg) {
        const std::string b = load_payload(o.B);
        cfg["B"] = json::parse(b);
        cfg["coeffs"] = o.coeffs;
        ClusterHandle seed;
        check_status(vc_cluster_create(b.c_str(), o.coeffs.c_str(), &seed.p));
        if (!o.word.empty()) {
            cfg["word"] = o.word;
            check_status(vc_cluster_mutate(seed.p, o.word.data(), o.word.size()));
        }
        return seed;
    };

    ClusterOpts km;
    auto* k_mutate = cluster->add_subcommand("mutate", "apply a mutation word");
    add_cluster_opts(k_mutate, km, true);
    k_mutate->callback([&] {
        auto run = make_run("cluster mutate");
        auto seed = make_cluster(km, run.config());
        char* out = nullptr;
        check_status(vc_cluster_json(seed.p, &out));
        run.artifact("cluster", json::parse(take(out)));
        exit_code = run.finish(true);
    });

    ClusterOpts ke;
    int ke_depth = 64;
    long long ke_cap = 500;
    auto* k_enum = cluster->add_subcommand("enumerate", "walk the exchange graph");
    add_cluster_opts(k_enum, ke, false);
    k_enum->add_option("--max-depth", ke_depth, "mutation depth bound");
    k_enum->add_option("--cap", ke_cap, "cluster count bound");
    k_enum->callback([&] {
        auto run = make_run("cluster enumerate");
        auto seed = make_cluster(ke, run.config());
        run.config()["max_depth"] = ke_depth;
        run.config()["cap"] = ke_cap;
        char* out = nullptr;
        check_status(vc_cluster_enumerate(seed.p, ke_depth, ke_cap, &out));
        const json payload = json::parse(take(out));
        std::string csv = "clusters,variables,closed,depth\n";
        csv += payload.at("clusters").dump() + ',' + payload.at("variables").dump() + ',' +
               (payload.at("closed").get<bool>() ? "true" : "false") + ',' +
               payload.at("depth").dump() + '\n';
        run.artifact("enumeration", payload, csv);
        exit_code = run.finish(true);
    });

    ClusterOpts kl;
    auto* k_laurent = cluster->add_subcommand("laurent", "Laurent certificates along a word");
    add_cluster_opts(k_laurent, kl, true);
    k_laurent->callback([&] {
        auto run = make_run("cluster laurent");
        const std::string b = load_payload(kl.B);
        run.config()["B"] = json::parse(b);
        run.config()["coeffs"] = kl.coeffs;
        run.config()["word"] = kl.word;
        ClusterHandle seed;
        check_status(vc_cluster_create(b.c_str(), kl.coeffs.c_str(), &seed.p));
        char* out = nullptr;
        check_status(vc_cluster_laurent(seed.p, kl.word.data(), kl.word.size(), &out));
        const json payload = json::parse(take(out));
        const bool ok = payload.at("laurent").get<bool>();
        json checks = json::array();
        checks.push_back({{"name", "laurent"}, {"pass", ok}, {"detail", ""}});
        run.set_checks(checks);
        std::string csv = "index,denominator_exponents\n";
        int i = 0;
        for (const auto& row : payload.at("denominators")) {
            std::string e;
            for (const auto& x : row) {
                if (!e.empty()) e += ' ';
                e += x.dump();
            }
            csv += std::to_string(i++) + ',' + csv_cell(e) + '\n';
        }
        run.artifact("laurent", payload, csv);
        exit_code = run.finish(ok);
    });

    // ---- vcluster -------------------------------------------------------
    auto* vcl = app.add_subcommand("vcluster", "vertex operator cluster seeds");
    vcl->require_subcommand(1);
    vcl->fallthrough();

    CharOpts vs;
    std::string vs_insertions = "[]";
    auto* v_seed = vcl->add_subcommand("seed", "build and store a seed");
    add_char_opts(v_seed, vs);
    v_seed->add_option("--insertions", vs_insertions, "insertion file or JSON");
    v_seed->callback([&] {
        auto run = make_run("vcluster seed");
        auto ctx = make_context(vs, run.config());
        const std::string ins = load_payload(vs_insertions);
        run.config()["insertions"] = json::parse(ins);
        VSeedHandle seed;
        check_status(vc_vseed_build(ctx.p, ins.c_str(), &seed.p));
        char* out = nullptr;
        check_status(vc_vseed_json(seed.p, &out));
        run.artifact("seed", json::parse(take(out)));
        exit_code = run.finish(true);
    });

    struct {
        std::string seed, spec;
        int cutoff = 0;
    } vm;
    auto* v_mutate = vcl->add_subcommand("mutate", "mutate a stored seed");
    v_mutate->fallthrough();
    v_mutate->add_option("--seed", vm.seed, "seed file or JSON")->required();
    v_mutate->add_option("--spec", vm.spec, "mutation spec file or JSON")->required();
    v_mutate->add_option("--cutoff", vm.cutoff, "state-space weight bound, 0 = automatic");
    v_mutate->callback([&] {
        auto run = make_run("vcluster mutate");
        const std::string seed_text = load_payload(vm.seed);
        const std::string spec_text = load_payload(vm.spec);
        run.config()["seed"] = json::parse(seed_text);
        run.config()["spec"] = json::parse(spec_text);
        run.config()["cutoff"] = vm.cutoff;
        VSeedHandle seed;
        check_status(vc_vseed_create(seed_text.c_str(), vm.cutoff, &seed.p));
        char* out = nullptr;
        check_status(vc_vseed_mutate(seed.p, spec_text.c_str(), &out));
        // the consistency flag is reported, not enforced: a generic rewriting
        // rule is a transform, not an identity
        run.artifact("mutation", json::parse(take(out)));
        exit_code = run.finish(true);
    });

    struct {
        std::string seed, xi = "1";
        int cutoff = 0;
    } vi;
    auto* v_inv = vcl->add_subcommand("involution", "vacuum mutation applied twice");
    v_inv->fallthrough();
    v_inv->add_option("--seed", vi.seed, "seed file or JSON")->required();
    v_inv->add_option("--xi", vi.xi, "vacuum scaling, 1 or -1");
    v_inv->add_option("--cutoff", vi.cutoff, "state-space weight bound, 0 = automatic");
    v_inv->callback([&] {
        auto run = make_run("vcluster involution");
        const std::string seed_text = load_payload(vi.seed);
        run.config()["seed"] = json::parse(seed_text);
        run.config()["xi"] = vi.xi;
        VSeedHandle seed;
        check_status(vc_vseed_create(seed_text.c_str(), vi.cutoff, &seed.p));
        char* out = nullptr;
        check_status(vc_vseed_involution(seed.p, vi.xi.c_str(), &out));
        const json payload = json::parse(take(out));
        const bool ok = payload.at("pass").get<bool>();
        json checks = json::array();
        checks.push_back({{"name", "vacuum-involution"}, {"pass", ok}, {"detail", ""}});
        run.set_checks(checks);
        run.artifact("involution", payload, "name,pass\nvacuum-involution," +
                                                std::string(ok ? "true" : "false") + "\n");
        exit_code = run.finish(ok);
    });

    // ---- verify-all -----------------------------------------------------
    struct {
        int genus = 1, order = 1;
        unsigned seed = 1;
    } va;
    auto* v_all = app.add_subcommand("verify-all", "run every module suite");
    v_all->fallthrough();
    v_all->add_option("--genus", va.genus, "number of handles");
    v_all->add_option("--order", va.order, "retained series order");
    v_all->add_option("--seed", va.seed, "RNG seed");
    v_all->callback([&] {
        auto run = make_run("verify-all");
        run.config() = {{"genus", va.genus}, {"order", va.order}, {"seed", va.seed}};
        char* out = nullptr;
        check_status(vc_verify_all(va.genus, va.order, va.seed, &out));
        exit_code = run_suite_command(run, json::parse(take(out)), "verify");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const CheckFailure& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
