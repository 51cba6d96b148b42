#include "voa/fock.hpp"

#include "exact/errors.hpp"
#include "exact/json_io.hpp"

#include <algorithm>
#include <numeric>

namespace voac::voa {

int partition_weight(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

namespace {
void gen_partitions(int n, int maxpart, Partition& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, maxpart); k >= 1; --k) {
        cur.push_back(k);
        gen_partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw InvalidError("negative partition weight");
    std::vector<Partition> out;
    Partition cur;
    gen_partitions(n, n == 0 ? 1 : n, cur, out);
    return out;
}

FockState FockState::vacuum() { return basis({}); }

FockState FockState::basis(Partition p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0) throw InvalidError("partition entries must be positive");
        if (i > 0 && p[i] > p[i - 1]) throw InvalidError("partition must be non-increasing");
    }
    FockState s;
    s.terms_.emplace(std::move(p), Rational(1));
    return s;
}

Rational FockState::coefficient(const Partition& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
}

void FockState::insert(const Partition& p, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(p, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

FockState FockState::operator-() const {
    FockState s;
    for (auto& [p, c] : terms_) s.terms_.emplace(p, -c);
    return s;
}

FockState& FockState::operator+=(const FockState& o) {
    for (auto& [p, c] : o.terms_) insert(p, c);
    return *this;
}

FockState& FockState::operator-=(const FockState& o) { return *this += -o; }

FockState FockState::scaled(const Rational& c) const {
    FockState s;
    if (c == 0) return s;
    for (auto& [p, co] : terms_) s.terms_.emplace(p, co * c);
    return s;
}

FockState operator+(FockState a, const FockState& b) { return a += b; }
FockState operator-(FockState a, const FockState& b) { return a -= b; }

bool FockState::is_homogeneous() const {
    if (terms_.empty()) return true;
    int w = partition_weight(terms_.begin()->first);
    for (auto& [p, c] : terms_)
        if (partition_weight(p) != w) return false;
    return true;
}

int FockState::weight() const {
    if (terms_.empty()) return 0;
    if (!is_homogeneous()) throw InvalidError("weight of inhomogeneous state: " + str());
    return partition_weight(terms_.begin()->first);
}

int FockState::max_weight() const {
    int w = 0;
    for (auto& [p, c] : terms_) w = std::max(w, partition_weight(p));
    return w;
}

std::map<int, FockState> FockState::graded_components() const {
    std::map<int, FockState> out;
    for (auto& [p, c] : terms_) out[partition_weight(p)].insert(p, c);
    return out;
}

FockState FockState::created(int n) const {
    if (n < 1) throw InvalidError("creation index must be >= 1");
    FockState s;
    for (auto& [p, c] : terms_) {
        Partition q = p;
        auto pos = std::lower_bound(q.begin(), q.end(), n, std::greater<int>());
        q.insert(pos, n);
        s.insert(q, c);
    }
    return s;
}

FockState FockState::annihilated(int n) const {
    if (n < 1) throw InvalidError("annihilation index must be >= 1");
    FockState s;
    for (auto& [p, c] : terms_) {
        auto it = std::find(p.begin(), p.end(), n);
        if (it == p.end()) continue;
        long mult = std::count(p.begin(), p.end(), n);
        Partition q;
        q.reserve(p.size() - 1);
        bool dropped = false;
        for (int x : p) {
            if (x == n && !dropped) {
                dropped = true;
                continue;
            }
            q.push_back(x);
        }
        // [a(n), a(-n)] = n per occurrence
        s.insert(q, c * Rational(n) * Rational(mult));
    }
    return s;
}

int FockState::max_part() const {
    int m = 0;
    for (auto& [p, c] : terms_)
        if (!p.empty()) m = std::max(m, p[0]);
    return m;
}

std::string FockState::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [p, c] : terms_) {
        Rational cc = c;
        if (first) {
            if (cc < 0) {
                s += "-";
                cc = -cc;
            }
        } else {
            s += cc < 0 ? " - " : " + ";
            if (cc < 0) cc = -cc;
        }
        first = false;
        if (cc != 1) s += exact::rational_str(cc) + " ";
        for (int x : p) s += "a(-" + std::to_string(x) + ")";
        s += "|0>";
    }
    return s;
}

namespace {

// one product: [coeff] [a(-n)]* ("|0>" | "omega")
FockState parse_product(const std::string& tok) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < tok.size() && (tok[i] == ' ' || tok[i] == '\t')) ++i;
    };
    skip_ws();
    Rational coeff(1);
    // optional leading rational: digits with optional / fraction
    std::size_t start = i;
    while (i < tok.size() && ((tok[i] >= '0' && tok[i] <= '9') || tok[i] == '/')) ++i;
    if (i > start) {
        coeff = exact::parse_rational(tok.substr(start, i - start));
        if (i < tok.size() && tok[i] == '*') ++i;
    }
    skip_ws();
    Partition parts;
    bool omega = false;
    bool vacuum_seen = false;
    while (i < tok.size()) {
        skip_ws();
        if (i >= tok.size()) break;
        if (tok.compare(i, 5, "omega") == 0) {
            omega = true;
            i += 5;
            continue;
        }
        if (tok.compare(i, 3, "|0>") == 0) {
            vacuum_seen = true;
            i += 3;
            continue;
        }
        if (tok.compare(i, 3, "a(-") == 0) {
            i += 3;
            std::size_t j = i;
            while (j < tok.size() && tok[j] >= '0' && tok[j] <= '9') ++j;
            if (j == i || j >= tok.size() || tok[j] != ')')
                throw InvalidError("bad mode in state: " + tok);
            parts.push_back(std::stoi(tok.substr(i, j - i)));
            i = j + 1;
            continue;
        }
        throw InvalidError("cannot parse state fragment: '" + tok.substr(i) + "'");
    }
    if (omega) {
        if (!parts.empty() || vacuum_seen)
            throw InvalidError("omega cannot carry extra modes: " + tok);
        // (1/2) a(-1)^2 |0>
        return FockState::basis({1, 1}).scaled(coeff * exact::rat(1, 2));
    }
    if (!vacuum_seen) throw InvalidError("state must end in |0>: " + tok);
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    return FockState::basis(parts).scaled(coeff);
}

} // namespace

FockState parse_state(const std::string& text) {
    FockState out;
    std::string cur;
    bool neg = false;
    bool any = false;
    int depth = 0;
    auto flush = [&](bool require) {
        auto first = cur.find_first_not_of(" \t");
        if (first == std::string::npos) {
            if (require) throw InvalidError("empty summand in state: " + text);
            cur.clear();
            return;
        }
        FockState s = parse_product(cur.substr(first));
        out += neg ? -s : s;
        any = true;
        cur.clear();
    };
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        bool blank = cur.find_first_not_of(" \t") == std::string::npos;
        if (depth == 0 && (c == '+' || c == '-') && !blank) {
            flush(true);
            neg = c == '-';
        } else if (depth == 0 && c == '-' && blank && !any) {
            cur.clear();
            neg = true; // leading minus
        } else {
            cur.push_back(c);
        }
    }
    flush(!any);
    if (!any) throw InvalidError("empty state expression");
    return out;
}

nlohmann::json state_json(const FockState& s) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [p, c] : s.terms()) {
        nlohmann::json part = nlohmann::json::array();
        for (int x : p) part.push_back(x);
        terms.push_back({{"partition", part}, {"coeff", exact::rational_json(c)}});
    }
    return {{"terms", terms}};
}

FockState state_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("terms")) throw InvalidError("bad state JSON");
    FockState out;
    for (auto& t : j["terms"]) {
        Partition p;
        for (auto& x : t.at("partition")) p.push_back(x.get<int>());
        out += FockState::basis(p).scaled(exact::rational_from_json(t.at("coeff")));
    }
    return out;
}

} // namespace voac::voa
