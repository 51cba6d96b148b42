#include "exact/json_io.hpp"

#include "exact/errors.hpp"

#include <algorithm>
#include <numeric>

namespace voac::exact {

std::string exp2_str(int e2) {
    std::string s = e2 < 0 ? "-" : "";
    int a = std::abs(e2);
    s += std::to_string(a / 2);
    if (a % 2) s += ".5";
    return s;
}

int exp2_parse(const std::string& s) {
    if (s.empty()) throw InvalidError("empty exponent string");
    std::string t = s;
    bool neg = false;
    if (t[0] == '-') {
        neg = true;
        t = t.substr(1);
    } else if (t[0] == '+') {
        t = t.substr(1);
    }
    int half = 0;
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        std::string frac = t.substr(dot + 1);
        if (frac != "5" && frac != "0" && !std::all_of(frac.begin(), frac.end(),
                                                       [](char c) { return c == '0'; }))
            throw InvalidError("exponent must be a half-integer: " + s);
        if (frac == "5") half = 1;
        t = t.substr(0, dot);
        if (t.empty()) t = "0";
    }
    if (!std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw InvalidError("bad exponent string: " + s);
    int e2 = 2 * std::stoi(t) + half;
    return neg ? -e2 : e2;
}

nlohmann::json rational_json(const Rational& r) {
    return {{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_object() || !j.contains("num"))
        throw InvalidError("bad rational JSON: " + j.dump());
    Rational n = parse_rational(j["num"].get<std::string>());
    Rational d = j.contains("den") ? parse_rational(j["den"].get<std::string>()) : Rational(1);
    if (d == 0) throw PoleError("rational JSON with zero denominator");
    return n / d;
}

nlohmann::json rf_json(const RationalFunction& f) {
    auto [n, d] = f.num_den_strings();
    return {{"num", n}, {"den", d}};
}

nlohmann::json series_json(const TruncatedSeries& s) {
    nlohmann::json terms = nlohmann::json::array();
    // ascending total order, then lexicographic, for stable output
    std::vector<std::pair<std::vector<int>, const RationalFunction*>> sorted;
    sorted.reserve(s.terms().size());
    for (auto& [e, c] : s.terms()) sorted.emplace_back(e, &c);
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) {
        int sa = std::accumulate(a.first.begin(), a.first.end(), 0);
        int sb = std::accumulate(b.first.begin(), b.first.end(), 0);
        if (sa != sb) return sa < sb;
        return a.first < b.first;
    });
    for (auto& [e, c] : sorted) {
        nlohmann::json exps = nlohmann::json::array();
        for (int x : e) exps.push_back(exp2_str(x));
        terms.push_back({{"rho_exp", exps}, {"coeff", rf_json(*c)}});
    }
    return {{"genus", s.genus()}, {"order", exp2_str(s.order2())}, {"terms", terms}};
}

TruncatedSeries series_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("genus") || !j.contains("order") || !j.contains("terms"))
        throw InvalidError("bad series JSON");
    int genus = j["genus"].get<int>();
    int order2 = j["order"].is_string() ? exp2_parse(j["order"].get<std::string>())
                                        : 2 * j["order"].get<int>();
    TruncatedSeries s(genus, order2);
    for (auto& t : j["terms"]) {
        std::vector<int> e;
        for (auto& x : t.at("rho_exp")) e.push_back(exp2_parse(x.get<std::string>()));
        s.add_term(e, RationalFunction(rational_from_json(t.at("coeff"))));
    }
    return s;
}

} // namespace voac::exact
