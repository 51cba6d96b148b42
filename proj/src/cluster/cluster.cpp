#include "cluster/cluster.hpp"

#include "exact/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace voac::cluster {

using exact::FactorMap;
using exact::Integer;
using exact::Polynomial;
using exact::Rational;
using exact::RationalFunction;
using exact::VarId;

namespace {

long long pos_part(long long v) { return v > 0 ? v : 0; }

void check_index(int k, int n) {
    if (k < 1 || k > n) throw InvalidError("mutation index out of range");
}

void check_rank(const TropicalElement& a, const TropicalElement& b) {
    if (a.rank() != b.rank()) throw InvalidError("tropical rank mismatch");
}

// positive integer diagonal with d_i b_ij = -d_j b_ji, found by ratio
// propagation over the nonzero pattern; throws when no such diagonal exists
std::vector<long long> find_symmetrizer(const std::vector<std::vector<long long>>& b) {
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (b[i].size() != n) throw InvalidError("exchange matrix must be square");
        if (b[i][i] != 0) throw InvalidError("exchange matrix needs a zero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if ((b[i][j] == 0) != (b[j][i] == 0))
                throw InvalidError("exchange matrix zero pattern is not symmetric");
            if (b[i][j] * b[j][i] > 0)
                throw InvalidError("opposite entries must have opposite signs");
        }
    }
    std::vector<Rational> r(n, Rational(0));
    std::vector<char> done(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (done[root]) continue;
        r[root] = 1;
        done[root] = 1;
        std::vector<std::size_t> stack = {root};
        std::vector<std::size_t> component = {root};
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (b[i][j] == 0) continue;
                Rational rj = r[i] * Rational(b[i][j]) / Rational(-b[j][i]);
                if (done[j]) {
                    if (r[j] != rj) throw InvalidError("no positive symmetrizer exists");
                } else {
                    r[j] = rj;
                    done[j] = 1;
                    stack.push_back(j);
                    component.push_back(j);
                }
            }
        }
        Integer scale = 1;
        for (std::size_t i : component) scale = lcm(scale, denominator(r[i]));
        Integer common = 0;
        for (std::size_t i : component) {
            r[i] *= Rational(scale);
            common = gcd(common, numerator(r[i]));
        }
        for (std::size_t i : component) r[i] /= Rational(common);
    }
    std::vector<long long> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = exact::to_long(exact::to_integer(r[i]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (d[i] * b[i][j] != -d[j] * b[j][i])
                throw InvalidError("no positive symmetrizer exists");
    return d;
}

RationalFunction rf_pow(const RationalFunction& f, long long e) {
    RationalFunction out(1);
    for (long long i = 0; i < e; ++i) out *= f;
    return out;
}

std::string canon(const RationalFunction& f) {
    auto [num, den] = f.num_den_strings();
    return num + "/" + den;
}

std::vector<std::string> cluster_key(const std::vector<RationalFunction>& x) {
    std::vector<std::string> key;
    key.reserve(x.size());
    for (auto& v : x) key.push_back(canon(v));
    std::sort(key.begin(), key.end());
    return key;
}

} // namespace

bool TropicalElement::is_one() const {
    return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

TropicalElement TropicalElement::times(const TropicalElement& o) const {
    check_rank(*this, o);
    TropicalElement out = *this;
    for (std::size_t i = 0; i < e.size(); ++i) out.e[i] += o.e[i];
    return out;
}

TropicalElement TropicalElement::inverse() const { return pow(-1); }

TropicalElement TropicalElement::pow(int k) const {
    TropicalElement out = *this;
    for (auto& v : out.e) v *= k;
    return out;
}

TropicalElement TropicalElement::oplus(const TropicalElement& o) const {
    check_rank(*this, o);
    TropicalElement out = *this;
    for (std::size_t i = 0; i < e.size(); ++i) out.e[i] = std::min(out.e[i], o.e[i]);
    return out;
}

TropicalElement TropicalElement::oplus_one() const { return oplus(one(rank())); }

std::string TropicalElement::str() const {
    if (is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << " ";
        os << "u" << i + 1;
        if (e[i] != 1) os << "^" << e[i];
        first = false;
    }
    return os.str();
}

ExchangeMatrix::ExchangeMatrix(std::vector<std::vector<long long>> b)
    : b_(std::move(b)), d_(find_symmetrizer(b_)) {}

long long ExchangeMatrix::at(int i, int j) const {
    check_index(i, n());
    check_index(j, n());
    return b_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
}

std::string ExchangeMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < b_.size(); ++i) {
        if (i != 0) os << "; ";
        for (std::size_t j = 0; j < b_.size(); ++j) {
            if (j != 0) os << " ";
            os << b_[i][j];
        }
    }
    os << "]";
    return os.str();
}

ExchangeMatrix mutate_B(const ExchangeMatrix& B, int k) {
    const int n = B.n();
    check_index(k, n);
    std::vector<std::vector<long long>> out(static_cast<std::size_t>(n),
                                            std::vector<long long>(static_cast<std::size_t>(n)));
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            long long v;
            if (i == k || j == k)
                v = -B.at(i, j);
            else
                v = B.at(i, j) + pos_part(-B.at(i, k)) * B.at(k, j) +
                    B.at(i, k) * pos_part(B.at(k, j));
            out[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = v;
        }
    }
    return ExchangeMatrix(std::move(out));
}

std::vector<TropicalElement> mutate_y(const std::vector<TropicalElement>& y,
                                      const ExchangeMatrix& B, int k) {
    const int n = B.n();
    check_index(k, n);
    if (static_cast<int>(y.size()) != n) throw InvalidError("coefficient tuple size mismatch");
    std::vector<TropicalElement> out = y;
    const TropicalElement& yk = y[static_cast<std::size_t>(k - 1)];
    for (int j = 1; j <= n; ++j) {
        if (j == k) {
            out[static_cast<std::size_t>(j - 1)] = yk.inverse();
            continue;
        }
        long long bkj = B.at(k, j);
        out[static_cast<std::size_t>(j - 1)] =
            y[static_cast<std::size_t>(j - 1)]
                .times(yk.pow(static_cast<int>(pos_part(bkj))))
                .times(yk.oplus_one().pow(static_cast<int>(-bkj)));
    }
    return out;
}

VarId var_cluster_x(int i) { return exact::var(exact::cluster_x_name(i)); }
VarId var_coeff_u(int i) { return exact::var(exact::coeff_u_name(i)); }

RationalFunction coefficient_monomial(const TropicalElement& t) {
    Polynomial num(1);
    FactorMap den;
    for (std::size_t j = 0; j < t.e.size(); ++j) {
        int e = t.e[j];
        if (e > 0)
            num *= Polynomial::variable(var_coeff_u(static_cast<int>(j) + 1))
                       .pow(static_cast<unsigned>(e));
        else if (e < 0)
            den.emplace(Polynomial::variable(var_coeff_u(static_cast<int>(j) + 1)), -e);
    }
    return RationalFunction(std::move(num), std::move(den));
}

ClassicalSeed initial_seed(const ExchangeMatrix& B, std::vector<TropicalElement> y) {
    const int n = B.n();
    if (static_cast<int>(y.size()) != n) throw InvalidError("coefficient tuple size mismatch");
    for (auto& t : y) check_rank(t, y.front());
    std::vector<RationalFunction> x;
    for (int i = 1; i <= n; ++i) x.push_back(RationalFunction::variable(var_cluster_x(i)));
    return {std::move(x), std::move(y), B};
}

ClassicalSeed trivial_seed(const ExchangeMatrix& B) {
    return initial_seed(B, std::vector<TropicalElement>(static_cast<std::size_t>(B.n()),
                                                        TropicalElement::one(0)));
}

ClassicalSeed principal_seed(const ExchangeMatrix& B) {
    std::vector<TropicalElement> y;
    for (int i = 0; i < B.n(); ++i) {
        TropicalElement t = TropicalElement::one(static_cast<std::size_t>(B.n()));
        t.e[static_cast<std::size_t>(i)] = 1;
        y.push_back(std::move(t));
    }
    return initial_seed(B, std::move(y));
}

std::vector<RationalFunction> mutate_x(const ClassicalSeed& s, int k) {
    const int n = s.B.n();
    check_index(k, n);
    if (static_cast<int>(s.x.size()) != n || static_cast<int>(s.y.size()) != n)
        throw InvalidError("seed component size mismatch");
    RationalFunction plus(1), minus(1);
    for (int i = 1; i <= n; ++i) {
        long long b = s.B.at(i, k);
        if (b > 0) plus *= rf_pow(s.x[static_cast<std::size_t>(i - 1)], b);
        if (b < 0) minus *= rf_pow(s.x[static_cast<std::size_t>(i - 1)], -b);
    }
    const TropicalElement& yk = s.y[static_cast<std::size_t>(k - 1)];
    RationalFunction num = coefficient_monomial(yk) * plus + minus;
    RationalFunction den =
        coefficient_monomial(yk.oplus_one()) * s.x[static_cast<std::size_t>(k - 1)];
    std::vector<RationalFunction> out = s.x;
    out[static_cast<std::size_t>(k - 1)] = num / den;
    return out;
}

ClassicalSeed mutate_seed(const ClassicalSeed& s, int k) {
    return {mutate_x(s, k), mutate_y(s.y, s.B, k), mutate_B(s.B, k)};
}

ClassicalSeed apply_word(const ClassicalSeed& s, const std::vector<int>& word) {
    ClassicalSeed out = s;
    for (int k : word) out = mutate_seed(out, k);
    return out;
}

EnumerationResult enumerate_clusters(const ClassicalSeed& seed, int max_depth, long long cap,
                                     SearchOrder order) {
    if (max_depth < 0 || cap < 1) throw InvalidError("bad enumeration bounds");
    struct Info {
        int depth;
        bool expanded;
    };
    std::map<std::vector<std::string>, Info> seen;
    std::set<std::string> vars;
    std::deque<std::pair<ClassicalSeed, int>> frontier;

    auto discover = [&](const ClassicalSeed& s) {
        for (auto& v : s.x) vars.insert(canon(v));
    };
    seen.emplace(cluster_key(seed.x), Info{0, false});
    discover(seed);
    frontier.push_back({seed, 0});

    EnumerationResult res;
    bool truncated = false;
    while (!frontier.empty() && !truncated) {
        auto [s, pushed_depth] = order == SearchOrder::Breadth
                                     ? std::move(frontier.front())
                                     : std::move(frontier.back());
        if (order == SearchOrder::Breadth)
            frontier.pop_front();
        else
            frontier.pop_back();
        auto it = seen.find(cluster_key(s.x));
        if (it->second.expanded) continue;
        int depth = std::min(it->second.depth, pushed_depth);
        if (depth >= max_depth) continue; // stays unexpanded, blocks closure
        it->second.expanded = true;
        for (int k = 1; k <= s.B.n(); ++k) {
            ClassicalSeed child = mutate_seed(s, k);
            auto key = cluster_key(child.x);
            auto found = seen.find(key);
            if (found == seen.end()) {
                if (static_cast<long long>(seen.size()) >= cap) {
                    truncated = true;
                    break;
                }
                seen.emplace(std::move(key), Info{depth + 1, false});
                discover(child);
                res.depth = std::max(res.depth, depth + 1);
                frontier.push_back({std::move(child), depth + 1});
            } else if (!found->second.expanded && depth + 1 < found->second.depth) {
                // shallower rediscovery can rescue a depth-blocked cluster
                found->second.depth = depth + 1;
                frontier.push_back({std::move(child), depth + 1});
            }
        }
    }
    res.clusters = static_cast<long long>(seen.size());
    res.variables = static_cast<long long>(vars.size());
    res.closed = !truncated && std::all_of(seen.begin(), seen.end(), [](const auto& kv) {
                     return kv.second.expanded;
                 });
    return res;
}

LaurentReport laurent_check(const ClassicalSeed& seed, const std::vector<int>& word) {
    ClassicalSeed end = apply_word(seed, word);
    LaurentReport rep;
    const int n = end.B.n();
    for (auto& v : end.x) {
        Polynomial den = v.den_expanded();
        if (den.terms().size() > 1) {
            rep.laurent = false;
            rep.denominators.push_back({});
            continue;
        }
        std::vector<long long> exps;
        for (int i = 1; i <= n; ++i)
            exps.push_back(den.is_constant() ? 0
                                             : den.terms().front().mono.exponent(var_cluster_x(i)));
        rep.denominators.push_back(std::move(exps));
    }
    return rep;
}

} // namespace voac::cluster
