#pragma once

#include "exact/rational.hpp"

#include <json.hpp>

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace voac::voa {

using exact::Rational;

// a(-p1)...a(-pk)|0> encoded as the partition [p1 >= p2 >= ... >= pk > 0]
using Partition = std::vector<int>;

int partition_weight(const Partition& p);
// all partitions of n, reverse-lexicographic: [n] first, [1,...,1] last
std::vector<Partition> partitions_of(int n);

// Exact finite linear combination of Fock basis vectors.
class FockState {
public:
    FockState() = default; // zero
    static FockState vacuum();
    static FockState basis(Partition p);

    const std::map<Partition, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const Partition& p) const;

    FockState operator-() const;
    FockState& operator+=(const FockState& o);
    FockState& operator-=(const FockState& o);
    FockState scaled(const Rational& c) const;
    bool operator==(const FockState& o) const { return terms_ == o.terms_; }

    bool is_homogeneous() const;
    int weight() const; // requires homogeneous; zero state has weight 0
    int max_weight() const;
    std::map<int, FockState> graded_components() const;

    FockState created(int n) const;     // apply a(-n), n >= 1
    FockState annihilated(int n) const; // apply a(n), n >= 1
    int max_part() const;

    std::string str() const;

private:
    void insert(const Partition& p, const Rational& c);
    std::map<Partition, Rational> terms_;
};

FockState operator+(FockState a, const FockState& b);
FockState operator-(FockState a, const FockState& b);

// "a(-2)a(-1)|0>", "omega", "|0>", with optional rational prefixes and +/-:
// "1/2 a(-1)a(-1)|0> - 2 |0>"
FockState parse_state(const std::string& text);

nlohmann::json state_json(const FockState& s);
FockState state_from_json(const nlohmann::json& j);

inline std::ostream& operator<<(std::ostream& os, const FockState& s) { return os << s.str(); }

} // namespace voac::voa
