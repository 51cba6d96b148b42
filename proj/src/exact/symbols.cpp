#include "exact/symbols.hpp"

#include "exact/errors.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace voac::exact {

namespace {

struct Table {
    std::vector<std::string> names;
    std::map<std::string, VarId> ids;
    std::mutex mu;

    Table() {
        // deterministic preseed; ad-hoc names intern after this block
        add("x");
        for (int k = 1; k <= 8; ++k) add(y_name(k));
        for (int a = 1; a <= 4; ++a) {
            add(w_name(a));
            add(w_name(-a));
        }
        for (int a = 1; a <= 4; ++a) {
            add(fix_name(a));
            add(fix_name(-a));
        }
        for (int a = 1; a <= 4; ++a) add(mult_name(a));
        add("q");
        add("z");
        add("t");
        add("alpha");
        for (int i = 1; i <= 8; ++i) add(cluster_x_name(i));
        for (int i = 1; i <= 8; ++i) add(coeff_u_name(i));
    }

    VarId add(const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        VarId id = static_cast<VarId>(names.size());
        names.push_back(name);
        ids.emplace(name, id);
        return id;
    }
};

Table& table() {
    static Table t;
    return t;
}

} // namespace

VarId var(const std::string& name) {
    if (name.empty()) throw InvalidError("empty variable name");
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    return t.add(name);
}

const std::string& var_name(VarId id) {
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    if (id < 0 || static_cast<std::size_t>(id) >= t.names.size())
        throw InvalidError("unknown variable id " + std::to_string(id));
    return t.names[static_cast<std::size_t>(id)];
}

bool var_known(const std::string& name) {
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    return t.ids.count(name) > 0;
}

std::string y_name(int k) { return "y" + std::to_string(k); }
std::string w_name(int a) { return "w_" + std::to_string(a); }
std::string fix_name(int a) { return "W_" + std::to_string(a); }
std::string mult_name(int a) { return "q_" + std::to_string(a); }
std::string cluster_x_name(int i) { return "x" + std::to_string(i); }
std::string coeff_u_name(int i) { return "u" + std::to_string(i); }

VarId var_x() { return var("x"); }
VarId var_y(int k) { return var(y_name(k)); }
VarId var_w(int a) { return var(w_name(a)); }
VarId var_fix(int a) { return var(fix_name(a)); }
VarId var_mult(int a) { return var(mult_name(a)); }
VarId var_q() { return var("q"); }
VarId var_alpha() { return var("alpha"); }

} // namespace voac::exact
