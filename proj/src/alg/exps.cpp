#include "qlg/alg/exps.hpp"

namespace qlg::alg {

std::string var_name(int v) {
    switch (v) {
        case Q: return "q";
        case T: return "t";
        case Zeta: return "zeta";
        case U: return "u";
        default: return "chi" + std::to_string(v - Chi1 + 1);
    }
}

int var_index(std::string_view name) {
    if (name == "q") return Q;
    if (name == "t") return T;
    if (name == "zeta") return Zeta;
    if (name == "u") return U;
    if (name.size() == 4 && name.substr(0, 3) == "chi" && name[3] >= '1' && name[3] <= '8')
        return Chi1 + (name[3] - '1');
    return -1;
}

std::string exps_to_string(const Exps& x) {
    std::string s;
    for (int v = 0; v < kNumVars; ++v) {
        if (x[v] == 0) continue;
        if (!s.empty()) s += '*';
        s += var_name(v);
        if (x[v] != 1) s += "^" + std::to_string(x[v]);
    }
    return s;
}

}  // namespace qlg::alg
