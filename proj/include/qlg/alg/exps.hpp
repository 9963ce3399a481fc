#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace qlg::alg {

// Fixed variable order. Graded-lex comparisons walk this order, so q is the
// most significant variable and u the least.
enum Var : int {
    Q = 0,
    T = 1,
    Zeta = 2,
    Chi1 = 3,  // chi1..chi8 occupy 3..10
    U = 11,
};

inline constexpr int kNumVars = 12;
inline constexpr int kMaxChi = 8;

inline constexpr Var chi(int s) { return static_cast<Var>(Chi1 + s - 1); }

std::string var_name(int v);
/// Returns -1 for unknown names.
int var_index(std::string_view name);

struct Exps {
    std::array<int16_t, kNumVars> e{};

    int16_t& operator[](int v) { return e[v]; }
    int16_t operator[](int v) const { return e[v]; }

    int total() const {
        int s = 0;
        for (auto x : e) s += x;
        return s;
    }
    bool is_zero() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }

    friend Exps operator+(const Exps& a, const Exps& b) {
        Exps r;
        for (int i = 0; i < kNumVars; ++i) r.e[i] = static_cast<int16_t>(a.e[i] + b.e[i]);
        return r;
    }
    friend Exps operator-(const Exps& a, const Exps& b) {
        Exps r;
        for (int i = 0; i < kNumVars; ++i) r.e[i] = static_cast<int16_t>(a.e[i] - b.e[i]);
        return r;
    }
    Exps operator-() const {
        Exps r;
        for (int i = 0; i < kNumVars; ++i) r.e[i] = static_cast<int16_t>(-e[i]);
        return r;
    }
    Exps scaled(int m) const {
        Exps r;
        for (int i = 0; i < kNumVars; ++i) r.e[i] = static_cast<int16_t>(e[i] * m);
        return r;
    }

    friend bool operator==(const Exps& a, const Exps& b) { return a.e == b.e; }
    friend bool operator!=(const Exps& a, const Exps& b) { return a.e != b.e; }
};

/// Graded-lex: total degree first, then lexicographic in variable order.
/// Returns <0, 0, >0.
inline int glex_cmp(const Exps& a, const Exps& b) {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb ? -1 : 1;
    for (int i = 0; i < kNumVars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
    return 0;
}

struct GlexLess {
    bool operator()(const Exps& a, const Exps& b) const { return glex_cmp(a, b) < 0; }
};

struct ExpsHash {
    std::size_t operator()(const Exps& x) const {
        std::size_t h = 1469598103934665603ull;
        for (auto v : x.e) {
            h ^= static_cast<uint16_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

inline Exps var_exps(int v, int power = 1) {
    Exps r;
    r.e[v] = static_cast<int16_t>(power);
    return r;
}

/// Renders a monomial such as "q^-2*chi1*u^3"; the empty monomial is "".
std::string exps_to_string(const Exps& x);

}  // namespace qlg::alg
