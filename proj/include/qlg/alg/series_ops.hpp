#pragma once

#include <vector>

#include "qlg/alg/laurent.hpp"

namespace qlg::alg {

// Formal exp/log of a power series in one auxiliary variable x, given as a
// coefficient vector a[0..N]. Works for any coefficient ring with +, * and
// scaled(Rational) (LaurentPoly, RatFunc via a wrapper).

/// exp(sum_{m>=1} a[m] x^m), a[0] ignored; uses n e_n = sum_k k a_k e_{n-k}.
template <class C, class ScaleFn>
std::vector<C> series_exp(const std::vector<C>& a, int n_max, ScaleFn scale) {
    std::vector<C> e(n_max + 1);
    e[0] = C(1);
    for (int n = 1; n <= n_max; ++n) {
        C s{};
        for (int k = 1; k <= n && k < static_cast<int>(a.size()); ++k) s += scale(a[k], Rational(k)) * e[n - k];
        e[n] = scale(s, Rational(1, n));
    }
    return e;
}

/// log of a series with e[0] = 1: a_n = e_n - (1/n) sum_{k<n} k a_k e_{n-k}.
template <class C, class ScaleFn>
std::vector<C> series_log(const std::vector<C>& e, int n_max, ScaleFn scale) {
    std::vector<C> a(n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
        C s{};
        for (int k = 1; k < n; ++k) s += scale(a[k], Rational(k)) * e[n - k];
        a[n] = e[n] - scale(s, Rational(1, n));
    }
    return a;
}

inline LaurentPoly scale_laurent(const LaurentPoly& p, const Rational& c) { return p.scaled(c); }

}  // namespace qlg::alg
