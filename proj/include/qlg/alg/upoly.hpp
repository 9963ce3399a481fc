#pragma once

#include <vector>

#include "qlg/alg/laurent.hpp"

namespace qlg::alg {

/// A Laurent polynomial viewed as sum_j c[j] * u^(low + j) with u-free
/// coefficients.
struct UPoly {
    int low = 0;
    std::vector<LaurentPoly> c;

    static UPoly from(const LaurentPoly& p, int var = U);
    LaurentPoly to_laurent(int var = U) const;

    bool is_zero() const { return c.empty(); }
    int degree() const { return low + static_cast<int>(c.size()) - 1; }
    const LaurentPoly& coeff(int power) const;

    /// Value at u = x. Negative powers need x to be a monomial.
    LaurentPoly eval(const LaurentPoly& x) const;
    UPoly derivative() const;
    /// Exact division by (u - x); false when the remainder is nonzero.
    bool divide_linear(const LaurentPoly& x, UPoly& quotient) const;

    void trim();
};

}  // namespace qlg::alg
