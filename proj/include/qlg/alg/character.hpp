#pragma once

#include <map>
#include <string>

#include "qlg/alg/laurent.hpp"
#include "qlg/alg/useries.hpp"

namespace qlg::alg {

/// Finite Z-linear combination of monomials (torus characters).
class VirtualCharacter {
public:
    VirtualCharacter() = default;
    static VirtualCharacter monomial(const Exps& e, long mult = 1);
    static VirtualCharacter from_laurent(const LaurentPoly& p);  // integer coefficients only

    const std::map<Exps, long, GlexLess>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    long rank() const;
    void add(const Exps& e, long mult);

    VirtualCharacter operator-() const;
    VirtualCharacter& operator+=(const VirtualCharacter& o);
    VirtualCharacter& operator-=(const VirtualCharacter& o);
    friend VirtualCharacter operator+(VirtualCharacter a, const VirtualCharacter& b) { return a += b; }
    friend VirtualCharacter operator-(VirtualCharacter a, const VirtualCharacter& b) { return a -= b; }
    /// Tensor product.
    friend VirtualCharacter operator*(const VirtualCharacter& a, const VirtualCharacter& b);
    VirtualCharacter shifted(const Exps& e) const;
    VirtualCharacter scaled(long k) const;

    VirtualCharacter adams(int m) const;
    VirtualCharacter dual() const { return adams(-1); }
    /// Product of all monomials with multiplicity (the determinant line).
    LaurentPoly determinant() const;
    LaurentPoly to_laurent() const;
    std::string to_string() const { return to_laurent().to_string(); }

    friend bool operator==(const VirtualCharacter& a, const VirtualCharacter& b) { return a.t_ == b.t_; }

private:
    std::map<Exps, long, GlexLess> t_;
};

/// Lambda_{-x}(E) = prod_e (1 - x e)^{n_e} to order trunc, computed from
/// exp(-sum_m psi^m(E) x^m / m). x = u for PowersOfU (coefficients of
/// u^0..u^trunc), x = u^-1 for PowersOfUInverse (u^-trunc..u^0).
USeries lambda_series(const VirtualCharacter& E, Direction dir, int trunc);

/// Same series as plain coefficient vector [x^0 .. x^trunc].
std::vector<LaurentPoly> lambda_coefficients(const VirtualCharacter& E, int trunc);

}  // namespace qlg::alg
