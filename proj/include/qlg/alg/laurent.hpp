#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlg/alg/exps.hpp"

namespace qlg::alg {

using Rational = mpq_class;

std::string rational_to_string(const Rational& r);

/// Multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so structural equality is mathematical equality.
class LaurentPoly {
public:
    struct Term {
        Exps e;
        Rational c;
    };

    LaurentPoly() = default;
    LaurentPoly(long c);  // NOLINT: implicit constants are convenient in formulas
    LaurentPoly(const Rational& c);  // NOLINT

    static LaurentPoly var(int v, int power = 1);
    static LaurentPoly monomial(const Exps& e, const Rational& c = 1);
    /// Accepts unsorted terms with repeats and zero coefficients.
    static LaurentPoly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].e.is_zero()); }
    bool is_monomial() const { return t_.size() == 1; }
    bool is_one() const { return t_.size() == 1 && t_[0].e.is_zero() && t_[0].c == 1; }
    /// Constant term value (0 if absent).
    Rational constant_term() const;

    const Term& leading() const { return t_.front(); }
    const Term& trailing() const { return t_.back(); }
    /// Componentwise minimum / maximum exponents over all terms (zero vector for 0).
    Exps min_exps() const;
    Exps max_exps() const;
    bool involves(int v) const;
    int max_deg(int v) const;
    int min_deg(int v) const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    LaurentPoly scaled(const Rational& c) const;
    LaurentPoly shifted(const Exps& e) const;  // multiply by a monomial x^e
    /// Negative powers only for monomials.
    LaurentPoly pow(int n) const;
    /// Inverse of a monomial; throws DomainError otherwise.
    LaurentPoly monomial_inverse() const;
    /// Adams operation: every exponent vector multiplied by m.
    LaurentPoly adams(int m) const;
    /// Replace variable v by a Laurent polynomial value. Negative powers of v
    /// require the value to be a monomial.
    LaurentPoly substitute(int v, const LaurentPoly& value) const;
    /// Coefficients of powers of variable v; the coefficients do not involve v.
    std::map<int, LaurentPoly> split_by(int v) const;

    Rational evaluate(const std::array<Rational, kNumVars>& point) const;

    /// Exact quotient if this = d * quotient in the Laurent ring.
    std::optional<LaurentPoly> try_divide(const LaurentPoly& d) const;

    std::string to_string() const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    /// Total order used to sort factor lists; not a ring order.
    static int compare(const LaurentPoly& a, const LaurentPoly& b);
    std::size_t hash() const;

private:
    std::vector<Term> t_;
};

}  // namespace qlg::alg
