#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlg/alg/laurent.hpp"

namespace qlg::alg {

/// Rational function num / den with the denominator kept as a product of
/// normalized factors (leading term 1 * x^0, never a monomial).
///
/// Keeping the factor list lets sums share denominators through an lcm of
/// factor multisets instead of multiplying everything out. Equality is
/// decided by cross-multiplication; no gcd is ever computed. Factors are
/// cancelled against the numerator only by exact trial division.
class RatFunc {
public:
    using Factor = std::pair<LaurentPoly, int>;

    RatFunc() = default;
    RatFunc(long c) : num_(c) {}  // NOLINT
    RatFunc(const Rational& c) : num_(c) {}  // NOLINT
    RatFunc(LaurentPoly p) : num_(std::move(p)) {}  // NOLINT
    RatFunc(const LaurentPoly& num, const LaurentPoly& den);

    /// num / prod(f^m). Factors need not be normalized.
    static RatFunc from_factors(LaurentPoly num, const std::vector<Factor>& den);
    static RatFunc var(int v, int power = 1) { return RatFunc(LaurentPoly::var(v, power)); }

    const LaurentPoly& num() const { return num_; }
    const std::vector<Factor>& den_factors() const { return den_; }
    /// Expanded denominator.
    LaurentPoly den() const;
    bool is_polynomial() const { return den_.empty(); }
    bool is_zero() const { return num_.is_zero(); }
    bool involves(int v) const;

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

    RatFunc inverse() const;
    RatFunc pow(int n) const;
    /// Substitute a Laurent polynomial for variable v (numerator and every
    /// factor); a factor that evaluates to zero raises DomainError.
    RatFunc substitute(int v, const LaurentPoly& value) const;
    RatFunc adams(int m) const;

    Rational evaluate(const std::array<Rational, kNumVars>& point) const;

    /// Canonical text: "num" or "(num)/(f1)^2*(f2)".
    std::string to_string() const;

    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

private:
    void add_factor(LaurentPoly f, int mult);
    void cancel();

    LaurentPoly num_;
    std::vector<Factor> den_;
};

/// Parses expressions over q, t, zeta, chi1..chi8, u with + - * / ^ and
/// parentheses, e.g. "(u-q^2)/(q^2*u-1)". Throws ParseError.
RatFunc parse_ratfunc(std::string_view text);
LaurentPoly parse_laurent(std::string_view text);

}  // namespace qlg::alg
