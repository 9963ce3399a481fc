#pragma once

#include <map>
#include <string>
#include <vector>

#include "qlg/alg/ratfunc.hpp"

namespace qlg::alg {

enum class Direction { PowersOfU, PowersOfUInverse, TwoSided };

std::string direction_name(Direction d);

/// Coefficients of u^lo .. u^hi of a series in u. Outside the window the
/// series is unknown, except that `tail_complete` promises all coefficients
/// on the non-truncated side are zero (below lo for PowersOfU, above hi for
/// PowersOfUInverse). Products need that promise.
class USeries {
public:
    USeries(Direction dir, int lo, int hi, bool tail_complete = true);

    Direction direction() const { return dir_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool tail_complete() const { return tail_complete_; }

    /// Throws DomainError outside [lo, hi].
    RatFunc coeff(int k) const;
    void set(int k, RatFunc c);
    const std::map<int, RatFunc>& nonzero() const { return c_; }

    /// Window intersection; mixing directions yields a TwoSided series.
    USeries operator+(const USeries& o) const;
    USeries operator-(const USeries& o) const;
    USeries scaled(const RatFunc& c) const;
    /// Multiply by u^k.
    USeries shifted(int k) const;
    /// Product of two one-directional series in the same direction; the
    /// window is cut to the range that is exact.
    USeries operator*(const USeries& o) const;

    std::string to_string() const;

private:
    Direction dir_;
    int lo_, hi_;
    bool tail_complete_;
    std::map<int, RatFunc> c_;
};

/// Expansion of f (a rational function of u) in non-negative powers of u or
/// of u^-1, returning the coefficients of u^lo .. u^hi.
USeries expand(const RatFunc& f, Direction dir, int lo, int hi);

/// Residue at u = pole (a u-free Laurent polynomial; 0 allowed). Poles of
/// order > 2 are rejected; a non-pole returns 0.
RatFunc residue(const RatFunc& f, const RatFunc& pole);
/// -(coefficient of u^-1 in the u^-1 expansion).
RatFunc residue_at_infinity(const RatFunc& f);

/// Distinct roots c of the u-dependent denominator factors that are linear
/// in u after clearing monomials, i.e. factors of the shape a*u^k*(u - c).
/// Other factors are reported through `unresolved`.
std::vector<LaurentPoly> linear_poles(const RatFunc& f, bool* unresolved = nullptr);

}  // namespace qlg::alg
