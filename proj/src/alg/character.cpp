#include "qlg/alg/character.hpp"

#include "qlg/alg/series_ops.hpp"
#include "qlg/error.hpp"

namespace qlg::alg {

VirtualCharacter VirtualCharacter::monomial(const Exps& e, long mult) {
    VirtualCharacter c;
    c.add(e, mult);
    return c;
}

VirtualCharacter VirtualCharacter::from_laurent(const LaurentPoly& p) {
    VirtualCharacter c;
    for (const auto& t : p.terms()) {
        if (t.c.get_den() != 1 || !t.c.get_num().fits_slong_p())
            throw DomainError("character multiplicities must be machine integers");
        c.add(t.e, t.c.get_num().get_si());
    }
    return c;
}

long VirtualCharacter::rank() const {
    long r = 0;
    for (const auto& [e, n] : t_) r += n;
    return r;
}

void VirtualCharacter::add(const Exps& e, long mult) {
    if (mult == 0) return;
    auto& slot = t_[e];
    slot += mult;
    if (slot == 0) t_.erase(e);
}

VirtualCharacter VirtualCharacter::operator-() const { return scaled(-1); }

VirtualCharacter& VirtualCharacter::operator+=(const VirtualCharacter& o) {
    for (const auto& [e, n] : o.t_) add(e, n);
    return *this;
}

VirtualCharacter& VirtualCharacter::operator-=(const VirtualCharacter& o) {
    for (const auto& [e, n] : o.t_) add(e, -n);
    return *this;
}

VirtualCharacter operator*(const VirtualCharacter& a, const VirtualCharacter& b) {
    VirtualCharacter r;
    for (const auto& [x, m] : a.t_)
        for (const auto& [y, n] : b.t_) r.add(x + y, m * n);
    return r;
}

VirtualCharacter VirtualCharacter::shifted(const Exps& e) const {
    VirtualCharacter r;
    for (const auto& [x, n] : t_) r.t_[x + e] = n;
    return r;
}

VirtualCharacter VirtualCharacter::scaled(long k) const {
    VirtualCharacter r;
    if (k == 0) return r;
    for (const auto& [x, n] : t_) r.t_[x] = n * k;
    return r;
}

VirtualCharacter VirtualCharacter::adams(int m) const {
    if (m == 0) throw DomainError("Adams operation psi^0 is not defined here");
    VirtualCharacter r;
    for (const auto& [x, n] : t_) r.add(x.scaled(m), n);
    return r;
}

LaurentPoly VirtualCharacter::determinant() const {
    Exps e;
    for (const auto& [x, n] : t_) e = e + x.scaled(static_cast<int>(n));
    return LaurentPoly::monomial(e);
}

LaurentPoly VirtualCharacter::to_laurent() const {
    std::vector<LaurentPoly::Term> v;
    for (const auto& [x, n] : t_) v.push_back({x, Rational(n)});
    return LaurentPoly::from_terms(std::move(v));
}

std::vector<LaurentPoly> lambda_coefficients(const VirtualCharacter& E, int trunc) {
    if (trunc < 0) throw DomainError("negative truncation order");
    std::vector<LaurentPoly> a(trunc + 1);
    for (int m = 1; m <= trunc; ++m) a[m] = E.adams(m).to_laurent().scaled(Rational(-1, m));
    return series_exp(a, trunc, scale_laurent);
}

USeries lambda_series(const VirtualCharacter& E, Direction dir, int trunc) {
    auto c = lambda_coefficients(E, trunc);
    if (dir == Direction::PowersOfU) {
        USeries s(dir, 0, trunc, true);
        for (int n = 0; n <= trunc; ++n) s.set(n, RatFunc(c[n]));
        return s;
    }
    if (dir == Direction::PowersOfUInverse) {
        USeries s(dir, -trunc, 0, true);
        for (int n = 0; n <= trunc; ++n) s.set(-n, RatFunc(c[n]));
        return s;
    }
    throw DomainError("lambda_series needs a one-directional expansion");
}

}  // namespace qlg::alg
