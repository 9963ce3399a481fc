#include "qlg/alg/useries.hpp"

#include <algorithm>

#include "qlg/alg/upoly.hpp"
#include "qlg/error.hpp"

namespace qlg::alg {

std::string direction_name(Direction d) {
    switch (d) {
        case Direction::PowersOfU: return "powers-of-u";
        case Direction::PowersOfUInverse: return "powers-of-u-inverse";
        case Direction::TwoSided: return "two-sided";
    }
    return "?";
}

USeries::USeries(Direction dir, int lo, int hi, bool tail_complete)
    : dir_(dir), lo_(lo), hi_(hi), tail_complete_(tail_complete) {
    if (dir == Direction::TwoSided) tail_complete_ = false;
}

RatFunc USeries::coeff(int k) const {
    if (k < lo_ || k > hi_)
        throw DomainError("u^" + std::to_string(k) + " outside the truncation window [" + std::to_string(lo_) + ", " +
                          std::to_string(hi_) + "]");
    auto it = c_.find(k);
    return it == c_.end() ? RatFunc() : it->second;
}

void USeries::set(int k, RatFunc c) {
    if (k < lo_ || k > hi_) throw DomainError("coefficient outside the truncation window");
    if (c.is_zero()) c_.erase(k);
    else c_[k] = std::move(c);
}

USeries USeries::operator+(const USeries& o) const {
    Direction d = dir_ == o.dir_ ? dir_ : Direction::TwoSided;
    USeries r(d, std::max(lo_, o.lo_), std::min(hi_, o.hi_), tail_complete_ && o.tail_complete_);
    for (int k = r.lo_; k <= r.hi_; ++k) r.set(k, coeff(k) + o.coeff(k));
    return r;
}

USeries USeries::operator-(const USeries& o) const { return *this + o.scaled(RatFunc(-1)); }

USeries USeries::scaled(const RatFunc& c) const {
    USeries r = *this;
    r.c_.clear();
    for (const auto& [k, v] : c_) r.set(k, v * c);
    return r;
}

USeries USeries::shifted(int k) const {
    USeries r(dir_, lo_ + k, hi_ + k, tail_complete_);
    for (const auto& [e, v] : c_) r.c_[e + k] = v;
    return r;
}

USeries USeries::operator*(const USeries& o) const {
    if (dir_ != o.dir_ || dir_ == Direction::TwoSided)
        throw DomainError("series products need two one-directional series in the same direction");
    if (!tail_complete_ || !o.tail_complete_) throw DomainError("series product of a window without a complete tail");
    int lo, hi;
    if (dir_ == Direction::PowersOfU) {
        lo = lo_ + o.lo_;
        hi = std::min(hi_ + o.lo_, o.hi_ + lo_);
    } else {
        hi = hi_ + o.hi_;
        lo = std::max(lo_ + o.hi_, o.lo_ + hi_);
    }
    USeries r(dir_, lo, hi, true);
    std::map<int, RatFunc> acc;
    for (const auto& [i, a] : c_)
        for (const auto& [j, b] : o.c_) {
            int k = i + j;
            if (k < lo || k > hi) continue;
            acc[k] += a * b;
        }
    for (auto& [k, v] : acc) r.set(k, std::move(v));
    return r;
}

std::string USeries::to_string() const {
    std::string s;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (!s.empty()) s += " + ";
        s += "(" + it->second.to_string() + ")*u^" + std::to_string(it->first);
    }
    return s.empty() ? "0" : s;
}

namespace {

struct Split {
    UPoly num;         // numerator in u
    UPoly den;         // product of u-dependent denominator factors
    RatFunc scalar;    // 1 / product of u-free factors
};

Split split_u(const RatFunc& f) {
    Split s;
    s.num = UPoly::from(f.num());
    LaurentPoly d(1);
    std::vector<RatFunc::Factor> ufree;
    for (const auto& [fac, m] : f.den_factors()) {
        if (fac.involves(U)) d *= fac.pow(m);
        else ufree.emplace_back(fac, m);
    }
    s.den = UPoly::from(d);
    s.scalar = RatFunc::from_factors(LaurentPoly(1), ufree);
    return s;
}

RatFunc as_rat(const LaurentPoly& p) { return RatFunc(p); }

}  // namespace

USeries expand(const RatFunc& f, Direction dir, int lo, int hi) {
    if (dir == Direction::TwoSided) throw DomainError("expand needs a one-directional expansion");
    if (lo > hi) throw DomainError("empty expansion window");
    Split s = split_u(f);
    if (s.num.is_zero()) return USeries(dir, lo, hi, true);

    const bool inv = dir == Direction::PowersOfUInverse;
    const UPoly& D = s.den;
    const int span = D.degree() - D.low;
    // pivot: the extreme denominator coefficient in the expansion direction
    const int pivot_pow = inv ? D.degree() : D.low;
    RatFunc pivot_inv = RatFunc(1) / as_rat(D.coeff(pivot_pow));
    std::vector<RatFunc> e(span + 1);
    for (int t = 1; t <= span; ++t) e[t] = as_rat(D.coeff(inv ? pivot_pow - t : pivot_pow + t)) * pivot_inv;

    // f = scalar * pivot^-1 * N(u) * u^-pivot_pow * B, B = 1 / (1 + sum e_t y^t)
    // with y = u^-1 (inverse) or y = u.
    const int nlo = s.num.low, nhi = s.num.degree();
    int smax = inv ? nhi - pivot_pow - lo : hi - nlo + pivot_pow;
    bool complete = inv ? hi >= nhi - pivot_pow : lo <= nlo - pivot_pow;
    USeries out(dir, lo, hi, complete);
    if (smax < 0) return out;
    std::vector<RatFunc> b(smax + 1);
    b[0] = RatFunc(1);
    for (int n = 1; n <= smax; ++n) {
        RatFunc acc;
        for (int t = 1; t <= std::min(n, span); ++t)
            if (!e[t].is_zero() && !b[n - t].is_zero()) acc -= e[t] * b[n - t];
        b[n] = std::move(acc);
    }
    RatFunc pre = s.scalar * pivot_inv;
    for (int k = lo; k <= hi; ++k) {
        RatFunc acc;
        for (int a = nlo; a <= nhi; ++a) {
            const LaurentPoly& na = s.num.coeff(a);
            if (na.is_zero()) continue;
            int sidx = inv ? a - pivot_pow - k : k - a + pivot_pow;
            if (sidx < 0 || sidx > smax || b[sidx].is_zero()) continue;
            acc += b[sidx] * as_rat(na);
        }
        if (!acc.is_zero()) out.set(k, acc * pre);
    }
    return out;
}

RatFunc residue_at_infinity(const RatFunc& f) { return -expand(f, Direction::PowersOfUInverse, -1, -1).coeff(-1); }

RatFunc residue(const RatFunc& f, const RatFunc& pole) {
    if (!pole.is_polynomial() || pole.involves(U)) throw DomainError("pole must be a u-free Laurent polynomial");
    const LaurentPoly& c = pole.num();
    if (c.is_zero()) return expand(f, Direction::PowersOfU, -1, -1).coeff(-1);

    UPoly num = UPoly::from(f.num());
    struct G {
        UPoly g;
        int mult;
    };
    std::vector<G> gs;
    std::vector<RatFunc::Factor> ufree;
    int order = 0;
    for (const auto& [fac, m] : f.den_factors()) {
        if (!fac.involves(U)) {
            ufree.emplace_back(fac, m);
            continue;
        }
        UPoly g = UPoly::from(fac), qt;
        int k = 0;
        while (g.divide_linear(c, qt)) {
            g = qt;
            ++k;
        }
        order += k * m;
        gs.push_back(G{g, m});
    }
    UPoly qt;
    while (order > 0 && num.divide_linear(c, qt)) {
        num = qt;
        --order;
    }
    if (order == 0) return RatFunc();
    if (order > 2) throw DomainError("pole of order " + std::to_string(order) + " at u=" + c.to_string());

    std::vector<RatFunc::Factor> dfac = ufree;
    for (const auto& g : gs) dfac.emplace_back(g.g.eval(c), g.mult);
    RatFunc d1_inv = RatFunc::from_factors(LaurentPoly(1), dfac);
    if (order == 1) return d1_inv * RatFunc(num.eval(c));
    // (N/D1)' = (N' - N * sum m g'/g) / D1
    RatFunc logd;
    for (const auto& g : gs) logd += RatFunc(g.g.derivative().eval(c).scaled(g.mult)) / RatFunc(g.g.eval(c));
    return d1_inv * (RatFunc(num.derivative().eval(c)) - RatFunc(num.eval(c)) * logd);
}

std::vector<LaurentPoly> linear_poles(const RatFunc& f, bool* unresolved) {
    std::vector<LaurentPoly> out;
    if (unresolved) *unresolved = false;
    int den_low = 0;
    for (const auto& [fac, m] : f.den_factors()) {
        if (!fac.involves(U)) continue;
        UPoly g = UPoly::from(fac);
        den_low += g.low * m;
        if (g.c.size() == 2 && g.c[1].is_monomial()) {
            LaurentPoly root = -(g.c[0] * g.c[1].monomial_inverse());
            if (std::find(out.begin(), out.end(), root) == out.end()) out.push_back(root);
        } else if (unresolved) {
            *unresolved = true;
        }
    }
    if (!f.num().is_zero() && UPoly::from(f.num()).low - den_low < 0) out.push_back(LaurentPoly());
    std::sort(out.begin(), out.end(), [](const LaurentPoly& a, const LaurentPoly& b) { return LaurentPoly::compare(a, b) < 0; });
    return out;
}

}  // namespace qlg::alg
