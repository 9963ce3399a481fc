#include "qlg/alg/laurent.hpp"

#include <algorithm>
#include <utility>

#include "qlg/error.hpp"

namespace qlg::alg {

std::string rational_to_string(const Rational& r) { return r.get_str(); }

namespace {

using Term = LaurentPoly::Term;

bool term_desc(const Term& a, const Term& b) { return glex_cmp(a.e, b.e) > 0; }

// Sorts, merges repeated exponents and drops zeros.
std::vector<Term> canonicalize(std::vector<Term> v) {
    std::sort(v.begin(), v.end(), term_desc);
    std::vector<Term> out;
    out.reserve(v.size());
    for (auto& t : v) {
        if (!out.empty() && out.back().e == t.e) {
            out.back().c += t.c;
        } else {
            if (!out.empty() && sgn(out.back().c) == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && sgn(out.back().c) == 0) out.pop_back();
    return out;
}

// Merge two sorted term lists, b scaled by sign.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size()) c = -1;
        else if (j == b.size()) c = 1;
        else c = glex_cmp(a[i].e, b[j].e);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (negate_b) out.back().c = -out.back().c;
        } else {
            Rational s = negate_b ? Rational(a[i].c - b[j].c) : Rational(a[i].c + b[j].c);
            if (sgn(s) != 0) out.push_back(Term{a[i].e, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

LaurentPoly::LaurentPoly(long c) {
    if (c != 0) t_.push_back(Term{Exps{}, Rational(c)});
}

LaurentPoly::LaurentPoly(const Rational& c) {
    if (sgn(c) != 0) t_.push_back(Term{Exps{}, c});
}

LaurentPoly LaurentPoly::var(int v, int power) { return monomial(var_exps(v, power)); }

LaurentPoly LaurentPoly::monomial(const Exps& e, const Rational& c) {
    LaurentPoly p;
    if (sgn(c) != 0) p.t_.push_back(Term{e, c});
    return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
    LaurentPoly p;
    p.t_ = canonicalize(std::move(terms));
    return p;
}

Rational LaurentPoly::constant_term() const {
    for (const auto& t : t_)
        if (t.e.is_zero()) return t.c;
    return 0;
}

Exps LaurentPoly::min_exps() const {
    if (t_.empty()) return {};
    Exps m = t_[0].e;
    for (const auto& t : t_)
        for (int v = 0; v < kNumVars; ++v) m[v] = std::min(m[v], t.e[v]);
    return m;
}

Exps LaurentPoly::max_exps() const {
    if (t_.empty()) return {};
    Exps m = t_[0].e;
    for (const auto& t : t_)
        for (int v = 0; v < kNumVars; ++v) m[v] = std::max(m[v], t.e[v]);
    return m;
}

bool LaurentPoly::involves(int v) const {
    for (const auto& t : t_)
        if (t.e[v] != 0) return true;
    return false;
}

int LaurentPoly::max_deg(int v) const { return max_exps()[v]; }
int LaurentPoly::min_deg(int v) const { return min_exps()[v]; }

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.t_.empty()) return *this;
    if (t_.empty()) return *this = o;
    t_ = merge(t_, o.t_, false);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    if (o.t_.empty()) return *this;
    t_ = merge(t_, o.t_, true);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.t_.empty() || b.t_.empty()) return {};
    // Shifting by a monomial preserves graded-lex order.
    if (a.t_.size() == 1) return b.shifted(a.t_[0].e).scaled(a.t_[0].c);
    if (b.t_.size() == 1) return a.shifted(b.t_[0].e).scaled(b.t_[0].c);
    std::vector<Term> prod;
    prod.reserve(a.t_.size() * b.t_.size());
    for (const auto& x : a.t_)
        for (const auto& y : b.t_) prod.push_back(Term{x.e + y.e, x.c * y.c});
    LaurentPoly r;
    r.t_ = canonicalize(std::move(prod));
    return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
    if (sgn(c) == 0) return {};
    LaurentPoly r = *this;
    if (c != 1)
        for (auto& t : r.t_) t.c *= c;
    return r;
}

LaurentPoly LaurentPoly::shifted(const Exps& e) const {
    LaurentPoly r = *this;
    if (!e.is_zero())
        for (auto& t : r.t_) t.e = t.e + e;
    return r;
}

LaurentPoly LaurentPoly::pow(int n) const {
    if (n < 0) return monomial_inverse().pow(-n);
    if (t_.size() == 1) {
        Rational c = 1;
        for (int i = 0; i < n; ++i) c *= t_[0].c;
        return monomial(t_[0].e.scaled(n), c);
    }
    LaurentPoly result(1), base = *this;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

LaurentPoly LaurentPoly::monomial_inverse() const {
    if (t_.size() != 1) throw DomainError("inverse of a non-monomial Laurent polynomial: " + to_string());
    return monomial(-t_[0].e, 1 / t_[0].c);
}

LaurentPoly LaurentPoly::adams(int m) const {
    std::vector<Term> v = t_;
    for (auto& t : v) t.e = t.e.scaled(m);
    return from_terms(std::move(v));
}

LaurentPoly LaurentPoly::substitute(int v, const LaurentPoly& value) const {
    auto parts = split_by(v);
    if (parts.empty()) return {};
    if (value.is_monomial()) {
        LaurentPoly r;
        for (auto& [k, c] : parts) r += c * value.pow(k);
        return r;
    }
    if (parts.begin()->first < 0)
        throw DomainError("substituting a non-monomial for " + var_name(v) + " with negative powers present");
    // Horner from the top degree down.
    int top = parts.rbegin()->first;
    LaurentPoly r;
    for (int k = top; k >= 0; --k) {
        r *= value;
        auto it = parts.find(k);
        if (it != parts.end()) r += it->second;
    }
    return r;
}

std::map<int, LaurentPoly> LaurentPoly::split_by(int v) const {
    std::map<int, std::vector<Term>> buckets;
    for (const auto& t : t_) {
        Term s = t;
        s.e[v] = 0;
        buckets[t.e[v]].push_back(std::move(s));
    }
    std::map<int, LaurentPoly> out;
    for (auto& [k, terms] : buckets) {
        LaurentPoly p;
        // every term in a bucket loses the same exponent, so order survives
        p.t_ = std::move(terms);
        out.emplace(k, std::move(p));
    }
    return out;
}

Rational LaurentPoly::evaluate(const std::array<Rational, kNumVars>& point) const {
    Rational s = 0;
    for (const auto& t : t_) {
        Rational m = t.c;
        for (int v = 0; v < kNumVars; ++v) {
            int e = t.e[v];
            if (e == 0) continue;
            if (sgn(point[v]) == 0) throw DomainError("evaluation at zero of a negative or positive power of " + var_name(v));
            mpq_class p;
            mpz_pow_ui(p.get_num_mpz_t(), point[v].get_num_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
            mpz_pow_ui(p.get_den_mpz_t(), point[v].get_den_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
            p.canonicalize();
            if (e < 0) p = 1 / p;
            m *= p;
        }
        s += m;
    }
    return s;
}

std::optional<LaurentPoly> LaurentPoly::try_divide(const LaurentPoly& d) const {
    if (d.is_zero()) throw DomainError("division by the zero polynomial");
    if (is_zero()) return LaurentPoly{};
    if (d.is_monomial()) return *this * d.monomial_inverse();
    // Clear monomial content of both, then run ordinary division in the
    // polynomial ring; d has no monomial factor so the quotient is polynomial.
    Exps ma = min_exps(), md = d.min_exps();
    LaurentPoly r = shifted(-ma);
    LaurentPoly b = d.shifted(-md);
    const Term& lb = b.t_.front();
    std::vector<Term> quot;
    while (!r.is_zero()) {
        const Term& lr = r.t_.front();
        Exps qe = lr.e - lb.e;
        for (int v = 0; v < kNumVars; ++v)
            if (qe[v] < 0) return std::nullopt;
        Rational qc = lr.c / lb.c;
        quot.push_back(Term{qe, qc});
        r -= b.shifted(qe).scaled(qc);
    }
    LaurentPoly q;
    q.t_ = canonicalize(std::move(quot));
    return q.shifted(ma - md);
}

std::string LaurentPoly::to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : t_) {
        Rational c = t.c;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (neg) s += '-';
        else if (!first) s += '+';
        first = false;
        std::string m = exps_to_string(t.e);
        if (m.empty()) {
            s += c.get_str();
        } else {
            if (c != 1) s += c.get_str() + "*";
            s += m;
        }
    }
    return s;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
        if (a.t_[i].e != b.t_[i].e || a.t_[i].c != b.t_[i].c) return false;
    return true;
}

int LaurentPoly::compare(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.t_.size() != b.t_.size()) return a.t_.size() < b.t_.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.t_.size(); ++i) {
        int c = glex_cmp(a.t_[i].e, b.t_[i].e);
        if (c) return c;
        c = cmp(a.t_[i].c, b.t_[i].c);
        if (c) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::size_t LaurentPoly::hash() const {
    std::size_t h = t_.size();
    ExpsHash eh;
    for (const auto& t : t_) {
        h = h * 1000003u ^ eh(t.e);
        h = h * 1000003u ^ std::hash<std::string>{}(t.c.get_str());
    }
    return h;
}

}  // namespace qlg::alg
