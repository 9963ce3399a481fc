#include "qlg/alg/ratfunc.hpp"

#include <algorithm>
#include <cctype>

#include "qlg/error.hpp"

namespace qlg::alg {

namespace {

// f = unit * normalized, with normalized having leading term 1.
std::pair<LaurentPoly, LaurentPoly> split_unit(const LaurentPoly& f) {
    const auto& lt = f.leading();
    LaurentPoly unit = LaurentPoly::monomial(lt.e, lt.c);
    return {unit, f.shifted(-lt.e).scaled(1 / lt.c)};
}

bool may_divide(const LaurentPoly& n, const LaurentPoly& f) {
    if (n.size() < f.size()) return false;
    Exps nlo = n.min_exps(), nhi = n.max_exps(), flo = f.min_exps(), fhi = f.max_exps();
    for (int v = 0; v < kNumVars; ++v)
        if (fhi[v] - flo[v] > nhi[v] - nlo[v]) return false;
    return true;
}

using Factor = RatFunc::Factor;

// lcm of two sorted factor lists, plus the multiplicity gaps for each side.
std::vector<Factor> factor_lcm(const std::vector<Factor>& a, const std::vector<Factor>& b,
                               LaurentPoly& cof_a, LaurentPoly& cof_b) {
    std::vector<Factor> out;
    cof_a = LaurentPoly(1);
    cof_b = LaurentPoly(1);
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size()) c = 1;
        else if (j == b.size()) c = -1;
        else c = LaurentPoly::compare(a[i].first, b[j].first);
        if (c < 0) {
            out.push_back(a[i]);
            cof_b *= a[i].first.pow(a[i].second);
            ++i;
        } else if (c > 0) {
            out.push_back(b[j]);
            cof_a *= b[j].first.pow(b[j].second);
            ++j;
        } else {
            int m = std::max(a[i].second, b[j].second);
            out.emplace_back(a[i].first, m);
            if (m > a[i].second) cof_a *= a[i].first.pow(m - a[i].second);
            if (m > b[j].second) cof_b *= b[j].first.pow(m - b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

RatFunc::RatFunc(const LaurentPoly& num, const LaurentPoly& den) : num_(num) {
    add_factor(den, 1);
    cancel();
}

RatFunc RatFunc::from_factors(LaurentPoly num, const std::vector<Factor>& den) {
    RatFunc r(std::move(num));
    for (const auto& [f, m] : den) {
        if (m < 0) throw DomainError("negative factor multiplicity");
        if (m > 0) r.add_factor(f, m);
    }
    r.cancel();
    return r;
}

void RatFunc::add_factor(LaurentPoly f, int mult) {
    if (f.is_zero()) throw DomainError("division by the zero polynomial");
    if (f.is_monomial()) {
        num_ *= f.pow(-mult);
        return;
    }
    auto [unit, nf] = split_unit(f);
    num_ *= unit.pow(-mult);
    auto it = std::lower_bound(den_.begin(), den_.end(), nf,
                               [](const Factor& x, const LaurentPoly& y) { return LaurentPoly::compare(x.first, y) < 0; });
    if (it != den_.end() && it->first == nf) it->second += mult;
    else den_.insert(it, Factor{std::move(nf), mult});
}

void RatFunc::cancel() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto& [f, m] : den_) {
        while (m > 0 && may_divide(num_, f)) {
            auto q = num_.try_divide(f);
            if (!q) break;
            num_ = std::move(*q);
            --m;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const Factor& x) { return x.second == 0; }), den_.end());
}

LaurentPoly RatFunc::den() const {
    LaurentPoly d(1);
    for (const auto& [f, m] : den_) d *= f.pow(m);
    return d;
}

bool RatFunc::involves(int v) const {
    if (num_.involves(v)) return true;
    for (const auto& [f, m] : den_)
        if (f.involves(v)) return true;
    return false;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.num_.is_zero()) return *this;
    if (num_.is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        LaurentPoly ca, cb;
        den_ = factor_lcm(den_, o.den_, ca, cb);
        num_ = num_ * ca + o.num_ * cb;
    }
    cancel();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (num_.is_zero()) return *this;
    if (o.num_.is_zero()) return *this = RatFunc();
    num_ *= o.num_;
    if (o.den_.empty()) {
        if (!den_.empty()) cancel();
        return *this;
    }
    for (const auto& [f, m] : o.den_) add_factor(f, m);
    cancel();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::inverse() const {
    if (num_.is_zero()) throw DomainError("inverse of the zero rational function");
    RatFunc r(den());
    r.add_factor(num_, 1);
    r.cancel();
    return r;
}

RatFunc RatFunc::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    RatFunc r(num_.pow(n));
    for (const auto& [f, m] : den_) r.den_.emplace_back(f, m * n);
    if (n == 0) r.den_.clear();
    return r;
}

RatFunc RatFunc::substitute(int v, const LaurentPoly& value) const {
    RatFunc r(num_.substitute(v, value));
    for (const auto& [f, m] : den_) {
        LaurentPoly fv = f.involves(v) ? f.substitute(v, value) : f;
        if (fv.is_zero()) throw DomainError("substitution " + var_name(v) + "=" + value.to_string() + " hits a pole");
        r.add_factor(fv, m);
    }
    r.cancel();
    return r;
}

RatFunc RatFunc::adams(int m) const {
    RatFunc r(num_.adams(m));
    for (const auto& [f, k] : den_) r.add_factor(f.adams(m), k);
    r.cancel();
    return r;
}

Rational RatFunc::evaluate(const std::array<Rational, kNumVars>& point) const {
    Rational d = 1;
    for (const auto& [f, m] : den_) {
        Rational fv = f.evaluate(point);
        for (int i = 0; i < m; ++i) d *= fv;
    }
    if (sgn(d) == 0) throw DomainError("evaluation at a pole");
    return num_.evaluate(point) / d;
}

std::string RatFunc::to_string() const {
    if (den_.empty()) return num_.to_string();
    std::string s = "(" + num_.to_string() + ")/";
    bool first = true;
    for (const auto& [f, m] : den_) {
        if (!first) s += "*";
        first = false;
        s += "(" + f.to_string() + ")";
        if (m != 1) s += "^" + std::to_string(m);
    }
    return s;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    if (a.num_.is_zero() || b.num_.is_zero()) return a.num_.is_zero() && b.num_.is_zero();
    LaurentPoly ca, cb;
    factor_lcm(a.den_, b.den_, ca, cb);
    return a.num_ * ca == b.num_ * cb;
}

// ---------------------------------------------------------------------------
// parser

namespace {

// Products are kept as lists of powered factors until an addition forces
// expansion, so "1/((u-a)*(u-b))" keeps two separate denominator factors.
class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    RatFunc parse() {
        RatFunc r = collapse(expr());
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    using Prod = std::vector<std::pair<RatFunc, int>>;

    static RatFunc collapse(const Prod& p) {
        RatFunc r(1);
        for (const auto& [b, e] : p) r *= b.pow(e);
        return r;
    }
    static Prod single(RatFunc r) { return Prod{{std::move(r), 1}}; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("cannot parse \"" + std::string(s_) + "\" at offset " + std::to_string(pos_) + ": " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Prod expr() {
        Prod first = term();
        skip();
        if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) return first;
        RatFunc r = collapse(first);
        for (;;) {
            if (eat('+')) r += collapse(term());
            else if (eat('-')) r -= collapse(term());
            else return single(r);
        }
    }
    Prod term() {
        Prod r = unary();
        for (;;) {
            if (eat('*')) {
                for (auto& f : unary()) r.push_back(std::move(f));
            } else if (eat('/')) {
                Prod d = unary();
                for (auto& [b, e] : d) {
                    if (b.is_zero()) fail("division by zero");
                    r.emplace_back(std::move(b), -e);
                }
            } else {
                return r;
            }
        }
    }
    Prod unary() {
        if (eat('-')) {
            Prod r = unary();
            r.emplace_back(RatFunc(-1), 1);
            return r;
        }
        if (eat('+')) return unary();
        return power();
    }
    Prod power() {
        Prod base = atom();
        if (!eat('^')) return base;
        long e = exponent();
        for (auto& f : base) {
            if (e < 0 && f.first.is_zero()) fail("zero to a negative power");
            f.second *= static_cast<int>(e);
        }
        return base;
    }
    long exponent() {
        if (eat('(')) {
            long e = exponent();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        if (pos_ - start > 6) fail("exponent too large");
        long e = std::stol(std::string(s_.substr(start, pos_ - start)));
        return neg ? -e : e;
    }
    Prod atom() {
        skip();
        if (eat('(')) {
            Prod r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            mpz_class z(std::string(s_.substr(start, pos_ - start)));
            return single(RatFunc(Rational(z)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            int v = var_index(name);
            if (v < 0) fail("unknown variable '" + name + "'");
            return single(RatFunc::var(v));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text) { return Parser(text).parse(); }

LaurentPoly parse_laurent(std::string_view text) {
    RatFunc r = parse_ratfunc(text);
    if (!r.is_polynomial()) throw ParseError("not a Laurent polynomial: " + std::string(text));
    return r.num();
}

}  // namespace qlg::alg
