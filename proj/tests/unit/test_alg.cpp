#include <random>

#include "doctest.h"
#include "qlg/alg/character.hpp"
#include "qlg/alg/ratfunc.hpp"
#include "qlg/alg/upoly.hpp"
#include "qlg/alg/useries.hpp"
#include "qlg/error.hpp"
#include "seed.hpp"

using namespace qlg::alg;

namespace {

RatFunc R(const char* s) { return parse_ratfunc(s); }
LaurentPoly L(const char* s) { return parse_laurent(s); }

LaurentPoly random_poly(std::mt19937_64& rng, int max_terms) {
    std::uniform_int_distribution<int> nterms(0, max_terms), ex(-2, 2), coef(-3, 3);
    std::vector<LaurentPoly::Term> v;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Exps e;
        e[Q] = static_cast<int16_t>(ex(rng));
        e[Chi1] = static_cast<int16_t>(ex(rng));
        e[U] = static_cast<int16_t>(ex(rng));
        v.push_back({e, Rational(coef(rng))});
    }
    return LaurentPoly::from_terms(v);
}

std::array<Rational, kNumVars> random_point(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(1, 9), den(1, 5), sign(0, 1);
    std::array<Rational, kNumVars> p;
    for (auto& x : p) {
        x = Rational(num(rng) * (sign(rng) ? 1 : -1), den(rng));
        x.canonicalize();
    }
    return p;
}

}  // namespace

TEST_CASE("laurent: parse and print round trip") {
    auto p = L("3*q^2*chi1 - q^-1 + 1/2*u");
    CHECK(p.to_string() == "3*q^2*chi1+1/2*u-q^-1");
    CHECK(parse_laurent(p.to_string()) == p);
    CHECK(L("(q+1)^2") == L("q^2+2*q+1"));
    CHECK(L("0").is_zero());
    CHECK_THROWS_AS(parse_laurent("1/(q+1)"), qlg::ParseError);
    CHECK_THROWS_AS(parse_ratfunc("q+"), qlg::ParseError);
    CHECK_THROWS_AS(parse_ratfunc("w"), qlg::ParseError);
}

TEST_CASE("laurent: ring axioms on random triples") {
    std::mt19937_64 rng(test_seed());
    for (int it = 0; it < 1000; ++it) {
        auto a = random_poly(rng, 4), b = random_poly(rng, 4), c = random_poly(rng, 4);
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a - a == LaurentPoly());
        if (it % 10 == 0) {
            auto pt = random_point(rng);
            REQUIRE((a * b + c).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt) + c.evaluate(pt));
        }
    }
}

TEST_CASE("laurent: exact division recovers factors") {
    std::mt19937_64 rng(test_seed() + 1);
    for (int it = 0; it < 200; ++it) {
        auto a = random_poly(rng, 4), b = random_poly(rng, 3);
        if (b.is_zero()) continue;
        auto q = (a * b).try_divide(b);
        REQUIRE(q.has_value());
        REQUIRE(*q == a);
    }
    CHECK_FALSE(L("q^2+1").try_divide(L("q+1")).has_value());
    CHECK(*L("q^-2*u^2-q^2").try_divide(L("q^-1*u-q")) == L("q^-1*u+q"));
}

TEST_CASE("ratfunc: equality is cross-multiplication") {
    CHECK(R("(u^2-1)/(u-1)") == R("u+1"));
    CHECK(R("1/(u-q)") + R("1/(u+q)") == R("2*u/(u^2-q^2)"));
    CHECK(R("1/(u-q)") != R("1/(u+q)"));
    std::mt19937_64 rng(test_seed() + 2);
    for (int it = 0; it < 200; ++it) {
        auto n = random_poly(rng, 3), d = random_poly(rng, 3), k = random_poly(rng, 3);
        if (d.is_zero() || k.is_zero()) continue;
        RatFunc f(n, d), g(n * k, d * k);
        REQUIRE(f == g);
        REQUIRE(g == f);
        REQUIRE(f - g == RatFunc());
        if (!n.is_zero()) REQUIRE(f * f.inverse() == RatFunc(1));
    }
}

TEST_CASE("ratfunc: structure function times its inverse") {
    for (int c : {-1, 0, 2}) {
        auto qc = LaurentPoly::var(Q, c);
        auto u = LaurentPoly::var(U);
        RatFunc g(u - qc, qc * u - LaurentPoly(1));
        CHECK(g * RatFunc(LaurentPoly(1), u - qc) * RatFunc(qc * u - LaurentPoly(1)) == RatFunc(1));
    }
}

TEST_CASE("expand: geometric series") {
    auto f = R("1/(u-chi1)");
    auto s = expand(f, Direction::PowersOfUInverse, -3, 0);
    CHECK(s.coeff(-1) == R("1"));
    CHECK(s.coeff(-2) == R("chi1"));
    CHECK(s.coeff(-3) == R("chi1^2"));
    CHECK(s.coeff(0).is_zero());
    auto t = expand(f, Direction::PowersOfU, 0, 2);
    CHECK(t.coeff(0) == R("-chi1^-1"));
    CHECK(t.coeff(1) == R("-chi1^-2"));
    CHECK(t.coeff(2) == R("-chi1^-3"));
    CHECK_THROWS_AS(s.coeff(1), qlg::DomainError);
}

TEST_CASE("expand: g_ii constant term at infinity") {
    // long division: (u - q^2)/(q^2 u - 1) = q^-2 + (q^-4 - 1) u^-1 + ...
    auto g = R("(u-q^2)/(q^2*u-1)");
    auto s = expand(g, Direction::PowersOfUInverse, -2, 0);
    CHECK(s.coeff(0) == R("q^-2"));
    CHECK(s.coeff(-1) == R("q^-4-1"));
    CHECK(s.coeff(-2) == R("q^-6-q^-2"));
    // the other side: (u - q^2)/(q^2 u - 1) = q^2 + (q^4 - 1) u + ...
    auto t = expand(g, Direction::PowersOfU, 0, 1);
    CHECK(t.coeff(0) == R("q^2"));
    CHECK(t.coeff(1) == R("q^4-1"));
}

TEST_CASE("expand: resumming a geometric factor recovers the function") {
    for (const char* c : {"chi1", "q^2*chi2", "-q^-1*chi1"}) {
        auto cc = L(c);
        auto f = RatFunc(LaurentPoly(1), LaurentPoly::var(U) - cc);
        const int N = 6;
        auto s = expand(f, Direction::PowersOfUInverse, -N, 0);
        LaurentPoly partial;
        for (int k = -N; k <= 0; ++k) partial += s.coeff(k).num().shifted(var_exps(U, k));
        // (u - c) * sum_{j<N} c^j u^{-1-j} = 1 - c^N u^{-N}
        CHECK((LaurentPoly::var(U) - cc) * partial == LaurentPoly(1) - cc.pow(N).shifted(var_exps(U, -N)));
    }
}

TEST_CASE("expand: series product matches expansion of the product") {
    auto f = R("1/(u-chi1)"), g = R("u/(u-q*chi2)");
    auto a = expand(f, Direction::PowersOfUInverse, -6, 0);
    auto b = expand(g, Direction::PowersOfUInverse, -6, 0);
    auto ab = a * b;
    auto direct = expand(f * g, Direction::PowersOfUInverse, ab.lo(), ab.hi());
    for (int k = ab.lo(); k <= ab.hi(); ++k) CHECK(ab.coeff(k) == direct.coeff(k));
}

TEST_CASE("residue: simple, double and infinite poles") {
    CHECK(residue(R("1/(u-chi1)"), R("chi1")) == R("1"));
    CHECK(residue(R("1/(u-chi1)"), R("chi2")).is_zero());
    CHECK(residue_at_infinity(R("u/(u-chi1)")) == R("-chi1"));
    // u^3/(u-c)^2: residue is d/du u^3 at c
    CHECK(residue(R("u^3/(u-chi1)^2"), R("chi1")) == R("3*chi1^2"));
    CHECK(residue(R("(u-chi1)^2/(u-chi1)^3"), R("chi1")) == R("1"));
    CHECK(residue(R("(u-chi1)/(u-chi1)^3"), R("chi1")).is_zero());
    CHECK_THROWS_AS(residue(R("1/(u-chi1)^3"), R("chi1")), qlg::DomainError);
    CHECK(residue(R("1/(u^2*(u-1))"), R("0")) == R("-1"));
}

TEST_CASE("residue: limit oracle at a simple pole") {
    // (u - z) f(u) evaluated at z
    auto f = R("u^2*(u-q^3*chi1)/((u-q^-1*chi1)*(u-q*chi1)*(u-chi2))");
    auto z = L("q^-1*chi1");
    auto g = f * RatFunc(LaurentPoly::var(U) - z);
    CHECK(residue(f, RatFunc(z)) == g.substitute(U, z));
}

TEST_CASE("residue: sum over all poles and infinity vanishes") {
    // phi for w=1, lambda=(1), times u^{-1}
    auto f = R("q^-2*(u-chi1*q^3)/((u-chi1*q^-1)*(u-chi1*q))");
    auto total = residue(f, R("chi1*q^-1")) + residue(f, R("chi1*q")) + residue_at_infinity(f);
    CHECK(total.is_zero());
    CHECK_FALSE(residue_at_infinity(f).is_zero());

    std::mt19937_64 rng(test_seed() + 3);
    std::uniform_int_distribution<int> ex(-3, 3), mult(1, 2), cf(-4, 4);
    for (int it = 0; it < 60; ++it) {
        std::vector<LaurentPoly> poles;
        LaurentPoly den(1);
        int deg = 0;
        for (int k = 0; k < 3; ++k) {
            Exps e;
            e[Q] = static_cast<int16_t>(ex(rng));
            e[chi(k + 1)] = 1;
            auto c = LaurentPoly::monomial(e);
            int m = mult(rng);
            poles.push_back(c);
            den *= (LaurentPoly::var(U) - c).pow(m);
            deg += m;
        }
        LaurentPoly num;
        for (int j = 0; j <= deg + 1; ++j) num += LaurentPoly(cf(rng)).shifted(var_exps(U, j));
        RatFunc g(num, den);
        RatFunc sum = residue_at_infinity(g);
        for (const auto& c : poles) sum += residue(g, RatFunc(c));
        REQUIRE(sum.is_zero());
    }
}

TEST_CASE("linear_poles lists the roots") {
    auto f = R("1/((u-chi1*q)*(q*u-chi2))");
    auto p = linear_poles(f);
    REQUIRE(p.size() == 2);
    CHECK((p[0] == L("chi1*q") || p[1] == L("chi1*q")));
    CHECK((p[0] == L("q^-1*chi2") || p[1] == L("q^-1*chi2")));
}

TEST_CASE("characters: Adams operations") {
    auto E = VirtualCharacter::from_laurent(L("2*chi1*q^3 - chi2 + q^-1"));
    CHECK(E.adams(1) == E);
    CHECK(E.adams(2).adams(3) == E.adams(6));
    CHECK(E.adams(3).rank() == E.rank());
    CHECK(E.dual().to_laurent() == L("2*chi1^-1*q^-3 - chi2^-1 + q"));
}

TEST_CASE("lambda_series examples") {
    auto e = L("chi1");
    auto one = lambda_series(VirtualCharacter::from_laurent(e), Direction::PowersOfU, 3);
    CHECK(one.coeff(0) == R("1"));
    CHECK(one.coeff(1) == R("-chi1"));
    CHECK(one.coeff(2).is_zero());
    auto inv = lambda_series(VirtualCharacter::from_laurent(-e), Direction::PowersOfU, 3);
    CHECK(inv.coeff(1) == R("chi1"));
    CHECK(inv.coeff(2) == R("chi1^2"));
    CHECK(inv.coeff(3) == R("chi1^3"));
    auto two = lambda_series(VirtualCharacter::from_laurent(L("chi1+chi2")), Direction::PowersOfU, 3);
    CHECK(two.coeff(1) == R("-chi1-chi2"));
    CHECK(two.coeff(2) == R("chi1*chi2"));
    CHECK(two.coeff(3).is_zero());
    auto neg = lambda_series(VirtualCharacter::from_laurent(e), Direction::PowersOfUInverse, 2);
    CHECK(neg.coeff(-1) == R("-chi1"));
}

TEST_CASE("lambda_series is multiplicative") {
    std::mt19937_64 rng(test_seed() + 4);
    std::uniform_int_distribution<int> ex(-2, 2), m(-2, 2);
    for (int it = 0; it < 20; ++it) {
        VirtualCharacter a, b;
        for (int k = 0; k < 3; ++k) {
            Exps e1, e2;
            e1[Q] = static_cast<int16_t>(ex(rng));
            e1[Chi1] = static_cast<int16_t>(ex(rng));
            e2[Q] = static_cast<int16_t>(ex(rng));
            e2[chi(2)] = static_cast<int16_t>(ex(rng));
            a.add(e1, m(rng));
            b.add(e2, m(rng));
        }
        const int N = 5;
        auto la = lambda_series(a, Direction::PowersOfU, N);
        auto lb = lambda_series(b, Direction::PowersOfU, N);
        auto lab = lambda_series(a + b, Direction::PowersOfU, N);
        auto prod = la * lb;
        for (int k = 0; k <= N; ++k) REQUIRE(prod.coeff(k) == lab.coeff(k));
    }
}
