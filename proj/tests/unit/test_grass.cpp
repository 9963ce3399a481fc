#include "doctest.h"
#include "qlg/error.hpp"
#include "qlg/grass/grass.hpp"

using namespace qlg;
using namespace qlg::grass;

namespace {

long binom(long n, long k) {
    long r = 1;
    for (long j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

}  // namespace

TEST_CASE("preprojective algebra of type A") {
    for (int n = 1; n <= 4; ++n) {
        Preprojective pi(n);
        long total = 0;
        for (int i = 1; i <= n; ++i) {
            CHECK(pi.dim_from(i) == i * (n + 1 - i));
            total += pi.dim_from(i);
        }
        CHECK(total == n * (n + 1) * (n + 2) / 6);
    }
    // alpha* alpha at vertex 1 of A2 is zero: vertex 1 has only one arrow
    Preprojective a2(2);
    CHECK(a2.normal_form(1, {1, 0}).empty());
}

TEST_CASE("injective modules") {
    for (auto [n, i, l] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {1, 1, 3}, {2, 1, 2}, {3, 2, 1}, {3, 2, 2}}) {
        auto M = build_injective(quiver::dynkin_a(n), i, 0, l);
        CHECK(M.dim() == i * (n + 1 - i) * l);
        CHECK(M.shift == -l);
        for (const auto& [name, ok] : M.verify()) CHECK_MESSAGE(ok, name);
        auto soc = M.socle();
        REQUIRE(soc.size() == 1);
        CHECK(M.basis[soc[0]] == std::make_pair(i, 0));
    }
    CHECK_THROWS_AS(build_injective(quiver::dynkin_a(4), 1, 0, 1), DomainError);
    CHECK_THROWS_AS(build_injective(quiver::dynkin_d(4), 1, 0, 1), DomainError);
}

TEST_CASE("graded submodules") {
    auto M = build_injective(quiver::dynkin_a(1), 1, 0, 3);
    auto subs = enumerate_graded_submodules(M);
    CHECK(subs.size() == 4);
    for (const auto& s : subs) CHECK(s.verified());
    quiver::DimVec v(true);
    v.add(1, 0, 1);
    CHECK(enumerate_graded_submodules(M, v).size() == 1);
    v.add(1, -4, 1);  // skips degree -2: not a submodule
    CHECK(enumerate_graded_submodules(M, v).empty());

    auto fam = build_injective(quiver::dynkin_a(3), 2, 0, 2);
    CHECK_THROWS_WITH_AS(enumerate_graded_submodules(fam), doctest::Contains("family"), DomainError);
}

TEST_CASE("euler characteristic against KR dimensions") {
    for (int l = 1; l <= 4; ++l) {
        auto r = euler_vs_kr(quiver::dynkin_a(1), 1, 0, l);
        CHECK(r.grassmannian_count == l + 1);
        CHECK(r.kr_dim == l + 1);
        CHECK(r.pass());
        CHECK(r.monomials_match);
    }
    for (int l = 1; l <= 2; ++l) {
        auto r = euler_vs_kr(quiver::dynkin_a(2), 1, 3, l);
        CHECK(r.grassmannian_count == binom(l + 2, 2));
        CHECK(r.pass());
        CHECK(r.monomials_match);
    }
    auto r3 = euler_vs_kr(quiver::dynkin_a(3), 2, 0, 1);
    CHECK(r3.grassmannian_count == 6);
    CHECK(r3.pass());
    CHECK(r3.monomials_match);
    auto r4 = euler_vs_kr(quiver::dynkin_a(3), 1, 0, 2);
    CHECK(r4.grassmannian_count == 10);
    CHECK(r4.pass());
}
