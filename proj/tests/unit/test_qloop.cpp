#include <algorithm>
#include <random>

#include "doctest.h"
#include "qlg/alg/series_ops.hpp"
#include "qlg/error.hpp"
#include "qlg/lattice/lattice.hpp"
#include "qlg/qloop/qloop.hpp"
#include "seed.hpp"

using namespace qlg;
using namespace qlg::qloop;
using alg::Direction;
using alg::LaurentPoly;
using Status = InstanceResult::Status;

namespace {

RatFunc R(const char* s) { return alg::parse_ratfunc(s); }

bool has(const std::vector<RelationCheck>& cat, const std::string& name) {
    return std::any_of(cat.begin(), cat.end(), [&](const auto& r) { return r.name == name; });
}

}  // namespace

TEST_CASE("structure functions") {
    auto a2 = shifted_simply_laced(quiver::dynkin_a(2), {0, 0});
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            RatFunc g = a2.g(i, j).as_ratfunc();
            RatFunc qc = RatFunc(LaurentPoly::var(alg::Q, a2.quiver.c(i, j)));
            RatFunc u = RatFunc::var(alg::U);
            CHECK(g / (u - qc) * (qc * u - RatFunc(1)) == RatFunc(1));
        }
    auto tor = shifted_toroidal_gl1(1);
    RatFunc g = tor.g(1, 1).as_ratfunc();
    CHECK(g == R("(u-q^-1*t)*(u-q^-1*t^-1)*(u-q^2)/((q^-1*t*u-1)*(q^-1*t^-1*u-1)*(q^2*u-1))"));
    CHECK(tor.commutator_prefactor() == R("(1-q*t^-1)*(1-q*t)*(1-q^-2)"));
    CHECK(qint(3) == R("q^2+1+q^-2"));
    CHECK(qint(-2) == R("-q-q^-1"));
}

TEST_CASE("relation catalogue") {
    auto a1 = relation_catalogue(shifted_simply_laced(quiver::dynkin_a(1), {0}));
    for (const char* n : {"A.2", "A.3", "A.4", "A.4a", "A.4b", "A.5", "A.6"}) CHECK(has(a1, n));
    CHECK(!has(a1, "A.7"));
    auto a2 = relation_catalogue(shifted_simply_laced(quiver::dynkin_a(2), {1, 0}));
    long serre = std::count_if(a2.begin(), a2.end(), [](const auto& r) { return r.name == "A.7"; });
    CHECK(serre == 2);
    for (const auto& r : a2)
        if (r.name == "A.7") {
            CHECK(r.convention);
            CHECK(r.statement.find("n_2") != std::string::npos);
        }
    auto tor = relation_catalogue(shifted_toroidal_gl1(2));
    for (const char* n : {"B.2", "B.3", "B.4", "B.5", "B.6", "B.7"}) CHECK(has(tor, n));
}

TEST_CASE("sparse matrices") {
    SparseMatrix a(2, 2), b(2, 2);
    a.set(0, 1, R("q"));
    b.set(1, 0, R("chi1"));
    auto ab = a * b;
    CHECK(ab.get(0, 0) == R("q*chi1"));
    CHECK(ab.entries().size() == 1);
    CHECK((a - a).is_zero());
    CHECK(a.first_difference(b) == std::make_pair(0, 1));
    SparseMatrix m(2, 2);
    m.set(0, 0, R("1"));
    m.set(0, 1, R("q"));
    m.set(1, 1, R("chi1"));
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK(m * *inv == SparseMatrix::identity(2));
    SparseMatrix sing(2, 2);
    sing.set(0, 0, R("1"));
    sing.set(1, 0, R("q"));
    CHECK(!inverse(sing));
}

TEST_CASE("trivial one-dimensional tables satisfy every relation") {
    // Psi(u) = 1 + chi1 u^-1 is its own u and u^-1 expansion with w^- = 1
    std::vector<std::vector<RatFunc>> psi = {{R("q"), R("chi1")}};
    auto spec = shifted_simply_laced(quiver::dynkin_a(1), {-1});
    auto rep = trivial_table(1, psi, 2);
    auto rep_report = check_relations(spec, rep, 2);
    CHECK(rep_report.count(Status::Fail) == 0);
    CHECK(rep_report.count(Status::Undetermined) == 0);
    CHECK(rep_report.count(Status::Pass) > 0);

    auto a2 = shifted_simply_laced(quiver::dynkin_a(2), {0, -2});
    auto rep2 = trivial_table(2, {{R("1")}, {R("q^2"), R("chi2"), R("chi1*chi2")}}, 1);
    auto r2 = check_relations(a2, rep2, 1);
    CHECK(r2.count(Status::Fail) == 0);
    CHECK(r2.count("A.7", Status::Pass) > 0);

    auto tor = shifted_toroidal_gl1(-1);
    auto r3 = check_relations(tor, trivial_table(1, psi, 2), 2);
    CHECK(r3.count(Status::Fail) == 0);
    CHECK(r3.count("B.7", Status::Pass) > 0);
    CHECK(r3.count("B.6", Status::Pass) > 0);

    // a psi with a u^-2 term is not a valid w^- = 1 table: psi- has no u^-2 mode
    auto bad = trivial_table(1, {{R("1"), R("0"), R("q")}}, 1);
    CHECK(check_relations(spec, bad, 1).count("A.6", Status::Fail) > 0);
}

TEST_CASE("A.2 fails on a singular leading term") {
    auto spec = shifted_simply_laced(quiver::dynkin_a(1), {0});
    auto rep = trivial_table(1, {{R("0")}}, 1);
    CheckOptions o;
    o.only = {"A.2"};
    auto r = check_relations(spec, rep, 1, o);
    CHECK(r.count(Status::Fail) == 2);
}

TEST_CASE("missing generators are undetermined, never passed") {
    auto spec = lattice::a1_presentation(1);
    auto rep = lattice::build_operator_table(1, 2, 1);
    rep.generators.erase({GenKind::XPlus, 1, 0});
    CheckOptions o;
    o.only = {"A.6"};
    auto r = check_relations(spec, rep, 1, o);
    CHECK(r.count(Status::Undetermined) == 3);
    for (const auto& inst : r.instances)
        if (inst.status == Status::Undetermined) CHECK((*inst.witness)["missing"] == "x+_{1,0}");
}

TEST_CASE("A1 lattice table: A.6 with w = 1, window 2") {
    auto spec = lattice::a1_presentation(1);
    auto rep = lattice::build_operator_table(1, 3, 2);
    CheckOptions o;
    o.only = {"A.6"};
    auto r = check_relations(spec, rep, 2, o);
    CHECK(r.count(Status::Pass) == 25);
    CHECK(r.count(Status::Fail) == 0);
}

TEST_CASE("A1 lattice table: full relation suite for w = 2") {
    auto spec = lattice::a1_presentation(2);
    auto rep = lattice::build_operator_table(2, 2, 1);
    CheckOptions o;
    o.threads = 2;
    auto r = check_relations(spec, rep, 1, o);
    for (const auto& inst : r.instances)
        if (inst.status == Status::Fail) FAIL_CHECK(inst.relation << " " << inst.witness->dump());
    for (const char* n : {"A.2", "A.3", "A.4", "A.4a", "A.4b", "A.6"}) CHECK(r.count(n, Status::Pass) > 0);
}

TEST_CASE("mutations are witnessed") {
    auto spec = lattice::a1_presentation(1);
    auto rep = lattice::build_operator_table(1, 2, 1);
    // rescale psi+ on basis vector 1 only
    auto bad = rep;
    for (auto& [g, m] : bad.generators)
        if (g.kind == GenKind::PsiPlus) m.set(1, 1, m.get(1, 1) * RatFunc(2));
    CheckOptions o;
    o.only = {"A.4"};
    auto r = check_relations(spec, bad, 1, o);
    REQUIRE(r.count(Status::Fail) > 0);
    for (const auto& inst : r.instances)
        if (inst.status == Status::Fail) {
            const auto& w = *inst.witness;
            CHECK((w["basis"] == bad.basis[1] || w["row"] == bad.basis[1]));
        }

    // change one x^+ coefficient
    auto bad2 = rep;
    auto& xp = bad2.generators.at({GenKind::XPlus, 1, 0});
    xp.set(1, 0, xp.get(1, 0) * RatFunc(3));
    o.only = {"A.6"};
    auto r2 = check_relations(spec, bad2, 1, o);
    CHECK(r2.count(Status::Fail) > 0);
}

TEST_CASE("check_relations is monotone in the window") {
    auto spec = lattice::a1_presentation(1);
    auto rep = lattice::build_operator_table(1, 2, 2);
    CheckOptions o;
    o.only = {"A.4", "A.6"};
    auto small = check_relations(spec, rep, 1, o);
    auto big = check_relations(spec, rep, 2, o);
    for (const auto& s : small.instances) {
        if (s.status != Status::Pass) continue;
        auto it = std::find_if(big.instances.begin(), big.instances.end(),
                               [&](const auto& b) { return b.relation == s.relation && b.indices == s.indices; });
        REQUIRE(it != big.instances.end());
        CHECK(it->status == Status::Pass);
    }
}

TEST_CASE("central element commutes with the generators") {
    for (int w = 1; w <= 2; ++w) {
        auto rep = lattice::build_operator_table(w, 2, 1);
        auto c = *rep.find({GenKind::PsiPlus, 1, 0}) * *rep.find({GenKind::PsiMinus, 1, -w});
        CHECK(c == SparseMatrix::scalar(rep.dim(), lattice::psi_central(w)));
        for (const auto& [g, m] : rep.generators) CHECK(c * m == m * c);
    }
}

TEST_CASE("hseries_from_psi") {
    alg::USeries one_p(Direction::PowersOfUInverse, -3, 0), one_m(Direction::PowersOfU, 0, 4);
    one_p.set(0, RatFunc(1));
    one_m.set(0, RatFunc(1));
    auto h0 = hseries_from_psi(one_p, one_m, 0, 3);
    for (const auto& h : h0.plus) CHECK(h.is_zero());
    for (const auto& h : h0.minus) CHECK(h.is_zero());

    // c exp((q-q^-1) h1 u^-1) with h1 = chi1
    RatFunc qq = R("q-q^-1");
    RatFunc h1 = R("chi1");
    alg::USeries e(Direction::PowersOfUInverse, -4, 0);
    RatFunc term(1);
    for (int k = 0; k <= 4; ++k) {
        e.set(-k, R("chi2") * term);
        term = term * qq * h1 / RatFunc(k + 1);
    }
    auto hs = hseries_from_psi(e, one_m, 0, 4);
    CHECK(hs.plus[0] == h1);
    for (int m = 2; m <= 4; ++m) CHECK(hs.plus[m - 1].is_zero());

    // lattice psi for w = 1, lambda = (1): log oracle from the factored form
    auto pp = lattice::psi_series_a1({1}, 1, 4);
    auto pm = lattice::psi_series_a1({1}, -1, 4);
    auto h = hseries_from_psi(pp, pm, -1, 4);
    for (int m = 1; m <= 4; ++m) {
        RatFunc a = RatFunc(LaurentPoly::var(alg::chi(1), m)) *
                    (R("q^-1").pow(m) + R("q").pow(m) - R("q^3").pow(m)) / RatFunc(m);
        CHECK(h.plus[m - 1] == a / qq);
        CHECK(h.plus_over_qint[m - 1] == a / qq / qint(m));
    }
    // psi- from the u-expansion: log of prod (1 - u/a)^{pm 1} gives -sum a^-m u^m / m
    for (int m = 1; m <= 4; ++m) {
        RatFunc a = RatFunc(LaurentPoly::var(alg::chi(1), -m)) *
                    (R("q").pow(m) + R("q^-1").pow(m) - R("q^-3").pow(m)) / RatFunc(m);
        CHECK(h.minus[m - 1] == -a / qq);
    }
    alg::USeries zero(Direction::PowersOfUInverse, -2, 0);
    CHECK_THROWS_AS(hseries_from_psi(zero, one_m, 0, 2), DomainError);
}
