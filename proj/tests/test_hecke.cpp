#include <set>

#include "doctest.h"
#include "gu2/hecke.hpp"
#include "gu2/trace.hpp"

using namespace gu2;

TEST_CASE("coset representatives from Y_q: counts and freeness") {
    struct Case {
        int p;
        Int q;
        Int expect;
    };
    for (Case c : {Case{3, 2, 15}, Case{2, 3, 40}, Case{5, 2, 15}}) {
        TraceEngine eng(c.p);
        const HeckeRepSet& rs = eng.reps(c.q);
        CHECK(static_cast<Int>(rs.reps.size()) == c.expect);
        for (const Gu2Matrix& r : rs.reps) CHECK(r.mu == rat_of(c.q));
        CHECK(reps_pairwise_inequivalent(rs.reps, eng.gamma2()));
    }
}

TEST_CASE("explicit construction at p = 2, n = 3: the 40 matrices") {
    TraceEngine eng(2);
    auto reps = reps_corollary_S(eng.order(), 3, eng.norm_cache());
    REQUIRE(reps.size() == 40);

    const MaximalOrder& O = eng.order();
    auto units = eng.norm_cache().get(1).elems;
    int diag = 0, antidiag = 0;
    for (const Gu2Matrix& g : reps) {
        CHECK(g.mu == 3);
        if (g.m.e[1].is_zero() && g.m.e[2].is_zero()) {
            ++diag;
            // each diagonal entry is unit-equivalent to exactly one 1 +- i +- j
            for (const Quat& x : {g.m.e[0], g.m.e[3]}) {
                int hits = 0;
                OrderElem e = O.to_elem(x);
                for (const OrderElem& u : units) {
                    Quat moved = O.to_quat(O.mul(e, u));
                    for (int si : {1, -1})
                        for (int sj : {1, -1})
                            if (moved == Quat{O.alg(), 1, si, sj, 0}) ++hits;
                }
                CHECK(hits == 1);
            }
        } else {
            ++antidiag;
            CHECK(g.m.e[0] == Quat::one(O.alg()));
            CHECK(g.m.e[3] == Quat::one(O.alg()));
            CHECK(g.m.e[1].nrd() == 2);
            CHECK(g.m.e[2] == -g.m.e[1].conj());
        }
    }
    CHECK(diag == 16);
    CHECK(antidiag == 24);
}

TEST_CASE("explicit construction at p = 3, n = 2 has degree 15") {
    TraceEngine eng(3);
    auto reps = reps_corollary_S(eng.order(), 2, eng.norm_cache());
    CHECK(reps.size() == 15);  // 3^2 diagonal classes + 6 paired anti-diagonal
}

TEST_CASE("n = 1 gives the identity coset") {
    TraceEngine eng(3);
    auto reps = reps_corollary_S(eng.order(), 1, eng.norm_cache());
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].m == QuatMat2::identity(eng.order().alg()));
}

TEST_CASE("the two routes produce equivalent coset systems (p = 3, q = 2)") {
    TraceEngine eng(3);
    auto explicit_reps = align_to_nonprincipal(
        eng.genus(), eng.gamma1(),
        reps_corollary_S(eng.order(), 2, eng.norm_cache()));
    const HeckeRepSet& orbit_reps = eng.reps(2);
    CHECK(reps_pairwise_inequivalent(explicit_reps, eng.gamma2()));
    CHECK(reps_equivalent(explicit_reps, orbit_reps.reps, eng.gamma2()));
    CHECK(reps_equivalent(orbit_reps.reps, explicit_reps, eng.gamma2()));
}

TEST_CASE("the two routes produce equivalent coset systems (p = 2, q = 3)") {
    TraceEngine eng(2);
    auto explicit_reps = align_to_nonprincipal(
        eng.genus(), eng.gamma1(),
        reps_corollary_S(eng.order(), 3, eng.norm_cache()));
    const HeckeRepSet& orbit_reps = eng.reps(3);
    CHECK(reps_pairwise_inequivalent(explicit_reps, eng.gamma2()));
    CHECK(reps_equivalent(explicit_reps, orbit_reps.reps, eng.gamma2()));
}

TEST_CASE("equivalence detects duplicated cosets") {
    TraceEngine eng(3);
    const HeckeRepSet& rs = eng.reps(2);
    auto broken = rs.reps;
    broken[0] = broken[1];  // two copies of one coset, one coset missing
    CHECK(reps_equivalent(rs.reps, rs.reps, eng.gamma2()));
    CHECK(!reps_equivalent(rs.reps, broken, eng.gamma2()));
}

TEST_CASE("the ramified prime is rejected") {
    TraceEngine eng(3);
    CHECK_THROWS_AS(eng.reps(3), unsupported_error);
    CHECK_THROWS_AS(quat_hecke_reps(eng.order(), 3, 3, eng.norm_cache()),
                    unsupported_error);
}

TEST_CASE("D^x side representatives: q + 1 classes") {
    {
        TraceEngine eng(2);
        auto reps = quat_hecke_reps(eng.order(), 2, 3, eng.norm_cache());
        CHECK(reps.size() == 4);
    }
    {
        TraceEngine eng(3);
        auto reps = quat_hecke_reps(eng.order(), 3, 2, eng.norm_cache());
        CHECK(reps.size() == 3);
    }
    {
        TraceEngine eng(7);
        auto reps = quat_hecke_reps(eng.order(), 7, 2, eng.norm_cache());
        CHECK(reps.size() == 3);
    }
}
