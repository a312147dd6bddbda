#include "doctest.h"
#include "gu2/congruence.hpp"
#include "gu2/trace.hpp"

using namespace gu2;

static std::string data_dir() { return GU2_BUNDLED_DATA_DIR; }

static EigenformDatabase& db() {
    static EigenformDatabase d =
        EigenformDatabase::load(data_dir() + "/eigenforms.dat");
    return d;
}

TEST_CASE("level-1 and Gamma_0(p) dimension formulas") {
    CHECK(dim_cusp_sl2(10) == 0);
    CHECK(dim_cusp_sl2(12) == 1);
    CHECK(dim_cusp_sl2(14) == 0);
    CHECK(dim_cusp_sl2(16) == 1);
    CHECK(dim_cusp_sl2(24) == 2);
    CHECK(dim_cusp_sl2(26) == 1);

    CHECK(dim_new_gamma0_prime(10, 3) == 2);   // S_10^new(Gamma_0(3))
    CHECK(dim_new_gamma0_prime(14, 3) == 3);
    CHECK(dim_new_gamma0_prime(16, 3) == 2);
    CHECK(dim_new_gamma0_prime(2, 11) == 1);   // genus of X_0(11)
    CHECK(dim_new_gamma0_prime(4, 11) == 2);
    CHECK(dim_new_gamma0_prime(8, 2) == 1);
    CHECK(dim_new_gamma0_prime(2, 7) == 0);
}

TEST_CASE("space dimensions for p = 3 match the worked examples") {
    TraceEngine eng(3);
    CHECK(eng.dim_full(2, 8) == 1);   // dim A_{2,5}(D) = 1
    CHECK(eng.dim_full(8, 5) == 3);   // dim A_{8,2}(D) = 3
    CHECK(eng.dim_full(6, 5) == 1);   // dim A_{6,2}(D) = 1
    CHECK(eng.dim_full(0, 3) == 1);   // constants
}

TEST_CASE("quaternionic dimensions and eigenvalue sums for p = 3") {
    TraceEngine eng(3);
    REQUIRE(eng.quat_class_number_one());
    CHECK(eng.dim_quat(8) == 2);    // dim S_10^new(Gamma_0(3))
    CHECK(eng.dim_quat(12) == 3);   // dim S_14^new(Gamma_0(3))
    CHECK(eng.dim_quat(14) == 2);   // dim S_16^new(Gamma_0(3))

    CHECK(eng.quat_trace(2, 8) == -18);    // -36 + 18
    CHECK(eng.quat_trace(2, 14) == -306);  // -234 - 72
    CHECK(eng.quat_trace(2, 12) == -66);   // -12 - 54

    // the literal representative sum must agree with the X_q sum
    CHECK(eng.quat_trace_literal(2, 8) == eng.quat_trace(2, 8));
    CHECK(eng.quat_trace_literal(2, 12) == eng.quat_trace(2, 12));
}

TEST_CASE("quaternionic dimensions agree with the classical formula") {
    for (int p : {2, 3, 5, 7}) {
        TraceEngine eng(p);
        REQUIRE(eng.quat_class_number_one());
        for (int j = 2; j <= 16; j += 2)
            CHECK(eng.dim_quat(j) == bigint_of(dim_new_gamma0_prime(j + 2, p)));
    }
    TraceEngine eng11(11);
    CHECK(!eng11.quat_class_number_one());  // h = 2 on the D^x side
    CHECK(eng11.newform_count(2) == 2);     // classical fallback
}

TEST_CASE("traces for p = 3, q = 2 match the worked examples") {
    TraceEngine eng(3);
    CHECK(eng.trace_q(2, 2, 8) == -312);
    CHECK(eng.trace_q(2, 8, 5) == 300);
    CHECK(eng.trace_q(2, 6, 5) == 72);
}

TEST_CASE("literal double sum equals the coset-collapsed sum") {
    TraceEngine eng(3);
    CHECK(eng.trace_q_literal(2, 2, 8) == eng.trace_q(2, 2, 8));
    CHECK(eng.trace_q_literal(2, 8, 5) == eng.trace_q(2, 8, 5));
}

TEST_CASE("oldform subtraction reproduces b_2 = 12 at (j,k) = (8,5)") {
    TraceEngine eng(3);
    OldformData old = oldform_trace(eng, db(), 2, 8, 5);
    CHECK(old.m == 1);
    CHECK(old.n == 2);
    CHECK(old.old_trace == 288);  // 2*216 + 1*8*(-18)

    TraceResult res = new_eigenvalue(eng, db(), 2, 8, 5);
    CHECK(res.total == 300);
    CHECK(res.old_part == 288);
    CHECK(res.new_part == 12);
    CHECK(res.full_dim == 3);
    CHECK(res.old_dim == 2);
    CHECK(res.new_dim == 1);
}

TEST_CASE("empty old space cases") {
    TraceEngine eng(3);
    TraceResult r1 = new_eigenvalue(eng, db(), 2, 2, 8);
    CHECK(r1.new_part == -312);
    CHECK(r1.old_part == 0);
    TraceResult r3 = new_eigenvalue(eng, db(), 2, 6, 5);
    CHECK(r3.new_part == 72);
    CHECK(r3.old_part == 0);
}

TEST_CASE("power traces: d = 1 degenerates, d = 2 squares on a 1-dim space") {
    TraceEngine eng(3);
    CHECK(eng.trace_q_power(2, 1, 2, 8) == eng.trace_q(2, 2, 8));
    // dim A_{2,5} = dim A^new = 1, so tr(T^2) = tr(T)^2
    CHECK(eng.trace_q_power(2, 2, 2, 8) == Rational(-312) * Rational(-312));
}

TEST_CASE("oldform preconditions") {
    TraceEngine eng(3);
    CHECK_THROWS_AS(oldform_trace(eng, db(), 2, 0, 14), unsupported_error);
    CHECK_THROWS_AS(oldform_trace(eng, db(), 3, 8, 5), unsupported_error);
}

TEST_CASE("missing level-1 data is reported with the weight") {
    TraceEngine eng(3);
    EigenformDatabase empty;
    try {
        oldform_trace(eng, empty, 2, 8, 5);  // needs weight 16 level 1
        FAIL("expected data_error");
    } catch (const data_error& e) {
        CHECK(std::string(e.what()).find("16") != std::string::npos);
    }
}

TEST_CASE("ambiguous eigenvalue extraction is rejected with dimensions") {
    TraceEngine eng(3);
    // dim A_{2,9}^new(D) = 4 and the weight-24 level-1 records exist
    CHECK_THROWS_AS(new_eigenvalue(eng, db(), 2, 2, 12), unsupported_error);
}

TEST_CASE("results are independent of the thread count") {
    TraceEngine a(3, "", 1);
    TraceEngine b(3, "", 4);
    CHECK(a.trace_q(2, 8, 5) == b.trace_q(2, 8, 5));
    CHECK(a.dim_full(8, 5) == b.dim_full(8, 5));
    TraceResult ra = new_eigenvalue(a, db(), 2, 8, 5);
    TraceResult rb = new_eigenvalue(b, db(), 2, 8, 5);
    CHECK(ra.new_part == rb.new_part);
}

TEST_CASE("j = 0 decomposition uses the empty-old convention when valid") {
    TraceEngine eng(3);
    TraceResult r = trace_decomposition(eng, db(), 2, 0, 5);
    CHECK(r.j0_empty_old_assumed);
    CHECK(r.old_part == 0);
    CHECK(r.new_part == r.total);
}
