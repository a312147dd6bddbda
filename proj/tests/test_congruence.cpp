#include <sstream>

#include "doctest.h"
#include "gu2/congruence.hpp"
#include "gu2/surd.hpp"

using namespace gu2;

static std::string data_dir() { return GU2_BUNDLED_DATA_DIR; }

static EigenformDatabase& db() {
    static EigenformDatabase d =
        EigenformDatabase::load(data_dir() + "/eigenforms.dat");
    return d;
}

TEST_CASE("record parsing: bundled file and edge cases") {
    CHECK(db().records.size() >= 20);
    const EigenformRecord* r = db().find_one(3, 14, "b");
    REQUIRE(r != nullptr);
    CHECK(r->degree() == 2);
    CHECK(r->minpoly == std::vector<BigInt>{1, 54, -16992});
    CHECK(r->ell == 47);

    std::istringstream empty("");
    CHECK(parse_eigenform_records(empty).empty());

    std::istringstream nonmonic(
        "record\nlevel 1\nweight 12\nlabel a\nminpoly 2 0\na 2 -24\nend\n");
    CHECK_THROWS_AS(parse_eigenform_records(nonmonic), data_error);

    std::istringstream dup(
        "record\nlevel 1\nweight 12\nlabel a\nminpoly 1 0\na 2 -24\nend\n"
        "record\nlevel 1\nweight 12\nlabel a\nminpoly 1 0\na 2 -24\nend\n");
    CHECK_THROWS_AS(parse_eigenform_records(dup), data_error);
}

TEST_CASE("orbit eigenvalue sums through the companion matrix") {
    // weight 16, level 3: two rational forms
    CHECK(orbit_eigenvalue_sum(*db().find_one(3, 16, "a"), 2) == -234);
    CHECK(orbit_eigenvalue_sum(*db().find_one(3, 16, "b"), 2) == -72);
    // quadratic orbit: sum of the two conjugate roots of x^2+54x-16992
    CHECK(orbit_eigenvalue_sum(*db().find_one(3, 14, "b"), 2) == -54);
    // weight-24 level-1 orbit: a_3 = 195660 - 48 alpha, trace 339480
    CHECK(orbit_eigenvalue_sum(*db().find_one(1, 24, "a"), 3) == 339480);
}

TEST_CASE("residual norms: the quadratic worked example") {
    const EigenformRecord* rec = db().find_one(3, 14, "b");
    REQUIRE(rec != nullptr);
    // c = 72 - 2^3 - 2^10 = -960, |f(-960)| = 852768 = 47 * 18144
    Rational c(-960);
    BigInt res = residual_norm(*rec, 2, c);
    CHECK(res == 852768);
    CHECK(res % 47 == 0);

    // same value through explicit quadratic-surd arithmetic:
    // N(c - alpha) with alpha = -27 + 3 sqrt(1969)
    QuadraticSurd alpha(Rational(-27), Rational(3), 1969);
    QuadraticSurd diff = QuadraticSurd(c, Rational(0), 1969) - alpha;
    CHECK(diff.norm() == 852768);
}

TEST_CASE("check_congruence on the three worked examples") {
    // (2,8): b_2 = -312, a_2 = -234, ell = 109: c - a = -654 = -6*109
    auto rep1 = check_congruence(*db().find_one(3, 16, "a"), Rational(-312), 3,
                                 2, 2, 8, 109);
    CHECK(rep1.verdict == Verdict::holds);
    CHECK(rep1.residual == 654);

    // (8,5): b_2 = 12, a_2 = -72, ell = 67: -4020 = -60*67
    auto rep2 = check_congruence(*db().find_one(3, 16, "b"), Rational(12), 3,
                                 2, 8, 5, 67);
    CHECK(rep2.verdict == Verdict::holds);
    CHECK(rep2.residual == 4020);

    // (6,5): b_2 = 72, quadratic record, ell = 47
    auto rep3 = check_congruence(*db().find_one(3, 14, "b"), Rational(72), 3,
                                 2, 6, 5, 47);
    CHECK(rep3.verdict == Verdict::holds);
    CHECK(rep3.residual == 852768);

    // a wrong eigenvalue fails
    auto bad = check_congruence(*db().find_one(3, 16, "a"), Rational(-311), 3,
                                2, 2, 8, 109);
    CHECK(bad.verdict == Verdict::fails);
}

TEST_CASE("verdict stability under shifts by ell (degree-1 records)") {
    const EigenformRecord* rec = db().find_one(3, 16, "a");
    for (int t : {-3, -1, 1, 2, 5}) {
        auto rep = check_congruence(*rec, Rational(-312 + 109 * t), 3, 2, 2, 8,
                                    109);
        CHECK(rep.verdict == Verdict::holds);
    }
}

TEST_CASE("vacuous verdict when ell divides the level") {
    std::istringstream one(
        "record\nlevel 11\nweight 8\nlabel a\nminpoly 1 0\na 2 0\nend\n");
    auto recs = parse_eigenform_records(one);
    auto rep = check_congruence(recs[0], Rational(-20), 11, 2, 2, 4, 11);
    CHECK(rep.verdict == Verdict::vacuous);
}

TEST_CASE("warning when ell is at or below j+2k-2") {
    auto rep = check_congruence(*db().find_one(3, 16, "a"), Rational(-312), 3,
                                2, 2, 8, 13);
    CHECK(!rep.warning.empty());  // 13 <= 16
}

TEST_CASE("full verification of the p = 3 rows") {
    auto rows = load_congruence_rows(data_dir() + "/congruences.dat");
    std::vector<CongruenceRow> p3;
    for (const auto& r : rows)
        if (r.p == 3) p3.push_back(r);
    REQUIRE(p3.size() == 7);
    auto reports = verify_table(p3, db());
    for (const auto& rep : reports) {
        INFO("row (", rep.j, ",", rep.k, ")");
        CHECK(rep.error.empty());
        CHECK(rep.verdict == Verdict::holds);
    }
    // spot values from the table
    CHECK(reports[0].trace_total == -312);
    CHECK(reports[0].b_q == -312);
    CHECK(reports[3].trace_total == 300);
    CHECK(reports[3].b_q == 12);
    CHECK(reports[5].trace_total == -1716);
    CHECK(reports[5].b_q == 132);
}

TEST_CASE("row errors are captured without aborting the batch") {
    std::vector<CongruenceRow> rows(2);
    rows[0].p = 3;
    rows[0].j = 2;
    rows[0].k = 8;
    rows[0].q = 2;
    rows[0].ell = 109;
    rows[0].level = 3;
    rows[0].weight = 16;
    rows[0].label = "nonexistent";
    rows[1] = rows[0];
    rows[1].label = "a";
    auto reports = verify_table(rows, db());
    CHECK(!reports[0].error.empty());
    CHECK(reports[1].error.empty());
    CHECK(reports[1].verdict == Verdict::holds);
}
