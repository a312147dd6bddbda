#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "gu2/algebra_table.hpp"
#include "gu2/characters.hpp"

using namespace gu2;

namespace {

// Weyl dimension formula for Sp(4) highest weight (j+k-3, k-3), derived
// independently of the polynomial construction
BigInt dim_formula(int j, int k) {
    BigInt n = BigInt(j + 1) * (k - 2) * (j + k - 1) * (j + 2 * k - 3);
    GU2_CHECK(n % 6 == 0, "dimension formula not integral");
    return n / 6;
}

// numeric evaluation of the raw Weyl quotient at unit-circle points
double quotient_formula(int j, int k, double phi, double psi) {
    using C = std::complex<double>;
    C z = std::polar(1.0, phi);
    C w = std::polar(1.0, psi);
    auto ipow = [](C x, int e) { return std::pow(x, e); };
    C num = ipow(w, j + 1) * (ipow(w, 2 * (k - 2)) - 1.0) *
                (ipow(z, 2 * (j + k - 1)) - 1.0) -
            ipow(z, j + 1) * (ipow(z, 2 * (k - 2)) - 1.0) *
                (ipow(w, 2 * (j + k - 1)) - 1.0);
    C den = (z * z - 1.0) * (w * w - 1.0) * (z * w - 1.0) * (z - w) *
            ipow(z * w, j + k - 3);
    return (num / den).real();
}

}  // namespace

TEST_CASE("trivial representation is the constant 1") {
    Sp4Character chi = build_sp4_character(0, 3);
    CHECK(chi.dim == 1);
    REQUIRE(chi.terms.size() == 1);
    CHECK(chi.terms.at({0, 0}) == 1);
    CHECK(chi.eval_power_sums(1, 4, 4) == 1);
    CHECK(chi.eval_power_sums(1, 0, -4) == 1);
}

TEST_CASE("identity evaluation matches the Weyl dimension formula") {
    for (int j = 0; j <= 20; j += 2)
        for (int k = 3; k <= 18; ++k) {
            Sp4Character chi = build_sp4_character(j, k);
            CHECK(chi.dim == dim_formula(j, k));
            // -I hits all four singular loci of the quotient formula and
            // must still give the dimension (E,F are identical there)
            CHECK(chi.eval_power_sums(1, -4, 4) == Rational(chi.dim));
        }
}

TEST_CASE("precomputed polynomial agrees with the quotient formula") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ang(0.15, 2.9);
    for (auto [j, k] : std::vector<std::pair<int, int>>{
             {2, 8}, {8, 5}, {6, 5}, {0, 14}, {12, 4}, {4, 10}}) {
        Sp4Character chi = build_sp4_character(j, k);
        for (int it = 0; it < 12; ++it) {
            double phi = ang(rng), psi = ang(rng);
            if (std::abs(phi - psi) < 0.05) continue;  // stay off z = w
            double s = 2 * std::cos(phi), t = 2 * std::cos(psi);
            double E = (s + t) * (s + t);
            double F = 2 + s * t;
            double exact = 0;
            for (const auto& [ab, c] : chi.terms)
                exact += c.get_d() * std::pow(E, ab.first) *
                         std::pow(F, ab.second);
            double oracle = quotient_formula(j, k, phi, psi);
            CHECK(std::abs(exact - oracle) <
                  1e-6 * std::max(1.0, std::abs(oracle)));
        }
    }
}

TEST_CASE("theta scaling: chi picks up theta^{(j+2k-6)/2}") {
    Sp4Character chi = build_sp4_character(2, 8);
    // scaling g by s > 0 multiplies mu by s^2 and (r1, r2) by (s, s^2);
    // the character must scale by s^{j+2k-6}
    Rational base = chi.eval_power_sums(1, 3, 1);
    Rational scaled = chi.eval_power_sums(9, 9, 9);  // s = 3
    CHECK(scaled == base * pow_rational(3, 2 + 16 - 6));
}

TEST_CASE("character spot values through the matrix interface") {
    auto cfg = load_algebra(2);
    const QuaternionAlgebra& H = *cfg.algebra;
    Sp4Character chi = build_sp4_character(2, 8);
    Gu2Matrix id = Gu2Matrix::identity(H);
    CHECK(chi.eval(id) == Rational(chi.dim));
    CHECK(chi.eval(Gu2Matrix(-id.m)) == Rational(chi.dim));
    CHECK_THROWS_AS(chi.eval_power_sums(0, 1, 1), error);
}

TEST_CASE("invalid weights are rejected") {
    CHECK_THROWS_AS(build_sp4_character(1, 5), unsupported_error);
    CHECK_THROWS_AS(build_sp4_character(2, 2), unsupported_error);
}

TEST_CASE("SU(2) characters: dimensions and spot values") {
    Su2Character c0 = build_su2_character(0);
    CHECK(c0.eval_scaled(1, 5) == 1);

    Su2Character c2 = build_su2_character(2);
    CHECK(c2.eval_scaled(2, 1) == 3);   // x = 1
    CHECK(c2.eval_scaled(0, 1) == -1);  // x = i: eigenvalues +-i

    for (int j = 0; j <= 14; j += 2) {
        Su2Character cj = build_su2_character(j);
        CHECK(cj.eval_scaled(2, 1) == j + 1);  // value at the identity
    }
}

TEST_CASE("SU(2) character agrees with the trace-power recursion") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int p : {2, 3, 7}) {
        auto cfg = load_algebra(p);
        const MaximalOrder& O = *cfg.order;
        for (int j : {2, 4, 8, 12}) {
            Su2Character chi = build_su2_character(j);
            for (int it = 0; it < 30; ++it) {
                OrderElem x{d(rng), d(rng), d(rng), d(rng)};
                if (MaximalOrder::is_zero(x)) continue;
                Int t = O.trd(x), n = O.nrd(x);
                // T_r = trd(x^r) via Cayley-Hamilton: T_r = t T_{r-1} - n T_{r-2}
                std::vector<Rational> T{2, rat_of(t)};
                for (int r = 2; r <= j; ++r)
                    T.push_back(rat_of(t) * T[r - 1] - rat_of(n) * T[r - 2]);
                Rational expect = pow_rational(rat_of(n), j / 2);
                for (int m = 0; m < j / 2; ++m)
                    expect += pow_rational(rat_of(n), m) * T[j - 2 * m];
                CHECK(chi.eval_scaled(rat_of(t), rat_of(n)) == expect);
            }
        }
    }
}
