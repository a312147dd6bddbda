#include <complex>
#include <random>

#include "doctest.h"
#include "gu2/algebra_table.hpp"
#include "gu2/quatmat.hpp"
#include "gu2/surd.hpp"

using namespace gu2;

namespace {

Quat rnd_quat(const QuaternionAlgebra& A, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-5, 5);
    return {A, d(rng), d(rng), d(rng), d(rng)};
}

// the explicit 4x4 complex embedding, used only as a test oracle
std::array<std::complex<double>, 16> embed_complex(const QuatMat2& g) {
    double a = g.algebra().a.get_d();
    double b = g.algebra().b.get_d();
    std::complex<double> sa = std::sqrt(std::complex<double>(a, 0.0));
    auto plus = [&](const Quat& x, int lo, int hi) {
        return x.c[lo].get_d() + x.c[hi].get_d() * sa;
    };
    auto minus = [&](const Quat& x, int lo, int hi) {
        return x.c[lo].get_d() - x.c[hi].get_d() * sa;
    };
    const Quat &al = g.e[0], &be = g.e[1], &ga = g.e[2], &de = g.e[3];
    return {plus(al, 0, 1),      plus(be, 0, 1),      plus(al, 2, 3),
            plus(be, 2, 3),      plus(ga, 0, 1),      plus(de, 0, 1),
            plus(ga, 2, 3),      plus(de, 2, 3),      b * minus(al, 2, 3),
            b * minus(be, 2, 3), minus(al, 0, 1),     minus(be, 0, 1),
            b * minus(ga, 2, 3), b * minus(de, 2, 3), minus(ga, 0, 1),
            minus(de, 0, 1)};
}

std::complex<double> mat4_trace(const std::array<std::complex<double>, 16>& m) {
    return m[0] + m[5] + m[10] + m[15];
}

std::complex<double> mat4_trace_sq(
    const std::array<std::complex<double>, 16>& m) {
    std::complex<double> t = 0;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) t += m[4 * i + k] * m[4 * k + i];
    return t;
}

}  // namespace

TEST_CASE("defining relations and bundled norms") {
    auto cfg2 = load_algebra(2);
    const QuaternionAlgebra& H = *cfg2.algebra;
    Quat i{H, 0, 1, 0, 0}, j{H, 0, 0, 1, 0}, k{H, 0, 0, 0, 1};
    CHECK(i * j == k);
    CHECK(j * i == -k);
    CHECK((i * i).c[0] == H.a);

    // mu = i - k for p = 2 has norm p
    Quat mu = i - k;
    CHECK((mu * mu.conj()).c[0] == 2);
    CHECK(mu.nrd() == 2);

    // lambda = 1 + i for p = 3 has norm p - 1
    auto cfg3 = load_algebra(3);
    CHECK(cfg3.lambda.nrd() == 2);
    CHECK(cfg3.mu.nrd() == 3);
}

TEST_CASE("norm multiplicativity, conjugation, Cayley-Hamilton") {
    std::mt19937_64 rng(42);
    for (int p : {2, 3, 5, 7, 11}) {
        auto cfg = load_algebra(p);
        for (int it = 0; it < 60; ++it) {
            Quat x = rnd_quat(*cfg.algebra, rng);
            Quat y = rnd_quat(*cfg.algebra, rng);
            CHECK((x * y).nrd() == x.nrd() * y.nrd());
            CHECK((x * y).conj() == y.conj() * x.conj());
            // x^2 - tr(x) x + N(x) = 0
            Quat lhs = x * x - x.trd() * x +
                       Quat::scalar(*cfg.algebra, x.nrd());
            CHECK(lhs.is_zero());
            CHECK(x.nrd() >= 0);
            CHECK((x.nrd() == 0) == x.is_zero());
        }
    }
}

TEST_CASE("algebra mismatch is rejected") {
    auto c2 = load_algebra(2);
    auto c3 = load_algebra(3);
    Quat x = Quat::one(*c2.algebra);
    Quat y = Quat::one(*c3.algebra);
    CHECK_THROWS_AS((void)(x * y), algebra_mismatch_error);
}

TEST_CASE("GU2 identity and unit-similitude inverses") {
    auto cfg = load_algebra(2);
    const QuaternionAlgebra& H = *cfg.algebra;
    Gu2Matrix I = Gu2Matrix::identity(H);
    CHECK((I * I).m == I.m);
    CHECK(I.mu == 1);

    // any mu = 1 matrix times its conj-transpose is the identity
    Quat u{H, Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    REQUIRE(u.nrd() == 1);
    Gu2Matrix d(QuatMat2{u, Quat::zero(H), Quat::zero(H), u.conj()});
    CHECK(d.mu == 1);
    CHECK((d.m * d.m.conj_transpose()) == QuatMat2::identity(H));
}

TEST_CASE("similitude is multiplicative") {
    auto cfg = load_algebra(2);
    const QuaternionAlgebra& H = *cfg.algebra;
    Quat x{H, 1, 1, 0, 0};  // norm 2
    Gu2Matrix h(QuatMat2{x, Quat::zero(H), Quat::zero(H), x});
    CHECK(h.mu == 2);
    Quat u{H, 0, 1, 0, 0};
    Gu2Matrix w(QuatMat2{Quat::zero(H), u, u.conj(), Quat::zero(H)});
    CHECK(w.mu == 1);
    Gu2Matrix prod = h * w;  // constructor re-verifies the identity
    CHECK(prod.mu == 2);
}

TEST_CASE("embedding power sums: identity and scalar units") {
    auto cfg = load_algebra(3);
    const QuaternionAlgebra& A = *cfg.algebra;
    Rational r1, r2;
    embed_gsp4_power_sums(QuatMat2::identity(A), r1, r2);
    CHECK(r1 == 4);
    CHECK(r2 == 4);

    // diag(u,u) for a unit with trd = 1, nrd = 1: tr = 2, tr of square = -2
    Quat u{A, Rational(1, 2), 0, Rational(1, 2), 0};
    REQUIRE(u.nrd() == 1);
    REQUIRE(u.trd() == 1);
    embed_gsp4_power_sums(QuatMat2{u, Quat::zero(A), Quat::zero(A), u}, r1,
                          r2);
    CHECK(r1 == 2);
    CHECK(r2 == -2);
}

TEST_CASE("embedding power sums agree with the explicit 4x4 matrix") {
    std::mt19937_64 rng(7);
    for (int p : {2, 3, 5, 7}) {
        auto cfg = load_algebra(p);
        for (int it = 0; it < 25; ++it) {
            QuatMat2 g{rnd_quat(*cfg.algebra, rng), rnd_quat(*cfg.algebra, rng),
                       rnd_quat(*cfg.algebra, rng),
                       rnd_quat(*cfg.algebra, rng)};
            Rational r1, r2;
            embed_gsp4_power_sums(g, r1, r2);
            auto M = embed_complex(g);
            auto t1 = mat4_trace(M);
            auto t2 = mat4_trace_sq(M);
            CHECK(std::abs(t1.imag()) < 1e-9);
            CHECK(std::abs(t2.imag()) < 1e-9);
            CHECK(std::abs(t1.real() - r1.get_d()) < 1e-9);
            CHECK(std::abs(t2.real() - r2.get_d()) < 1e-9);
        }
    }
}

TEST_CASE("quadratic surd arithmetic for a fixed radicand") {
    QuadraticSurd x(Rational(-933), Rational(3), 1969);
    CHECK(x.norm() == 852768);  // 933^2 - 9*1969
    QuadraticSurd y = x * x.conj();
    CHECK(y.v == 0);
    CHECK(y.u == 852768);
    QuadraticSurd q = x / x;
    CHECK(q == QuadraticSurd(Rational(1), Rational(0), 1969));
}

TEST_CASE("bundled config matches the shipped data file byte for byte") {
    std::string path = std::string(GU2_BUNDLED_DATA_DIR) + "/algebras.cfg";
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str() == builtin_algebra_table());
}
