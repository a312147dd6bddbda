#pragma once

#include <array>
#include <ostream>

#include "gu2/quaternion.hpp"

// 2x2 matrices over a quaternion algebra and the similitude group
// GU_2(D) = { g in M_2(D) : g * conj(g)^T = mu(g) * I }.  conj is entrywise
// quaternion conjugation.  Every Gu2Matrix in the library is checked against
// the defining identity at construction; mu is cached.

namespace gu2 {

struct QuatMat2 {
    // row-major [[e0, e1], [e2, e3]]
    std::array<Quat, 4> e;

    QuatMat2() = default;
    QuatMat2(Quat a, Quat b, Quat c, Quat d)
        : e{std::move(a), std::move(b), std::move(c), std::move(d)} {}

    static QuatMat2 identity(const QuaternionAlgebra& A) {
        return {Quat::one(A), Quat::zero(A), Quat::zero(A), Quat::one(A)};
    }

    const QuaternionAlgebra& algebra() const { return *e[0].alg; }

    QuatMat2 conj_transpose() const {
        return {e[0].conj(), e[2].conj(), e[1].conj(), e[3].conj()};
    }

    QuatMat2 entrywise_conj() const {
        return {e[0].conj(), e[1].conj(), e[2].conj(), e[3].conj()};
    }

    QuatMat2 operator-() const { return {-e[0], -e[1], -e[2], -e[3]}; }
};

inline QuatMat2 operator*(const QuatMat2& x, const QuatMat2& y) {
    // order matters entrywise: rows of x times columns of y
    return {x.e[0] * y.e[0] + x.e[1] * y.e[2],
            x.e[0] * y.e[1] + x.e[1] * y.e[3],
            x.e[2] * y.e[0] + x.e[3] * y.e[2],
            x.e[2] * y.e[1] + x.e[3] * y.e[3]};
}

inline QuatMat2 operator*(const Rational& s, const QuatMat2& x) {
    return {s * x.e[0], s * x.e[1], s * x.e[2], s * x.e[3]};
}

inline bool operator==(const QuatMat2& x, const QuatMat2& y) {
    return x.e[0] == y.e[0] && x.e[1] == y.e[1] && x.e[2] == y.e[2] &&
           x.e[3] == y.e[3];
}
inline bool operator!=(const QuatMat2& x, const QuatMat2& y) {
    return !(x == y);
}

inline int compare(const QuatMat2& x, const QuatMat2& y) {
    for (int t = 0; t < 4; ++t) {
        int c = compare(x.e[t], y.e[t]);
        if (c != 0) return c;
    }
    return 0;
}
inline bool operator<(const QuatMat2& x, const QuatMat2& y) {
    return compare(x, y) < 0;
}

inline bool is_scalar_matrix(const QuatMat2& m, const Rational& s) {
    const QuaternionAlgebra& A = m.algebra();
    return m.e[0] == Quat::scalar(A, s) && m.e[3] == Quat::scalar(A, s) &&
           m.e[1].is_zero() && m.e[2].is_zero();
}

inline std::string key_of(const QuatMat2& m) {
    std::string s;
    for (int t = 0; t < 4; ++t) s += key_of(m.e[t]);
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const QuatMat2& m) {
    return os << "[[" << m.e[0] << ", " << m.e[1] << "], [" << m.e[2] << ", "
              << m.e[3] << "]]";
}

// computes mu with g * conj(g)^T = mu I, throwing if no such scalar exists
inline Rational similitude_of(const QuatMat2& g) {
    QuatMat2 h = g * g.conj_transpose();
    const Quat& d0 = h.e[0];
    GU2_CHECK(d0.c[1] == 0 && d0.c[2] == 0 && d0.c[3] == 0,
              "g*conj(g)^T has non-scalar diagonal");
    GU2_CHECK(h.e[3] == Quat::scalar(g.algebra(), d0.c[0]),
              "g*conj(g)^T diagonal entries differ");
    GU2_CHECK(h.e[1].is_zero() && h.e[2].is_zero(),
              "g*conj(g)^T has nonzero off-diagonal entries");
    return d0.c[0];
}

struct Gu2Matrix {
    QuatMat2 m;
    Rational mu;  // cached similitude; re-derivable from m

    Gu2Matrix() = default;

    // verifies the defining relation exactly
    explicit Gu2Matrix(QuatMat2 mat) : m(std::move(mat)) {
        mu = similitude_of(m);
        GU2_CHECK(mu > 0, "similitude must be positive");
    }

    static Gu2Matrix identity(const QuaternionAlgebra& A) {
        return Gu2Matrix(QuatMat2::identity(A));
    }

    // inverse via conj-transpose: g^-1 = conj(g)^T / mu
    Gu2Matrix inverse() const {
        QuatMat2 inv = m.conj_transpose();
        Rational s = 1 / mu;
        Gu2Matrix out;
        out.m = s * inv;
        out.mu = s;
        return out;
    }
};

inline Gu2Matrix operator*(const Gu2Matrix& x, const Gu2Matrix& y) {
    Gu2Matrix out;
    out.m = x.m * y.m;
    out.mu = x.mu * y.mu;
    // mu is multiplicative; re-derive to catch upstream corruption
    GU2_CHECK(similitude_of(out.m) == out.mu,
              "similitude not multiplicative on product");
    return out;
}

inline bool operator==(const Gu2Matrix& x, const Gu2Matrix& y) {
    return x.m == y.m;
}

// Power sums of the 4x4 symplectic embedding of g = [[alpha,beta],
// [gamma,delta]].  The embedded matrix A has tr(A) = trd(alpha)+trd(delta)
// and tr(A^2) = trd of the diagonal of g^2; the sqrt(a) parts cancel in
// pairs, so both are rational.  With mu(g) = theta the eigenvalues of A are
// sqrt(theta) {z, zbar, w, wbar} on the unit circle, giving
//   e1^2 = r1^2/theta,   e2 = (r1^2 - r2)/(2 theta)
// for the elementary symmetric functions of z, zbar, w, wbar.
inline void embed_gsp4_power_sums(const QuatMat2& g, Rational& r1,
                                  Rational& r2) {
    const Quat& al = g.e[0];
    const Quat& be = g.e[1];
    const Quat& ga = g.e[2];
    const Quat& de = g.e[3];
    r1 = al.trd() + de.trd();
    r2 = (al * al + be * ga).trd() + (ga * be + de * de).trd();
}

}  // namespace gu2
