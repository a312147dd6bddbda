#pragma once

#include <array>
#include <ostream>
#include <string>

#include "gu2/rational.hpp"

// Definite rational quaternion algebras (a,b/Q): i^2 = a, j^2 = b, k = ij =
// -ji, so k^2 = -ab.  Elements carry exact rational coordinates in the
// (1,i,j,k) basis.  Reduced norm N(x) = x*conj(x), reduced trace tr(x) =
// x + conj(x); both land in Q.

namespace gu2 {

struct QuaternionAlgebra {
    Rational a;        // i^2
    Rational b;        // j^2
    int ramified_prime = 0;

    QuaternionAlgebra(Rational a_, Rational b_, int p)
        : a(std::move(a_)), b(std::move(b_)), ramified_prime(p) {
        GU2_INPUT_CHECK(a < 0 && b < 0, data_error,
                        "algebra must be definite (a < 0, b < 0)");
        GU2_INPUT_CHECK(p >= 2, data_error, "ramified prime must be >= 2");
    }

    bool operator==(const QuaternionAlgebra& o) const {
        return a == o.a && b == o.b && ramified_prime == o.ramified_prime;
    }
    bool operator!=(const QuaternionAlgebra& o) const { return !(*this == o); }
};

struct Quat {
    std::array<Rational, 4> c{};  // x0 + x1 i + x2 j + x3 k
    const QuaternionAlgebra* alg = nullptr;

    Quat() = default;
    Quat(const QuaternionAlgebra& A, Rational x0, Rational x1, Rational x2,
         Rational x3)
        : c{std::move(x0), std::move(x1), std::move(x2), std::move(x3)},
          alg(&A) {}

    static Quat zero(const QuaternionAlgebra& A) { return {A, 0, 0, 0, 0}; }
    static Quat one(const QuaternionAlgebra& A) { return {A, 1, 0, 0, 0}; }
    static Quat scalar(const QuaternionAlgebra& A, const Rational& s) {
        return {A, s, 0, 0, 0};
    }

    bool is_zero() const {
        return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0;
    }

    Quat conj() const {
        return {*alg, c[0], -c[1], -c[2], -c[3]};
    }

    Rational trd() const { return 2 * c[0]; }

    Rational nrd() const {
        const Rational& a = alg->a;
        const Rational& b = alg->b;
        return c[0] * c[0] - a * c[1] * c[1] - b * c[2] * c[2] +
               a * b * c[3] * c[3];
    }

    Quat operator-() const { return {*alg, -c[0], -c[1], -c[2], -c[3]}; }

    // inverse of a nonzero element: conj(x)/N(x)
    Quat inverse() const {
        Rational n = nrd();
        GU2_INPUT_CHECK(n != 0, error, "inverse of zero quaternion");
        Quat q = conj();
        for (auto& x : q.c) x /= n;
        return q;
    }
};

inline void require_same_algebra(const Quat& x, const Quat& y) {
    if (x.alg != y.alg && !(x.alg && y.alg && *x.alg == *y.alg))
        throw algebra_mismatch_error("operands from different algebras");
}

inline Quat operator+(const Quat& x, const Quat& y) {
    require_same_algebra(x, y);
    return {*x.alg, x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2],
            x.c[3] + y.c[3]};
}

inline Quat operator-(const Quat& x, const Quat& y) {
    require_same_algebra(x, y);
    return {*x.alg, x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2],
            x.c[3] - y.c[3]};
}

inline Quat operator*(const Quat& x, const Quat& y) {
    require_same_algebra(x, y);
    const Rational& a = x.alg->a;
    const Rational& b = x.alg->b;
    const auto& u = x.c;
    const auto& v = y.c;
    return {*x.alg,
            u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] -
                a * b * u[3] * v[3],
            u[0] * v[1] + u[1] * v[0] - b * u[2] * v[3] + b * u[3] * v[2],
            u[0] * v[2] + u[2] * v[0] + a * u[1] * v[3] - a * u[3] * v[1],
            u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1]};
}

inline Quat operator*(const Rational& s, const Quat& x) {
    return {*x.alg, s * x.c[0], s * x.c[1], s * x.c[2], s * x.c[3]};
}

inline bool operator==(const Quat& x, const Quat& y) {
    return x.c[0] == y.c[0] && x.c[1] == y.c[1] && x.c[2] == y.c[2] &&
           x.c[3] == y.c[3];
}
inline bool operator!=(const Quat& x, const Quat& y) { return !(x == y); }

// lexicographic on coordinates; used for canonical orderings
inline int compare(const Quat& x, const Quat& y) {
    for (int t = 0; t < 4; ++t) {
        int c = cmp(x.c[t], y.c[t]);
        if (c != 0) return c;
    }
    return 0;
}
inline bool operator<(const Quat& x, const Quat& y) { return compare(x, y) < 0; }

inline std::ostream& operator<<(std::ostream& os, const Quat& x) {
    static const char* basis[4] = {"", "i", "j", "k"};
    bool printed = false;
    for (int t = 0; t < 4; ++t) {
        if (x.c[t] == 0) continue;
        if (printed && x.c[t] > 0) os << "+";
        if (t > 0 && x.c[t] == 1) {
        } else if (t > 0 && x.c[t] == -1) {
            os << "-";
        } else {
            os << x.c[t];
            if (t > 0) os << "*";
        }
        os << basis[t];
        printed = true;
    }
    if (!printed) os << "0";
    return os;
}

inline std::string key_of(const Quat& x) {
    std::string s;
    for (int t = 0; t < 4; ++t) {
        s += x.c[t].get_str();
        s += ',';
    }
    return s;
}

}  // namespace gu2
