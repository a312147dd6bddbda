#pragma once

#include <ostream>

#include "gu2/rational.hpp"

// Arithmetic in Q(sqrt(d)) for a single fixed square-free radicand d > 0.
// Only used by cross-checks (quadratic eigenvalue fields, sqrt(mu)
// intermediates); the production paths stay inside Q.

namespace gu2 {

struct QuadraticSurd {
    Rational u;   // rational part
    Rational v;   // coefficient of sqrt(d)
    long d = 1;   // positive square-free radicand

    QuadraticSurd() = default;
    QuadraticSurd(Rational u_, Rational v_, long d_)
        : u(std::move(u_)), v(std::move(v_)), d(d_) {
        GU2_INPUT_CHECK(d > 0, error, "radicand must be positive");
    }

    QuadraticSurd conj() const { return {u, -v, d}; }
    Rational norm() const { return u * u - Rational(d) * v * v; }
    Rational trace() const { return 2 * u; }
    bool is_zero() const { return u == 0 && v == 0; }
};

inline void require_same_radicand(const QuadraticSurd& x,
                                  const QuadraticSurd& y) {
    GU2_INPUT_CHECK(x.d == y.d, error, "mixed radicands");
}

inline QuadraticSurd operator+(const QuadraticSurd& x,
                               const QuadraticSurd& y) {
    require_same_radicand(x, y);
    return {x.u + y.u, x.v + y.v, x.d};
}

inline QuadraticSurd operator-(const QuadraticSurd& x,
                               const QuadraticSurd& y) {
    require_same_radicand(x, y);
    return {x.u - y.u, x.v - y.v, x.d};
}

inline QuadraticSurd operator*(const QuadraticSurd& x,
                               const QuadraticSurd& y) {
    require_same_radicand(x, y);
    return {x.u * y.u + Rational(x.d) * x.v * y.v, x.u * y.v + x.v * y.u, x.d};
}

inline QuadraticSurd operator/(const QuadraticSurd& x,
                               const QuadraticSurd& y) {
    require_same_radicand(x, y);
    Rational n = y.norm();
    GU2_INPUT_CHECK(n != 0, error, "division by zero surd");
    QuadraticSurd z = x * y.conj();
    return {z.u / n, z.v / n, x.d};
}

inline bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
    return x.d == y.d && x.u == y.u && x.v == y.v;
}

inline std::ostream& operator<<(std::ostream& os, const QuadraticSurd& x) {
    return os << x.u << " + " << x.v << "*sqrt(" << x.d << ")";
}

}  // namespace gu2
