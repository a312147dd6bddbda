#pragma once

#include <array>
#include <memory>
#include <ostream>
#include <vector>

#include "gu2/quatmat.hpp"
#include "gu2/quaternion.hpp"

// A maximal order O in a definite quaternion algebra, given by a Z-basis.
// Elements of O are held as int64 coordinate vectors in the order basis;
// multiplication/conjugation/norm run through precomputed integer structure
// constants, so the enumeration and group machinery never touches GMP.
// Maximality itself is trusted from the bundled table; ring closure of the
// basis is what we verify here.

namespace gu2 {

using OrderElem = std::array<Int, 4>;  // coordinates w.r.t. the order basis

struct MaximalOrder {
    std::shared_ptr<QuaternionAlgebra> algebra;
    std::array<Quat, 4> basis;

    // 2 * Gram of the reduced-norm form: A2[s][t] = trd(b_s * conj(b_t)),
    // integral with even diagonal; nrd(c) = c^T A2 c / 2
    Int A2[4][4];

    // basis[s] * basis[t] = sum_u mul_sc[s][t][u] * basis[u]
    Int mul_sc[4][4][4];

    // conj(basis[s]) = sum_u conj_sc[s][u] * basis[u]
    Int conj_sc[4][4];

    Int trd_vec[4];      // trd(basis[s])
    OrderElem one_coords{};  // coordinates of 1

    // inverse of the basis matrix, for membership tests of rational quats
    Rational basis_inv[4][4];

    MaximalOrder(std::shared_ptr<QuaternionAlgebra> alg,
                 std::array<Quat, 4> basis_vecs)
        : algebra(std::move(alg)), basis(std::move(basis_vecs)) {
        init();
    }

    const QuaternionAlgebra& alg() const { return *algebra; }

    // ---- element <-> quaternion conversion ------------------------------

    Quat to_quat(const OrderElem& c) const {
        Quat q = Quat::zero(alg());
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t)
                q.c[t] += Rational(static_cast<long>(c[s])) * basis[s].c[t];
        return q;
    }

    // coordinates of an arbitrary quaternion w.r.t. the basis
    std::array<Rational, 4> coords_of(const Quat& q) const {
        std::array<Rational, 4> c{};
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t) c[s] += q.c[t] * basis_inv[t][s];
        return c;
    }

    bool contains(const Quat& q) const {
        for (const Rational& x : coords_of(q))
            if (!is_integer(x)) return false;
        return true;
    }

    OrderElem to_elem(const Quat& q) const {
        auto c = coords_of(q);
        OrderElem e{};
        for (int s = 0; s < 4; ++s) {
            GU2_CHECK(is_integer(c[s]), "quaternion not in the order");
            GU2_CHECK(c[s].get_num().fits_slong_p(), "coordinate overflow");
            e[s] = c[s].get_num().get_si();
        }
        return e;
    }

    // ---- integer arithmetic on order elements ---------------------------

    static OrderElem add(const OrderElem& x, const OrderElem& y) {
        return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]};
    }
    static OrderElem sub(const OrderElem& x, const OrderElem& y) {
        return {x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]};
    }
    static OrderElem neg(const OrderElem& x) {
        return {-x[0], -x[1], -x[2], -x[3]};
    }
    static bool equal(const OrderElem& x, const OrderElem& y) {
        return x[0] == y[0] && x[1] == y[1] && x[2] == y[2] && x[3] == y[3];
    }
    static bool is_zero(const OrderElem& x) {
        return x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0;
    }

    OrderElem mul(const OrderElem& x, const OrderElem& y) const {
        OrderElem r{};
        for (int s = 0; s < 4; ++s) {
            if (x[s] == 0) continue;
            for (int t = 0; t < 4; ++t) {
                if (y[t] == 0) continue;
                Int f = x[s] * y[t];
                const Int* sc = mul_sc[s][t];
                r[0] += f * sc[0];
                r[1] += f * sc[1];
                r[2] += f * sc[2];
                r[3] += f * sc[3];
            }
        }
        return r;
    }

    OrderElem conj(const OrderElem& x) const {
        OrderElem r{};
        for (int s = 0; s < 4; ++s) {
            if (x[s] == 0) continue;
            for (int u = 0; u < 4; ++u) r[u] += x[s] * conj_sc[s][u];
        }
        return r;
    }

    Int nrd(const OrderElem& x) const {
        Int acc = 0;
        for (int s = 0; s < 4; ++s) {
            if (x[s] == 0) continue;
            for (int t = 0; t < 4; ++t) acc += x[s] * A2[s][t] * x[t];
        }
        GU2_CHECK((acc & 1) == 0, "norm form produced an odd doubled value");
        return acc / 2;
    }

    Int trd(const OrderElem& x) const {
        return x[0] * trd_vec[0] + x[1] * trd_vec[1] + x[2] * trd_vec[2] +
               x[3] * trd_vec[3];
    }

    // exact division by a positive integer; returns false if not divisible
    static bool divide_exact(const OrderElem& x, Int m, OrderElem& out) {
        for (int s = 0; s < 4; ++s) {
            if (x[s] % m != 0) return false;
            out[s] = x[s] / m;
        }
        return true;
    }

    OrderElem one() const { return one_coords; }

   private:
    void init() {
        // invert the basis matrix B (rows = basis vectors in (1,i,j,k))
        Rational B[4][8];
        for (int s = 0; s < 4; ++s) {
            for (int t = 0; t < 4; ++t) B[s][t] = basis[s].c[t];
            for (int t = 4; t < 8; ++t) B[s][t] = (t - 4 == s) ? 1 : 0;
        }
        for (int col = 0; col < 4; ++col) {
            int piv = -1;
            for (int r = col; r < 4; ++r)
                if (B[r][col] != 0) {
                    piv = r;
                    break;
                }
            GU2_INPUT_CHECK(piv >= 0, data_error, "order basis is singular");
            if (piv != col)
                for (int t = 0; t < 8; ++t) std::swap(B[piv][t], B[col][t]);
            Rational d = B[col][col];
            for (int t = 0; t < 8; ++t) B[col][t] /= d;
            for (int r = 0; r < 4; ++r) {
                if (r == col || B[r][col] == 0) continue;
                Rational f = B[r][col];
                for (int t = 0; t < 8; ++t) B[r][t] -= f * B[col][t];
            }
        }
        // B was row-basis: quat coords q = c^T B, so c = q B^{-1} with the
        // inverse acting on coordinate columns; store (B^{-1})[t][s]
        for (int t = 0; t < 4; ++t)
            for (int s = 0; s < 4; ++s) basis_inv[t][s] = B[t][s + 4];

        auto to_int = [](const Rational& r, const char* what) -> Int {
            GU2_INPUT_CHECK(is_integer(r), data_error,
                            std::string("order data not integral: ") + what);
            return static_cast<Int>(r.get_num().get_si());
        };

        // structure constants of multiplication and conjugation
        for (int s = 0; s < 4; ++s) {
            for (int t = 0; t < 4; ++t) {
                Quat prod = basis[s] * basis[t];
                auto c = coords_of(prod);
                for (int u = 0; u < 4; ++u)
                    mul_sc[s][t][u] = to_int(c[u], "basis product");
            }
            auto cc = coords_of(basis[s].conj());
            for (int u = 0; u < 4; ++u)
                conj_sc[s][u] = to_int(cc[u], "basis conjugate");
            trd_vec[s] = to_int(basis[s].trd(), "basis trace");
        }

        // doubled Gram matrix of the norm form
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t) {
                Rational v = (basis[s] * basis[t].conj()).trd();
                A2[s][t] = to_int(v, "trace pairing");
            }
        for (int s = 0; s < 4; ++s)
            GU2_INPUT_CHECK(A2[s][s] > 0 && A2[s][s] % 2 == 0, data_error,
                            "norm form diagonal must be positive even");

        auto c1 = coords_of(Quat::one(alg()));
        for (int s = 0; s < 4; ++s) one_coords[s] = to_int(c1[s], "unit");
    }
};

inline std::ostream& print_elem(std::ostream& os, const MaximalOrder& O,
                                const OrderElem& x) {
    return os << O.to_quat(x);
}

// canonical element ordering: lexicographic on basis coordinates
inline bool elem_less(const OrderElem& x, const OrderElem& y) {
    for (int s = 0; s < 4; ++s)
        if (x[s] != y[s]) return x[s] < y[s];
    return false;
}

inline std::uint64_t elem_hash(const OrderElem& x) {
    std::uint64_t h = 1469598103934665603ull;
    for (int s = 0; s < 4; ++s) {
        h ^= static_cast<std::uint64_t>(x[s]);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace gu2
