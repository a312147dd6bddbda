#pragma once

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gu2/order.hpp"

// Norm-list enumeration: X_n = { x in O : N(x) = n }, complete and sorted.
// The norm form is positive definite, so a Fincke-Pohst style bounded search
// on an exact rational LDL^T decomposition terminates; every bound is
// certified by exact rational comparisons (floating point only seeds the
// endpoint guesses).

namespace gu2 {

struct NormList {
    Int n = 0;
    std::vector<OrderElem> elems;  // sorted by elem_less

    std::size_t size() const { return elems.size(); }
};

namespace detail {

struct Ldl {
    Rational d[4];     // positive pivots
    Rational L[4][4];  // unit lower triangular, L[j][i] for j > i
};

inline Ldl ldl_decompose(const MaximalOrder& O) {
    Rational G[4][4];
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) G[s][t] = rat_of(O.A2[s][t]) / 2;
    Ldl out;
    for (int i = 0; i < 4; ++i) {
        Rational di = G[i][i];
        for (int k = 0; k < i; ++k)
            di -= out.d[k] * out.L[i][k] * out.L[i][k];
        GU2_CHECK(di > 0, "norm form is not positive definite");
        out.d[i] = di;
        for (int j = i + 1; j < 4; ++j) {
            Rational v = G[j][i];
            for (int k = 0; k < i; ++k)
                v -= out.d[k] * out.L[i][k] * out.L[j][k];
            out.L[j][i] = v / di;
        }
    }
    return out;
}

// floor(t + sqrt(B)) for rational t and B >= 0; the float guess is
// corrected by exact comparisons, so the decision path is rational-only
inline Int floor_t_plus_sqrt(const Rational& t, const Rational& B) {
    double guess = t.get_d() + std::sqrt(std::max(0.0, B.get_d()));
    Int m = static_cast<Int>(std::floor(guess));
    auto below_sqrt = [&](const Rational& x) {  // x <= sqrt(B) ?
        if (x <= 0) return true;
        return x * x <= B;
    };
    while (below_sqrt(Rational(static_cast<long>(m + 1)) - t)) ++m;
    while (!below_sqrt(Rational(static_cast<long>(m)) - t)) --m;
    return m;
}

}  // namespace detail

// complete duplicate-free enumeration of {x in O : N(x) = n}
inline NormList enumerate_norm(const MaximalOrder& O, Int n) {
    GU2_INPUT_CHECK(n >= 0, error, "norm must be non-negative");
    NormList out;
    out.n = n;
    if (n == 0) {
        out.elems.push_back(OrderElem{0, 0, 0, 0});
        return out;
    }
    detail::Ldl ldl = detail::ldl_decompose(O);

    // Q(c) = sum_i d_i (c_i + sum_{j>i} L[j][i] c_j)^2; recurse from i = 3
    OrderElem c{};
    Rational target(static_cast<long>(n));

    auto offset_at = [&](int i) {
        Rational off = 0;
        for (int j = i + 1; j < 4; ++j)
            off += ldl.L[j][i] * Rational(static_cast<long>(c[j]));
        return off;
    };

    std::vector<OrderElem> found;
    auto descend = [&](auto&& self, int i, const Rational& budget) -> void {
        Rational off = offset_at(i);
        if (i == 0) {
            // solve d0*(c0 + off)^2 == budget exactly
            Rational want = budget / ldl.d[0];
            if (want < 0) return;
            // want must be the square of a rational: check num/den squares
            BigInt num = want.get_num(), den = want.get_den();
            BigInt rn, rd;
            if (!mpz_perfect_square_p(num.get_mpz_t()) ||
                !mpz_perfect_square_p(den.get_mpz_t()))
                return;
            mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
            Rational root(rn, rd);
            for (int sign = 0; sign < (root == 0 ? 1 : 2); ++sign) {
                Rational c0 = (sign == 0 ? root : -root) - off;
                if (!is_integer(c0)) continue;
                GU2_CHECK(c0.get_num().fits_slong_p(), "coordinate overflow");
                c[0] = c0.get_num().get_si();
                found.push_back(c);
            }
            return;
        }
        // window |c_i + off| <= sqrt(budget/d_i)
        Rational B = budget / ldl.d[i];
        Int hi = detail::floor_t_plus_sqrt(-off, B);
        Int lo = -detail::floor_t_plus_sqrt(off, B);
        for (Int v = lo; v <= hi; ++v) {
            c[i] = v;
            Rational t = Rational(static_cast<long>(v)) + off;
            self(self, i - 1, budget - ldl.d[i] * t * t);
        }
        c[i] = 0;
    };
    descend(descend, 3, target);

    std::sort(found.begin(), found.end(), elem_less);
    for (const auto& e : found) GU2_CHECK(O.nrd(e) == n, "norm mismatch");
    out.elems = std::move(found);
    return out;
}

// O^x = norm-one elements; inverse of a unit is its conjugate
inline std::vector<OrderElem> unit_group(const MaximalOrder& O) {
    NormList x1 = enumerate_norm(O, 1);
    return x1.elems;
}

enum class Side { left, right };

// one representative per orbit of the unit action on a norm list; the
// representative is the elem_less-least member, found by marking whole
// orbits in sorted order (no freeness assumption)
inline std::vector<OrderElem> orbit_reps(const MaximalOrder& O,
                                         const NormList& list,
                                         const std::vector<OrderElem>& units,
                                         Side side) {
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;
    for (std::size_t idx = 0; idx < list.elems.size(); ++idx)
        index[elem_hash(list.elems[idx])].push_back(idx);
    auto locate = [&](const OrderElem& e) -> std::size_t {
        auto it = index.find(elem_hash(e));
        GU2_CHECK(it != index.end(), "orbit left the norm list");
        for (std::size_t idx : it->second)
            if (MaximalOrder::equal(list.elems[idx], e)) return idx;
        throw consistency_error("orbit left the norm list");
    };

    std::vector<bool> seen(list.elems.size(), false);
    std::vector<OrderElem> reps;
    for (std::size_t idx = 0; idx < list.elems.size(); ++idx) {
        if (seen[idx]) continue;
        reps.push_back(list.elems[idx]);
        for (const OrderElem& u : units) {
            OrderElem y = (side == Side::right)
                              ? O.mul(list.elems[idx], u)
                              : O.mul(u, list.elems[idx]);
            seen[locate(y)] = true;
        }
    }
    return reps;
}

// debug dump: one element per line, four basis coordinates
inline void dump_norm_list(std::ostream& os, const NormList& list) {
    for (const auto& e : list.elems)
        os << e[0] << " " << e[1] << " " << e[2] << " " << e[3] << "\n";
}

}  // namespace gu2
