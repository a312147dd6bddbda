#pragma once

#include <unordered_map>
#include <unordered_set>

#include "gu2/genus.hpp"

// Left-coset representatives for the Hecke operator T_{u,q} at a prime
// q != p.
//
// Production route: U_2 u U_2 = union of x_i U_2 over [x_i] in
// Y_q / Gamma^(2), so reducing Y_q modulo right multiplication by Gamma^(2)
// gives the representatives.  The reduction happens in the conjugated
// integral model: right Gamma^(2)-orbits of Y_q correspond exactly to right
// W_1-orbits of W_q.  The orbit count must equal the Ihara degree
// (q+1)(q^2+1) and every orbit must have size |Gamma^(2)| (the action is
// free because the matrices are invertible).
//
// Validation route (p = 2, 3 where both class numbers are one): the explicit
// construction over GU_2(D)_n cap M_2(O)^x via unit-orbit representatives of
// the norm lists, with the anti-diagonal identification in the k = n-1 slice
// and the +-pairing that halves the middle slice for even n.

namespace gu2 {

inline bool is_prime_int(Int n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct HeckeRepSet {
    int p = 0;
    Int q = 0;
    std::vector<WMat> w_reps;       // engine model, one per coset
    std::vector<Gu2Matrix> reps;    // Y-space, each with similitude q
};

namespace detail {

struct WMatIndex {
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
    const std::vector<WMat>* items = nullptr;

    explicit WMatIndex(const std::vector<WMat>& v) : items(&v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            buckets[wmat_hash(v[i])].push_back(i);
    }
    // returns items->size() when absent
    std::size_t find(const WMat& m) const {
        auto it = buckets.find(wmat_hash(m));
        if (it != buckets.end())
            for (std::size_t i : it->second)
                if (wmat_equal((*items)[i], m)) return i;
        return items->size();
    }
};

}  // namespace detail

// partitions W_q into right W_1-orbits; representative = first element of
// each orbit in the canonical sorted order (hence deterministic)
inline HeckeRepSet hecke_reps_from_Y(const GenusData& G,
                                     const FiniteGroup& gamma2, Int q,
                                     const std::vector<WMat>& Wq) {
    GU2_INPUT_CHECK(is_prime_int(q), unsupported_error,
                    "Hecke prime q must be prime");
    GU2_INPUT_CHECK(q != G.p, unsupported_error,
                    "no Hecke operator at the ramified prime");
    const MaximalOrder& O = G.O();

    detail::WMatIndex index(Wq);
    std::vector<bool> assigned(Wq.size(), false);
    HeckeRepSet out;
    out.p = G.p;
    out.q = q;
    for (std::size_t i = 0; i < Wq.size(); ++i) {
        if (assigned[i]) continue;
        std::size_t orbit = 0;
        for (const WMat& om : gamma2.w_elements) {
            std::size_t idx = index.find(wmul(O, Wq[i], om));
            GU2_CHECK(idx < Wq.size(), "orbit left W_q");
            GU2_CHECK(!(wmat_equal(Wq[idx], Wq[i]) && orbit > 0 && idx != i),
                      "orbit revisited its base point");
            if (!assigned[idx]) ++orbit;
            assigned[idx] = true;
        }
        GU2_CHECK(orbit == gamma2.size(), "coset orbit is not free");
        out.w_reps.push_back(Wq[i]);
    }

    Int degree = (q + 1) * (q * q + 1);
    if (static_cast<Int>(out.w_reps.size()) != degree)
        throw degree_mismatch_error(
            "coset count " + std::to_string(out.w_reps.size()) +
            " != Ihara degree " + std::to_string(degree));
    for (const WMat& w : out.w_reps)
        out.reps.push_back(w_to_y_element(G, w, q));
    return out;
}

// representatives of X_q under right unit multiplication: the D^x-side
// Hecke representatives (class number one); count must be q + 1
inline std::vector<OrderElem> quat_hecke_reps(const MaximalOrder& O, int p,
                                              Int q, NormListCache& cache) {
    GU2_INPUT_CHECK(is_prime_int(q) && q != p, unsupported_error,
                    "need a prime q != p");
    const NormList& Xq = cache.get(q);
    auto units = cache.get(1).elems;
    auto reps = orbit_reps(O, Xq, units, Side::right);
    if (static_cast<Int>(reps.size()) != q + 1)
        throw degree_mismatch_error("X_q/O^x has " +
                                    std::to_string(reps.size()) +
                                    " classes, expected q+1");
    return reps;
}

// ---- explicit construction (validation route, p in {2,3}) -----------------

namespace detail {

inline Gu2Matrix integral_gu2(const MaximalOrder& O, const OrderElem& a,
                              const OrderElem& b, const OrderElem& c,
                              const OrderElem& d) {
    return Gu2Matrix(QuatMat2{O.to_quat(a), O.to_quat(b), O.to_quat(c),
                              O.to_quat(d)});
}

}  // namespace detail

// representatives for (GU_2(D)_n cap M_2(O)^x) / Gamma^(1): the slices
// R_k for k = m+1..n (n = 2m+1 odd) plus the paired half-slice R'_m for
// n = 2m even.  Valid as T_{u,q} representatives when both class numbers
// are one (p = 2, 3).
inline std::vector<Gu2Matrix> reps_corollary_S(const MaximalOrder& O, Int n,
                                               NormListCache& cache) {
    GU2_INPUT_CHECK(n >= 1, error, "n must be positive");
    std::vector<Gu2Matrix> out;
    if (n == 1) {
        out.push_back(Gu2Matrix::identity(O.alg()));
        return out;
    }
    auto units = cache.get(1).elems;
    Int m = n / 2;

    // full slices k = m+1 .. n
    for (Int k = m + 1; k <= n; ++k) {
        if (k == n - 1) {
            // anti-diagonal identification: [[1, z], [-conj(z), 1]], z in X_{n-1}
            for (const OrderElem& z : cache.get(n - 1).elems)
                out.push_back(detail::integral_gu2(
                    O, O.one(), z, O.neg(O.conj(z)), O.one()));
            continue;
        }
        auto xk = orbit_reps(O, cache.get(k), units, Side::right);
        const NormList& rest = cache.get(n - k);
        for (const OrderElem& xi : xk)
            for (const OrderElem& xj : xk)
                for (const OrderElem& w : rest.elems) {
                    // solve x_i conj(w) + v conj(x_j) = 0:
                    // v = -x_i conj(w) x_j / k, kept only when integral
                    OrderElem num =
                        O.mul(O.mul(O.neg(xi), O.conj(w)), xj);
                    OrderElem v;
                    if (!O.divide_exact(num, k, v)) continue;
                    GU2_CHECK(O.nrd(v) == n - k, "solved v has wrong norm");
                    out.push_back(detail::integral_gu2(O, xi, v, w, xj));
                }
    }

    if (n % 2 == 0) {
        if (m == 1) {
            // R'_1: [[1, z], [-conj(z), 1]] over z in O^x / {+-1}
            for (const OrderElem& z : units) {
                if (elem_less(O.neg(z), z)) continue;  // keep one of each pair
                out.push_back(detail::integral_gu2(
                    O, O.one(), z, O.neg(O.conj(z)), O.one()));
            }
        } else {
            // middle slice with the pairing from the anti-diagonal move:
            // M = [[x_i, v], [w, x_j]] pairs with the unique matrix obtained
            // by multiplying on the right by [[0, conj(w) x_t / m],
            // [conj(v) x_s / m, 0]]; keep the lexicographically smaller one
            auto xm = orbit_reps(O, cache.get(m), units, Side::right);
            const NormList& Xm = cache.get(m);
            auto class_rep = [&](const OrderElem& v) -> OrderElem {
                for (const OrderElem& u : units) {
                    OrderElem c = O.mul(v, u);
                    for (const OrderElem& r : xm)
                        if (MaximalOrder::equal(c, r)) return r;
                }
                throw consistency_error("unit class not among representatives");
            };
            for (const OrderElem& xi : xm)
                for (const OrderElem& xj : xm)
                    for (const OrderElem& w : Xm.elems) {
                        OrderElem num = O.mul(O.mul(O.neg(xi), O.conj(w)), xj);
                        OrderElem v;
                        if (!O.divide_exact(num, m, v)) continue;
                        OrderElem xs = class_rep(v), xt = class_rep(w);
                        OrderElem x = O.mul(O.conj(w), xt);
                        OrderElem y = O.mul(O.conj(v), xs);
                        OrderElem ux, uy;
                        GU2_CHECK(O.divide_exact(x, m, ux) &&
                                      O.divide_exact(y, m, uy),
                                  "pairing units not integral");
                        WMat cur{xi, v, w, xj};
                        WMat other{xs, O.mul(xi, O.mul(O.conj(w), xt)),
                                   O.mul(xj, O.mul(O.conj(v), xs)), xt};
                        OrderElem ob, oc;
                        GU2_CHECK(O.divide_exact(other.e[1], m, ob) &&
                                      O.divide_exact(other.e[2], m, oc),
                                  "paired matrix not integral");
                        other.e[1] = ob;
                        other.e[2] = oc;
                        if (wmat_less(other, cur)) continue;  // partner wins
                        out.push_back(detail::integral_gu2(O, cur.e[0],
                                                           cur.e[1], cur.e[2],
                                                           cur.e[3]));
                    }
        }
    }

    for (const Gu2Matrix& g : out)
        GU2_CHECK(g.mu == rat_of(n), "representative has wrong similitude");
    return out;
}

// membership in Y_theta = GU_2(D)_theta cap g^{-1} M_2(O)^x g
inline bool in_nonprincipal_Y(const GenusData& G, const QuatMat2& m) {
    QuatMat2 w = G.g * m * G.ginv;
    const MaximalOrder& O = G.O();
    return O.contains(w.e[0]) && O.contains(w.e[1]) && O.contains(w.e[2]) &&
           O.contains(w.e[3]);
}

// The explicit representatives are determined up to right multiplication by
// Gamma^(1); to serve the non-principal level they must in addition lie in
// Y_q.  A compatible choice exists within each Gamma^(1)-coset, and this
// picks the canonical (least) one.
inline std::vector<Gu2Matrix> align_to_nonprincipal(
    const GenusData& G, const FiniteGroup& gamma1,
    std::vector<Gu2Matrix> reps) {
    for (Gu2Matrix& a : reps) {
        if (in_nonprincipal_Y(G, a.m)) continue;
        bool found = false;
        Gu2Matrix best;
        for (const Gu2Matrix& g1 : gamma1.elements) {
            Gu2Matrix cand = a * g1;
            if (!in_nonprincipal_Y(G, cand.m)) continue;
            if (!found || compare(cand.m, best.m) < 0) {
                best = cand;
                found = true;
            }
        }
        GU2_CHECK(found,
                  "no non-principal-compatible representative in the "
                  "Gamma^(1) coset");
        a = best;
    }
    return reps;
}

// true iff the two sets generate identical left-coset systems modulo the
// given group: a bijection a -> b with a^{-1} b in Gamma
inline bool reps_equivalent(const std::vector<Gu2Matrix>& setA,
                            const std::vector<Gu2Matrix>& setB,
                            const FiniteGroup& gamma) {
    if (setA.size() != setB.size()) return false;
    std::unordered_set<std::string> gkeys;
    for (const Gu2Matrix& g : gamma.elements) gkeys.insert(key_of(g.m));
    std::vector<bool> used(setB.size(), false);
    for (const Gu2Matrix& a : setA) {
        Gu2Matrix ainv = a.inverse();
        int hit = -1;
        for (std::size_t i = 0; i < setB.size(); ++i) {
            if (gkeys.count(key_of((ainv * setB[i]).m))) {
                if (hit >= 0) return false;  // two partners: not a coset system
                hit = static_cast<int>(i);
            }
        }
        if (hit < 0 || used[hit]) return false;
        used[hit] = true;
    }
    return true;
}

// pairwise coset-freeness: x_i^{-1} x_j in Gamma implies i = j
inline bool reps_pairwise_inequivalent(const std::vector<Gu2Matrix>& reps,
                                       const FiniteGroup& gamma) {
    std::unordered_set<std::string> gkeys;
    for (const Gu2Matrix& g : gamma.elements) gkeys.insert(key_of(g.m));
    for (std::size_t i = 0; i < reps.size(); ++i) {
        Gu2Matrix inv = reps[i].inverse();
        for (std::size_t j = 0; j < reps.size(); ++j) {
            bool same = gkeys.count(key_of((inv * reps[j]).m)) > 0;
            if (same != (i == j)) return false;
        }
    }
    return true;
}

}  // namespace gu2
