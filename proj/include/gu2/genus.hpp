#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "gu2/algebra_table.hpp"
#include "gu2/enumerate.hpp"
#include "gu2/quatmat.hpp"

// Non-principal genus data and the finite groups of the trace formula.
//
// With lambda, mu in O of norms p-1 and p and r = lambda*conj(mu) of trace
// zero, the lattice O^2 g for g = [[1,lambda],[0,mu]] lies in the
// non-principal genus, A = g*conj(g)^T = [[p, r],[conj(r), p]], and
// P = [[1, conj(r)/p],[0, 1]] diagonalizes A to diag(1,p) with P^{-1} =
// entrywise conj of P.  The stabilizer group and Hecke sets are reached
// through
//
//   W_theta = { nu in M_2(O)^x : nu A conj(nu)^T = theta A },
//   Y_theta = g^{-1} W_theta g   (bijective, similitude theta),
//
// and Y_1 is the group Gamma^(2).  W_theta is enumerated entirely in integer
// order coordinates: for nu = [[alpha,beta],[gamma,delta]] with N(gamma) = n
// the constraints say gamma*r + p*delta and p*alpha + conj(r)*gamma run over
// the norm-p(theta*p - n) list and p^2*beta + conj(r)*(gamma r + p delta) +
// p*alpha*r over the norm-p^2*n list, leaving one quaternion equation
//   p*alpha*conj(gamma) + (alpha r + p beta)*conj(gamma r + p delta)
//     = -theta*p*conj(r)
// to filter candidates.  Every produced element is re-verified against the
// defining relation, and additionally against the diagonalized equations
//   N(x) + pN(y) = theta, N(z) + pN(w) = theta*p, x*conj(z) + p*y*conj(w) = 0
// for eta = P nu conj(P) = [[x,y],[z,w]] computed in rational arithmetic.

namespace gu2 {

// integral 2x2 matrix over the order, row-major
struct WMat {
    std::array<OrderElem, 4> e;
};

inline bool wmat_equal(const WMat& x, const WMat& y) {
    for (int t = 0; t < 4; ++t)
        if (!MaximalOrder::equal(x.e[t], y.e[t])) return false;
    return true;
}

inline bool wmat_less(const WMat& x, const WMat& y) {
    for (int t = 0; t < 4; ++t) {
        if (MaximalOrder::equal(x.e[t], y.e[t])) continue;
        return elem_less(x.e[t], y.e[t]);
    }
    return false;
}

inline std::uint64_t wmat_hash(const WMat& x) {
    std::uint64_t h = 14695981039346656037ull;
    for (int t = 0; t < 4; ++t) {
        h ^= elem_hash(x.e[t]);
        h *= 1099511628211ull;
    }
    return h;
}

inline WMat wmul(const MaximalOrder& O, const WMat& x, const WMat& y) {
    WMat r;
    r.e[0] = O.add(O.mul(x.e[0], y.e[0]), O.mul(x.e[1], y.e[2]));
    r.e[1] = O.add(O.mul(x.e[0], y.e[1]), O.mul(x.e[1], y.e[3]));
    r.e[2] = O.add(O.mul(x.e[2], y.e[0]), O.mul(x.e[3], y.e[2]));
    r.e[3] = O.add(O.mul(x.e[2], y.e[1]), O.mul(x.e[3], y.e[3]));
    return r;
}

inline WMat wconj_transpose(const MaximalOrder& O, const WMat& x) {
    return {O.conj(x.e[0]), O.conj(x.e[2]), O.conj(x.e[1]), O.conj(x.e[3])};
}

inline WMat widentity(const MaximalOrder& O) {
    return {O.one(), OrderElem{0, 0, 0, 0}, OrderElem{0, 0, 0, 0}, O.one()};
}

// integer power sums of the symplectic embedding (conjugation-invariant,
// so they agree with the Y-side values)
inline void wmat_power_sums(const MaximalOrder& O, const WMat& m, Int& r1,
                            Int& r2) {
    r1 = O.trd(m.e[0]) + O.trd(m.e[3]);
    OrderElem d0 = O.add(O.mul(m.e[0], m.e[0]), O.mul(m.e[1], m.e[2]));
    OrderElem d1 = O.add(O.mul(m.e[2], m.e[1]), O.mul(m.e[3], m.e[3]));
    r2 = O.trd(d0) + O.trd(d1);
}

// shared norm-list cache (per order instance)
struct NormListCache {
    const MaximalOrder* order = nullptr;
    std::map<Int, NormList> lists;

    explicit NormListCache(const MaximalOrder& O) : order(&O) {}
    const NormList& get(Int n) {
        auto it = lists.find(n);
        if (it == lists.end())
            it = lists.emplace(n, enumerate_norm(*order, n)).first;
        return it->second;
    }
};

namespace detail {

// residue classes of a norm list modulo m*O, keyed on reduced coordinates
struct ResidueIndex {
    Int mod;
    std::unordered_map<std::uint64_t, std::vector<const OrderElem*>> buckets;

    static std::uint64_t key(const OrderElem& e, Int m) {
        std::uint64_t k = 0;
        for (int s = 0; s < 4; ++s)
            k = k * static_cast<std::uint64_t>(m) +
                static_cast<std::uint64_t>(((e[s] % m) + m) % m);
        return k;
    }

    ResidueIndex(const NormList& list, Int m) : mod(m) {
        for (const auto& e : list.elems) buckets[key(e, m)].push_back(&e);
    }

    const std::vector<const OrderElem*>* matches(const OrderElem& e) const {
        auto it = buckets.find(key(e, mod));
        return it == buckets.end() ? nullptr : &it->second;
    }
};

}  // namespace detail

struct GenusData {
    std::shared_ptr<MaximalOrder> order;
    int p = 0;
    OrderElem lambda{}, mu{}, r{}, rbar{};
    QuatMat2 g, ginv, P, Pbar, A;

    const MaximalOrder& O() const { return *order; }
};

// returns the bundled pair when provided, otherwise the first pair in
// deterministic enumeration order over X_{p-1} x X_p with tr(lambda*mubar)=0
inline void find_lambda_mu(const MaximalOrder& O, int p, NormListCache& cache,
                           OrderElem& lambda, OrderElem& mu) {
    const NormList& xl = cache.get(p - 1);
    const NormList& xm = cache.get(p);
    for (const auto& l : xl.elems)
        for (const auto& m : xm.elems)
            if (O.trd(O.mul(l, O.conj(m))) == 0) {
                lambda = l;
                mu = m;
                return;
            }
    throw no_admissible_pair_error(
        "no (lambda, mu) with norms (p-1, p) and tr(lambda*conj(mu)) = 0; "
        "wrong order supplied?");
}

inline GenusData make_genus_data(const AlgebraConfig& cfg) {
    GenusData G;
    G.order = cfg.order;
    G.p = cfg.p;
    const MaximalOrder& O = *G.order;
    G.lambda = O.to_elem(cfg.lambda);
    G.mu = O.to_elem(cfg.mu);
    GU2_INPUT_CHECK(O.nrd(G.lambda) == cfg.p - 1, data_error,
                    "N(lambda) != p - 1");
    GU2_INPUT_CHECK(O.nrd(G.mu) == cfg.p, data_error, "N(mu) != p");
    G.r = O.mul(G.lambda, O.conj(G.mu));
    G.rbar = O.conj(G.r);
    GU2_INPUT_CHECK(O.trd(G.r) == 0, data_error, "tr(lambda*conj(mu)) != 0");
    GU2_CHECK(O.nrd(G.r) == static_cast<Int>(cfg.p) * (cfg.p - 1),
              "N(r) != p(p-1)");

    const QuaternionAlgebra& D = O.alg();
    Quat one = Quat::one(D), zero = Quat::zero(D);
    Quat lam = O.to_quat(G.lambda), muq = O.to_quat(G.mu);
    Quat rq = O.to_quat(G.r);
    Rational pq(cfg.p);

    G.g = QuatMat2{one, lam, zero, muq};
    // g^{-1} = [[1, -lambda*mu^{-1}], [0, mu^{-1}]], mu^{-1} = conj(mu)/p
    Quat mu_inv = Rational(1) / pq * muq.conj();
    G.ginv = QuatMat2{one, -(lam * mu_inv), zero, mu_inv};
    GU2_CHECK(is_scalar_matrix(G.g * G.ginv, 1), "g * g^{-1} != I");
    GU2_CHECK(is_scalar_matrix(G.ginv * G.g, 1), "g^{-1} * g != I");

    G.A = G.g * G.g.conj_transpose();
    GU2_CHECK(G.A.e[0] == Quat::scalar(D, pq) &&
                  G.A.e[3] == Quat::scalar(D, pq) && G.A.e[1] == rq &&
                  G.A.e[2] == rq.conj(),
              "A != [[p, r], [conj(r), p]]");
    // det-like value p^2 - N(r) = p
    GU2_CHECK(pq * pq - rq.nrd() == pq, "p^2 - N(r) != p");

    G.P = QuatMat2{one, Rational(1) / pq * rq.conj(), zero, one};
    G.Pbar = G.P.entrywise_conj();
    GU2_CHECK(is_scalar_matrix(G.P * G.Pbar, 1), "P * conj(P) != I");
    QuatMat2 diag = G.P * G.A * G.P.conj_transpose();
    GU2_CHECK(diag.e[0] == one && diag.e[1].is_zero() &&
                  diag.e[2].is_zero() && diag.e[3] == Quat::scalar(D, pq),
              "P A conj(P)^T != diag(1, p)");
    return G;
}

namespace detail {

// full verification of one candidate: defining relation, the diagonalized
// equation system, and the bottom-left preservation under P-conjugation
inline void verify_W_element(const GenusData& G, Int theta, const WMat& nu) {
    const MaximalOrder& O = G.O();
    const Int p = G.p;

    // nu A conj(nu)^T = theta A in integer arithmetic
    WMat Aw{};
    OrderElem pone{};
    for (int s = 0; s < 4; ++s) pone[s] = p * O.one()[s];
    Aw.e[0] = pone;
    Aw.e[1] = G.r;
    Aw.e[2] = G.rbar;
    Aw.e[3] = pone;
    WMat lhs = wmul(O, wmul(O, nu, Aw), wconj_transpose(O, nu));
    for (int t = 0; t < 4; ++t) {
        OrderElem want{};
        for (int s = 0; s < 4; ++s) want[s] = theta * Aw.e[t][s];
        GU2_CHECK(MaximalOrder::equal(lhs.e[t], want),
                  "nu A conj(nu)^T != theta A");
    }

    // eta = P nu conj(P) in rational arithmetic; check the pre-conjugation
    // equations and Cor-N-style bottom-left preservation
    QuatMat2 nuq{O.to_quat(nu.e[0]), O.to_quat(nu.e[1]), O.to_quat(nu.e[2]),
                 O.to_quat(nu.e[3])};
    QuatMat2 eta = G.P * nuq * G.Pbar;
    GU2_CHECK(eta.e[2] == nuq.e[2], "P-conjugation must fix the bottom-left");
    const Quat &x = eta.e[0], &y = eta.e[1], &z = eta.e[2], &w = eta.e[3];
    Rational th = rat_of(theta), pr = rat_of(p);
    GU2_CHECK(x.nrd() + pr * y.nrd() == th, "N(x) + pN(y) != theta");
    GU2_CHECK(z.nrd() + pr * w.nrd() == th * pr, "N(z) + pN(w) != theta p");
    GU2_CHECK((x * z.conj() + pr * (y * w.conj())).is_zero(),
              "x conj(z) + p y conj(w) != 0");
    GU2_CHECK(x.nrd() == w.nrd(), "N(x) != N(w)");
    GU2_CHECK(z.nrd() == pr * pr * y.nrd(), "N(z) != p^2 N(y)");
}

}  // namespace detail

// enumerates W_theta = { nu in M_2(O)^x : nu A conj(nu)^T = theta A },
// complete, duplicate-free, sorted by coordinate order
inline std::vector<WMat> compute_W_theta(const GenusData& G, Int theta,
                                         NormListCache& cache) {
    GU2_INPUT_CHECK(theta >= 0, error, "theta must be non-negative");
    std::vector<WMat> out;
    if (theta == 0) return out;  // no invertible solutions
    const MaximalOrder& O = G.O();
    const Int p = G.p;

    for (Int n = 0; n <= theta * p; ++n) {
        const NormList& Xn = cache.get(n);
        const NormList& Xmid = cache.get(p * (theta * p - n));
        const NormList& Xbig = cache.get(p * p * n);
        if (Xn.elems.empty() || Xmid.elems.empty() || Xbig.elems.empty())
            continue;
        detail::ResidueIndex mid_mod_p(Xmid, p);
        detail::ResidueIndex big_mod_p2(Xbig, p * p);

        for (const OrderElem& gamma : Xn.elems) {
            OrderElem gr = O.mul(gamma, G.r);
            OrderElem rbg = O.mul(G.rbar, gamma);

            // delta = (c1 - gamma r)/p over c1 = gamma r (mod pO)
            std::vector<OrderElem> deltas;
            if (const auto* m = mid_mod_p.matches(gr))
                for (const OrderElem* c1 : *m) {
                    OrderElem d;
                    if (O.divide_exact(O.sub(*c1, gr), p, d))
                        deltas.push_back(d);
                }
            if (deltas.empty()) continue;

            // alpha = (c2 - conj(r) gamma)/p over c2 = conj(r) gamma (mod pO)
            std::vector<OrderElem> alphas;
            if (const auto* m = mid_mod_p.matches(rbg))
                for (const OrderElem* c2 : *m) {
                    OrderElem a;
                    if (O.divide_exact(O.sub(*c2, rbg), p, a))
                        alphas.push_back(a);
                }
            if (alphas.empty()) continue;

            for (const OrderElem& delta : deltas) {
                OrderElem grpd = gr;  // gamma r + p delta
                for (int s = 0; s < 4; ++s) grpd[s] += p * delta[s];
                OrderElem rb_grpd = O.mul(G.rbar, grpd);
                OrderElem grpd_bar = O.conj(grpd);
                for (const OrderElem& alpha : alphas) {
                    OrderElem ar = O.mul(alpha, G.r);
                    OrderElem base = rb_grpd;  // conj(r)(gamma r + p delta) + p alpha r
                    for (int s = 0; s < 4; ++s) base[s] += p * ar[s];
                    const auto* cand = big_mod_p2.matches(base);
                    if (!cand) continue;
                    for (const OrderElem* c3 : *cand) {
                        OrderElem beta;
                        if (!O.divide_exact(O.sub(*c3, base), p * p, beta))
                            continue;
                        // third equation: p a conj(g) + (a r + p b) conj(g r + p d)
                        //                 = -theta p conj(r)
                        OrderElem arpb = ar;
                        for (int s = 0; s < 4; ++s) arpb[s] += p * beta[s];
                        OrderElem lhs = O.mul(alpha, O.conj(gamma));
                        for (int s = 0; s < 4; ++s) lhs[s] *= p;
                        lhs = O.add(lhs, O.mul(arpb, grpd_bar));
                        OrderElem rhs{};
                        for (int s = 0; s < 4; ++s)
                            rhs[s] = -theta * p * G.rbar[s];
                        if (!MaximalOrder::equal(lhs, rhs)) continue;
                        out.push_back(WMat{alpha, beta, gamma, delta});
                    }
                }
            }
        }
    }

    std::sort(out.begin(), out.end(), wmat_less);
    for (const WMat& nu : out) detail::verify_W_element(G, theta, nu);
    return out;
}

// Phi^{-1}: Y_theta = g^{-1} W_theta g, each element verified to have
// similitude exactly theta
inline Gu2Matrix w_to_y_element(const GenusData& G, const WMat& nu,
                                Int theta) {
    const MaximalOrder& O = G.O();
    QuatMat2 nuq{O.to_quat(nu.e[0]), O.to_quat(nu.e[1]), O.to_quat(nu.e[2]),
                 O.to_quat(nu.e[3])};
    Gu2Matrix y(G.ginv * nuq * G.g);
    GU2_CHECK(y.mu == rat_of(theta), "Y element has wrong similitude");
    return y;
}

inline std::vector<Gu2Matrix> w_to_y(const GenusData& G,
                                     const std::vector<WMat>& W, Int theta) {
    std::vector<Gu2Matrix> out;
    out.reserve(W.size());
    for (const WMat& nu : W) out.push_back(w_to_y_element(G, nu, theta));
    return out;
}

// ---- the finite groups ----------------------------------------------------

struct FiniteGroup {
    enum class Label { gamma1, gamma2 };
    Label label;
    int p = 0;
    std::vector<Gu2Matrix> elements;  // all similitude 1
    // Gamma^(2) only: the conjugated integral matrices W_1 = g Gamma^(2) g^{-1},
    // index-aligned with `elements`; the trace engine works on these
    std::vector<WMat> w_elements;

    std::size_t size() const { return elements.size(); }
};

inline FiniteGroup gamma2_group_from_w(const GenusData& G,
                                       std::vector<WMat> w1) {
    FiniteGroup grp;
    grp.label = FiniteGroup::Label::gamma2;
    grp.p = G.p;
    grp.w_elements = std::move(w1);
    grp.elements = w_to_y(G, grp.w_elements, 1);
    bool has_identity = false;
    WMat id = widentity(G.O());
    for (const WMat& m : grp.w_elements)
        if (wmat_equal(m, id)) has_identity = true;
    GU2_CHECK(has_identity, "Gamma^(2) does not contain the identity");
    return grp;
}

inline FiniteGroup gamma2_group(const GenusData& G, NormListCache& cache) {
    return gamma2_group_from_w(G, compute_W_theta(G, 1, cache));
}

// Gamma^(1) = GU_2(O): diagonal and anti-diagonal matrices with unit entries
inline FiniteGroup gamma1_group(const MaximalOrder& O, int p,
                                NormListCache& cache) {
    FiniteGroup grp;
    grp.label = FiniteGroup::Label::gamma1;
    grp.p = p;
    const NormList& units = cache.get(1);
    const QuaternionAlgebra& D = O.alg();
    for (const OrderElem& a : units.elems)
        for (const OrderElem& b : units.elems) {
            Quat aq = O.to_quat(a), bq = O.to_quat(b);
            grp.elements.emplace_back(
                QuatMat2{aq, Quat::zero(D), Quat::zero(D), bq});
            grp.elements.emplace_back(
                QuatMat2{Quat::zero(D), aq, bq, Quat::zero(D)});
        }
    GU2_CHECK(grp.elements.size() == 2 * units.size() * units.size(),
              "Gamma^(1) size mismatch");
    for (const Gu2Matrix& m : grp.elements)
        GU2_CHECK(m.mu == 1, "Gamma^(1) element with similitude != 1");
    return grp;
}

// ---- mass formula checks ---------------------------------------------------

struct MassReport {
    int p = 0;
    std::size_t gamma2_size = 0;
    Int gamma2_expected = 0;   // 5760/(p^2-1)
    bool gamma2_ok = false;
    bool gamma1_applicable = false;  // only p = 2, 3 have h_1 = 1
    std::size_t gamma1_size = 0;
    Int gamma1_expected = 0;   // 5760/((p-1)(p^2+1))
    bool gamma1_ok = true;

    bool ok() const { return gamma2_ok && gamma1_ok; }
};

inline MassReport mass_check(int p, std::size_t gamma1_size,
                             std::size_t gamma2_size) {
    MassReport rep;
    rep.p = p;
    Int d2 = static_cast<Int>(p) * p - 1;
    GU2_CHECK(5760 % d2 == 0, "p outside the class-number-one range");
    rep.gamma2_expected = 5760 / d2;
    rep.gamma2_size = gamma2_size;
    rep.gamma2_ok = (static_cast<Int>(gamma2_size) == rep.gamma2_expected);

    Int d1 = static_cast<Int>(p - 1) * (static_cast<Int>(p) * p + 1);
    rep.gamma1_applicable = (5760 % d1 == 0);  // p = 2, 3 only
    if (rep.gamma1_applicable) {
        rep.gamma1_expected = 5760 / d1;
        rep.gamma1_size = gamma1_size;
        rep.gamma1_ok = (static_cast<Int>(gamma1_size) == rep.gamma1_expected);
    }
    if (!rep.ok())
        throw class_number_error(
            "mass formula check failed for p = " + std::to_string(p) +
            ": the class-number-one assumption does not hold");
    return rep;
}

}  // namespace gu2
