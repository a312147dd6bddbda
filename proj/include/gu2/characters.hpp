#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gu2/quatmat.hpp"

// Exact character evaluation for the trace formula.
//
// For USp(4) the character of the irreducible V_{j,k-3} (Young diagram
// (j+k-3, k-3), j even) is computed once per (j,k) as an integer polynomial
// in the invariants E = e1^2 and F = e2, where e1, e2 are the elementary
// symmetric functions of the four unit-circle eigenvalues z, zbar, w, wbar.
// Construction: formally expand the Weyl quotient
//
//   [ w^{j+1}(w^{2(k-2)}-1)(z^{2(j+k-1)}-1)
//   - z^{j+1}(z^{2(k-2)}-1)(w^{2(j+k-1)}-1) ]
//   / [ (z^2-1)(w^2-1)(zw-1)(z-w)(zw)^{j+k-3} ]
//
// by exact polynomial division (the division must be remainder-free), then
// rewrite the Weyl-invariant Laurent polynomial through s = z + 1/z,
// t = w + 1/w and the elementary basis (s+t, st).  j even forces invariance
// under (z,w) -> (-z,-w), so only even powers of e1 survive and the result
// lives in Z[E,F].  A matrix with similitude theta then evaluates through
//
//   E = r1^2/theta,  F = (r1^2 - r2)/(2 theta),
//   chi(g) = theta^{(j+2k-6)/2} * P(E,F)
//
// with (r1, r2) the rational power sums of the symplectic embedding.  All
// singular-locus case analysis of the quotient formula disappears: the
// polynomial is total.

namespace gu2 {

namespace detail {

// dense polynomial grid over Z[z,w], exponents 0..ze x 0..we
struct PolyZW {
    int zdeg = 0, wdeg = 0;
    std::vector<BigInt> c;  // (ze)*(wdeg+1) + ew

    PolyZW(int zd, int wd) : zdeg(zd), wdeg(wd), c((zd + 1) * (wd + 1)) {}
    BigInt& at(int ez, int ew) { return c[ez * (wdeg + 1) + ew]; }
    const BigInt& at(int ez, int ew) const { return c[ez * (wdeg + 1) + ew]; }
};

// exact division by z^2 - 1 (z-major long division from the top)
inline void divide_z2_minus_1(PolyZW& p) {
    PolyZW q(p.zdeg, p.wdeg);
    for (int ez = p.zdeg; ez >= 2; --ez)
        for (int ew = 0; ew <= p.wdeg; ++ew) {
            BigInt v = p.at(ez, ew);
            if (v == 0) continue;
            q.at(ez - 2, ew) += v;
            p.at(ez, ew) = 0;
            p.at(ez - 2, ew) += v;
        }
    for (int ez = 0; ez < 2; ++ez)
        for (int ew = 0; ew <= p.wdeg; ++ew)
            GU2_CHECK(p.at(ez, ew) == 0, "division by z^2-1 not exact");
    p = std::move(q);
}

inline void divide_w2_minus_1(PolyZW& p) {
    PolyZW q(p.zdeg, p.wdeg);
    for (int ew = p.wdeg; ew >= 2; --ew)
        for (int ez = 0; ez <= p.zdeg; ++ez) {
            BigInt v = p.at(ez, ew);
            if (v == 0) continue;
            q.at(ez, ew - 2) += v;
            p.at(ez, ew) = 0;
            p.at(ez, ew - 2) += v;
        }
    for (int ew = 0; ew < 2; ++ew)
        for (int ez = 0; ez <= p.zdeg; ++ez)
            GU2_CHECK(p.at(ez, ew) == 0, "division by w^2-1 not exact");
    p = std::move(q);
}

// exact division by zw - 1, processing total degree top-down
inline void divide_zw_minus_1(PolyZW& p) {
    PolyZW q(p.zdeg, p.wdeg);
    for (int g = p.zdeg + p.wdeg; g >= 0; --g) {
        for (int ez = std::min(g, p.zdeg); ez >= 0; --ez) {
            int ew = g - ez;
            if (ew < 0 || ew > p.wdeg) continue;
            BigInt v = p.at(ez, ew);
            if (v == 0) continue;
            GU2_CHECK(ez >= 1 && ew >= 1, "division by zw-1 not exact");
            q.at(ez - 1, ew - 1) += v;
            p.at(ez, ew) = 0;
            p.at(ez - 1, ew - 1) += v;
        }
    }
    p = std::move(q);
}

// exact division by z - w, processing z-degree top-down
inline void divide_z_minus_w(PolyZW& p) {
    PolyZW q(p.zdeg, p.wdeg);
    for (int ez = p.zdeg; ez >= 0; --ez)
        for (int ew = p.wdeg; ew >= 0; --ew) {
            BigInt v = p.at(ez, ew);
            if (v == 0) continue;
            GU2_CHECK(ez >= 1 && ew + 1 <= p.wdeg, "division by z-w not exact");
            q.at(ez - 1, ew) += v;
            p.at(ez, ew) = 0;
            p.at(ez - 1, ew + 1) += v;
        }
    p = std::move(q);
}

// s^m + s^{-m} as a polynomial in s + 1/s: c_0 = 2 treated as 1 by callers
inline std::vector<BigInt> halfcheb(int m) {
    // column m of the recursion c_m = s*c_{m-1} - c_{m-2}, c_0 = 2, c_1 = s
    std::vector<BigInt> cm2{2}, cm1{0, 1};
    if (m == 0) return cm2;
    if (m == 1) return cm1;
    for (int r = 2; r <= m; ++r) {
        std::vector<BigInt> cur(r + 1);
        for (std::size_t d = 0; d < cm1.size(); ++d) cur[d + 1] = cm1[d];
        for (std::size_t d = 0; d < cm2.size(); ++d) cur[d] -= cm2[d];
        cm2 = std::move(cm1);
        cm1 = std::move(cur);
    }
    return cm1;
}

}  // namespace detail

struct Sp4Character {
    int j = 0;
    int k = 0;
    // coefficient of E^a F^b
    std::map<std::pair<int, int>, BigInt> terms;
    BigInt dim;  // value at the identity, i.e. at (E,F) = (16,6)

    // chi evaluated from the embedding power sums of a matrix with
    // similitude theta; exactly rational
    Rational eval_power_sums(const Rational& theta, const Rational& r1,
                             const Rational& r2) const {
        GU2_INPUT_CHECK(theta > 0, error, "similitude must be positive");
        Rational E = r1 * r1 / theta;
        Rational F = (r1 * r1 - r2) / (2 * theta);
        Rational acc = 0;
        for (const auto& [ab, coef] : terms) {
            Rational term(coef);
            term *= pow_rational(E, ab.first);
            term *= pow_rational(F, ab.second);
            acc += term;
        }
        int half = (j + 2 * k - 6) / 2;
        return acc * pow_rational(theta, half);
    }

    Rational eval(const Gu2Matrix& g) const {
        Rational r1, r2;
        embed_gsp4_power_sums(g.m, r1, r2);
        return eval_power_sums(g.mu, r1, r2);
    }
};

// builds chi_{j,k-3} as an integer polynomial in (E,F)
inline Sp4Character build_sp4_character(int j, int k) {
    GU2_INPUT_CHECK(j >= 0 && j % 2 == 0, unsupported_error,
                    "character requires even j >= 0");
    GU2_INPUT_CHECK(k >= 3, unsupported_error, "character requires k >= 3");

    const int off = j + k - 3;  // the (zw)^{j+k-3} shift
    const int zd = 2 * (j + k - 1);
    detail::PolyZW p(zd, zd);

    // the eight monomials of the Weyl numerator
    auto add = [&](int ez, int ew, int sgn) { p.at(ez, ew) += sgn; };
    add(2 * (j + k - 1), j + 2 * k - 3, +1);
    add(0, j + 2 * k - 3, -1);
    add(2 * (j + k - 1), j + 1, -1);
    add(0, j + 1, +1);
    add(j + 2 * k - 3, 2 * (j + k - 1), -1);
    add(j + 2 * k - 3, 0, +1);
    add(j + 1, 2 * (j + k - 1), +1);
    add(j + 1, 0, -1);

    detail::divide_z2_minus_1(p);
    detail::divide_w2_minus_1(p);
    detail::divide_zw_minus_1(p);
    detail::divide_z_minus_w(p);

    // p now holds chi * (zw)^off with exponents in [0, 2*off]; coefficient
    // of z^m w^n in chi sits at grid position (m + off, n + off)
    auto coeff = [&](int m, int n) -> const BigInt& {
        return p.at(m + off, n + off);
    };

    // extract a_{mn} with chi = sum a_{mn} B_m(z) B_n(w), B_0 = 1,
    // B_m = z^m + z^{-m}; Weyl invariance puts everything in the quadrant
    std::map<std::pair<int, int>, BigInt> amn;
    for (int m = 0; m <= off; ++m)
        for (int n = 0; n <= off; ++n)
            if (coeff(m, n) != 0) amn[{m, n}] = coeff(m, n);

    // re-expansion check: the quadrant data must reproduce the whole grid
    {
        detail::PolyZW rebuilt(p.zdeg, p.wdeg);
        for (const auto& [mn, a] : amn) {
            auto [m, n] = mn;
            for (int sz = 0; sz < (m == 0 ? 1 : 2); ++sz)
                for (int sw = 0; sw < (n == 0 ? 1 : 2); ++sw) {
                    int ez = (sz == 0 ? m : -m) + off;
                    int ew = (sw == 0 ? n : -n) + off;
                    rebuilt.at(ez, ew) += a;
                }
        }
        for (int ez = 0; ez <= p.zdeg; ++ez)
            for (int ew = 0; ew <= p.wdeg; ++ew)
                GU2_CHECK(rebuilt.at(ez, ew) == p.at(ez, ew),
                          "character is not Weyl-symmetric");
    }

    // P(s,t) = sum a_{mn} cheb_m(s) cheb_n(t), dense over (s,t)
    std::vector<std::vector<BigInt>> cheb(off + 1);
    for (int m = 0; m <= off; ++m) {
        cheb[m] = detail::halfcheb(m);
        if (m == 0) cheb[m] = {BigInt(1)};  // B_0 = 1
    }
    int sd = off;
    std::vector<std::vector<BigInt>> P(sd + 1,
                                       std::vector<BigInt>(sd + 1));
    for (const auto& [mn, a] : amn) {
        auto [m, n] = mn;
        for (std::size_t u = 0; u < cheb[m].size(); ++u) {
            if (cheb[m][u] == 0) continue;
            for (std::size_t v = 0; v < cheb[n].size(); ++v) {
                if (cheb[n][v] == 0) continue;
                P[u][v] += a * cheb[m][u] * cheb[n][v];
            }
        }
    }

    // rewrite the symmetric P(s,t) in sig1 = s+t, sig2 = st by peeling the
    // lex-leading monomial; expand sig1^d1 sig2^d2 back to verify each step
    std::map<std::pair<int, int>, BigInt> sig;  // (d1,d2) -> coeff
    auto leading = [&]() -> std::pair<int, int> {
        for (int u = sd; u >= 0; --u)
            for (int v = sd; v >= 0; --v)
                if (P[u][v] != 0) return {u, v};
        return {-1, -1};
    };
    while (true) {
        auto [u, v] = leading();
        if (u < 0) break;
        GU2_CHECK(u >= v, "symmetric rewrite found a non-symmetric leader");
        BigInt c = P[u][v];
        sig[{u - v, v}] += c;
        // subtract c * (s+t)^{u-v} (st)^v
        int d1 = u - v;
        BigInt binom = 1;
        for (int r = 0; r <= d1; ++r) {
            P[v + d1 - r][v + r] -= c * binom;
            binom = binom * (d1 - r) / (r + 1);
        }
    }

    // sig2 = F - 2 and sig1^2 = E (odd powers of sig1 must be absent)
    Sp4Character out;
    out.j = j;
    out.k = k;
    for (const auto& [d, c] : sig) {
        auto [d1, d2] = d;
        GU2_CHECK(d1 % 2 == 0, "odd e1 power in an even-j character");
        BigInt binom = 1;
        for (int r = 0; r <= d2; ++r) {
            BigInt add = c * binom * pow_int(BigInt(-2), d2 - r);
            auto key = std::make_pair(d1 / 2, r);
            out.terms[key] += add;
            if (out.terms[key] == 0) out.terms.erase(key);
            binom = binom * (d2 - r) / (r + 1);
        }
    }

    Rational at_id = out.eval_power_sums(1, 4, 4);
    out.dim = to_integer(at_id);
    GU2_CHECK(out.dim > 0, "character dimension must be positive");
    return out;
}

// cached per-(j,k) characters; build on demand, single-threaded
struct CharacterTable {
    std::map<std::pair<int, int>, Sp4Character> built;

    const Sp4Character& get(int j, int k) {
        auto key = std::make_pair(j, k);
        auto it = built.find(key);
        if (it == built.end())
            it = built.emplace(key, build_sp4_character(j, k)).first;
        return it->second;
    }
};

// ---- SU(2) side ----------------------------------------------------------

// chi_j of Symm^j(C^2) as a polynomial in T = (z + zbar)^2 = trd^2/nrd
struct Su2Character {
    int j = 0;
    std::vector<BigInt> coeffs;  // coefficient of T^m

    // chi_j(x / sqrt(N(x))) * N(x)^{j/2} for a nonzero quaternion with
    // reduced trace t and reduced norm n: exact, integral on order elements
    Rational eval_scaled(const Rational& t, const Rational& n) const {
        GU2_INPUT_CHECK(n > 0, error, "element must be nonzero");
        // sum_m coeffs[m] t^{2m} n^{j/2 - m}
        Rational acc = 0;
        for (std::size_t m = 0; m < coeffs.size(); ++m) {
            Rational term(coeffs[m]);
            term *= pow_rational(t, 2 * static_cast<unsigned long>(m));
            term *= pow_rational(
                n, static_cast<unsigned long>(j / 2 - static_cast<int>(m)));
            acc += term;
        }
        return acc;
    }
};

inline Su2Character build_su2_character(int j) {
    GU2_INPUT_CHECK(j >= 0 && j % 2 == 0, unsupported_error,
                    "SU(2) character requires even j");
    // chi_j = 1 + sum_{r even, 2..j} (z^r + z^{-r}); each summand is an even
    // polynomial in s = z + 1/z, so chi_j is a polynomial in T = s^2
    std::vector<BigInt> in_s(j + 1);
    in_s[0] = 1;
    for (int r = 2; r <= j; r += 2) {
        auto cr = detail::halfcheb(r);
        for (std::size_t d = 0; d < cr.size(); ++d) in_s[d] += cr[d];
    }
    Su2Character out;
    out.j = j;
    out.coeffs.assign(j / 2 + 1, BigInt(0));
    for (int d = 0; d <= j; ++d) {
        if (in_s[d] == 0) continue;
        GU2_CHECK(d % 2 == 0, "odd power in an even SU(2) character");
        out.coeffs[d / 2] = in_s[d];
    }
    return out;
}

}  // namespace gu2
