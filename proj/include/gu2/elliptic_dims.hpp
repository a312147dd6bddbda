#pragma once

#include "gu2/rational.hpp"

// Classical dimension formulas for elliptic cusp forms: level 1 (piecewise
// in the weight mod 12) and prime level Gamma_0(p) (genus + elliptic point
// counts).  Used for the level-1 oldform multiplicity and, at p = 11 where
// the quaternionic side has class number two, as the source of
// dim S_{j+2}^new(Gamma_0(p)).

namespace gu2 {

inline Int dim_cusp_sl2(Int w) {
    if (w < 12 || w % 2 != 0) return 0;
    Int q = w / 12;
    return (w % 12 == 2) ? q - 1 : q;
}

// elliptic point counts and genus of X_0(p), p prime
inline void gamma0_prime_invariants(int p, int& nu2, int& nu3, Int& genus) {
    nu2 = (p == 2) ? 1 : ((p % 4 == 1) ? 2 : 0);
    nu3 = (p == 3) ? 1 : ((p % 3 == 1) ? 2 : 0);
    Int num = static_cast<Int>(p) + 1 - 3 * nu2 - 4 * nu3;
    GU2_CHECK(num % 12 == 0, "genus formula not integral");
    genus = num / 12;
}

inline Int dim_cusp_gamma0_prime(Int k, int p) {
    if (k < 2 || k % 2 != 0) return 0;
    int nu2, nu3;
    Int g;
    gamma0_prime_invariants(p, nu2, nu3, g);
    if (k == 2) return g;
    return (k - 1) * (g - 1) + (k / 2 - 1) * 2 + nu2 * (k / 4) +
           nu3 * (k / 3);
}

inline Int dim_new_gamma0_prime(Int k, int p) {
    Int d = dim_cusp_gamma0_prime(k, p) - 2 * dim_cusp_sl2(k);
    GU2_CHECK(d >= 0, "newspace dimension negative");
    return d;
}

}  // namespace gu2
