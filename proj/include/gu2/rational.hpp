#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "gu2/common.hpp"

// Exact scalar types.  Rationals are GMP mpq ("always canonical" is the mpq
// contract: lowest terms, positive denominator), integers are mpz.  Lattice
// coordinates in hot paths use int64; everything there is bounded well below
// overflow by the norms we enumerate (<= a few thousand).

namespace gu2 {

using Rational = mpq_class;
using BigInt = mpz_class;
using Int = long long;

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline BigInt to_integer(const Rational& r) {
    GU2_CHECK(is_integer(r), "expected integral rational, got " + r.get_str());
    return r.get_num();
}

inline Rational rat(Int num, Int den = 1) {
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

// gmpxx has no long long constructor; all our Int values fit in long
inline Rational rat_of(Int v) { return Rational(static_cast<long>(v)); }
inline BigInt bigint_of(Int v) { return BigInt(static_cast<long>(v)); }

// parses "a/b" or "a"
inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw data_error("bad rational literal: '" + s + "'");
    r.canonicalize();
    return r;
}

inline Rational pow_rational(const Rational& base, unsigned long e) {
    Rational out;
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
    return out;  // already canonical: powers of coprime pairs stay coprime
}

inline BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline bool divides(const BigInt& d, const BigInt& n) {
    if (d == 0) return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace gu2
