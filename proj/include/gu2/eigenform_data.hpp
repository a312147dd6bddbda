#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "gu2/rational.hpp"

// Elliptic eigenform records ingested from bundled data files.  One record
// per Galois orbit of newforms: a monic integer minimal polynomial f fixing
// a root alpha, and Hecke eigenvalues a_q = g(alpha) given by polynomials g
// with rational coefficients, deg g < deg f.  In every bundled record either
// f is linear (rational eigenform, a_q stored as the constant) or a_q is
// exactly the root itself (g = x).
//
// File format, line oriented, one block per record:
//
//   record
//   level 3
//   weight 16
//   label a
//   minpoly 1 234            # monic, highest-degree coefficient first
//   a 2 -234                 # prime, then coefficients of g (highest first)
//   a 3 -2187
//   ell 109 1                # optional: congruence prime and exponent
//   end

namespace gu2 {

struct EigenformRecord {
    Int level = 0;
    Int weight = 0;
    std::string label;
    std::vector<BigInt> minpoly;            // highest-degree first, monic
    std::map<Int, std::vector<Rational>> eigenvalues;  // q -> coeffs of g
    BigInt ell = 0;                          // 0 when absent
    int ell_exponent = 0;

    int degree() const { return static_cast<int>(minpoly.size()) - 1; }

    const std::vector<Rational>& eigenvalue_poly(Int q) const {
        auto it = eigenvalues.find(q);
        if (it == eigenvalues.end())
            throw data_error("record " + std::to_string(level) + "." +
                             std::to_string(weight) + "." + label +
                             " has no eigenvalue at q = " + std::to_string(q));
        return it->second;
    }
};

inline void validate_record(const EigenformRecord& r) {
    GU2_INPUT_CHECK(r.level >= 1 && r.weight >= 1, data_error,
                    "record needs positive level and weight");
    GU2_INPUT_CHECK(r.minpoly.size() >= 2, data_error,
                    "minpoly must have degree >= 1");
    GU2_INPUT_CHECK(r.minpoly.front() == 1, data_error,
                    "minpoly must be monic");
    for (const auto& [q, g] : r.eigenvalues) {
        GU2_INPUT_CHECK(q >= 2, data_error, "eigenvalue prime must be >= 2");
        GU2_INPUT_CHECK(!g.empty() && g.size() < r.minpoly.size(), data_error,
                        "eigenvalue polynomial must have deg g < deg f");
    }
}

inline std::vector<EigenformRecord> parse_eigenform_records(std::istream& in) {
    std::vector<EigenformRecord> out;
    std::map<std::string, bool> seen;
    EigenformRecord cur;
    bool in_block = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw data_error("eigenform data line " + std::to_string(lineno) +
                         ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "record") {
            if (in_block) fail("nested record");
            cur = EigenformRecord{};
            in_block = true;
        } else if (tok == "end") {
            if (!in_block) fail("stray end");
            validate_record(cur);
            std::string key = std::to_string(cur.level) + "." +
                              std::to_string(cur.weight) + "." + cur.label;
            if (seen.count(key)) fail("duplicate record " + key);
            seen[key] = true;
            out.push_back(cur);
            in_block = false;
        } else if (!in_block) {
            fail("field outside a record block");
        } else if (tok == "level") {
            if (!(ls >> cur.level)) fail("bad level");
        } else if (tok == "weight") {
            if (!(ls >> cur.weight)) fail("bad weight");
        } else if (tok == "label") {
            if (!(ls >> cur.label)) fail("bad label");
        } else if (tok == "minpoly") {
            std::string v;
            while (ls >> v) cur.minpoly.emplace_back(v);
            if (cur.minpoly.empty()) fail("empty minpoly");
        } else if (tok == "a") {
            Int q;
            if (!(ls >> q)) fail("bad eigenvalue prime");
            std::vector<Rational> g;
            std::string v;
            while (ls >> v) g.push_back(parse_rational(v));
            if (g.empty()) fail("empty eigenvalue polynomial");
            if (cur.eigenvalues.count(q)) fail("duplicate eigenvalue prime");
            cur.eigenvalues[q] = std::move(g);
        } else if (tok == "ell") {
            std::string v;
            if (!(ls >> v)) fail("bad ell");
            cur.ell = BigInt(v);
            if (!(ls >> cur.ell_exponent)) cur.ell_exponent = 1;
        } else {
            fail("unknown field '" + tok + "'");
        }
    }
    if (in_block) fail("unterminated record");
    return out;
}

struct EigenformDatabase {
    std::vector<EigenformRecord> records;

    static EigenformDatabase load(const std::string& path) {
        std::ifstream f(path);
        GU2_INPUT_CHECK(f.good(), data_error,
                        "cannot open eigenform data: " + path);
        EigenformDatabase db;
        db.records = parse_eigenform_records(f);
        return db;
    }

    std::vector<const EigenformRecord*> find(Int level, Int weight) const {
        std::vector<const EigenformRecord*> out;
        for (const auto& r : records)
            if (r.level == level && r.weight == weight) out.push_back(&r);
        return out;
    }

    const EigenformRecord* find_one(Int level, Int weight,
                                    const std::string& label) const {
        for (const auto& r : records)
            if (r.level == level && r.weight == weight && r.label == label)
                return &r;
        return nullptr;
    }
};

// ---- exact arithmetic in Q[x]/(f) via the companion matrix -----------------

// companion matrix of the monic f, acting so that tr(g(C)) = sum of g over
// the roots of f
struct Companion {
    int d = 0;
    std::vector<Rational> mat;  // row-major d x d

    explicit Companion(const std::vector<BigInt>& minpoly) {
        d = static_cast<int>(minpoly.size()) - 1;
        GU2_INPUT_CHECK(d >= 1 && minpoly[0] == 1, data_error,
                        "companion needs a monic polynomial");
        mat.assign(d * d, Rational(0));
        for (int r = 1; r < d; ++r) mat[r * d + (r - 1)] = 1;
        for (int r = 0; r < d; ++r)
            mat[r * d + (d - 1)] = -Rational(minpoly[d - r]);
    }
};

// g evaluated at the companion matrix; coefficients highest-degree first
inline std::vector<Rational> eval_poly_at_companion(
    const Companion& comp, const std::vector<Rational>& g) {
    int d = comp.d;
    std::vector<Rational> acc(d * d, Rational(0));
    auto mul = [&](const std::vector<Rational>& x,
                   const std::vector<Rational>& y) {
        std::vector<Rational> r(d * d, Rational(0));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                if (x[i * d + k] == 0) continue;
                for (int j = 0; j < d; ++j)
                    r[i * d + j] += x[i * d + k] * y[k * d + j];
            }
        return r;
    };
    // Horner: acc = acc * C + coeff * I
    for (const Rational& coeff : g) {
        acc = mul(acc, comp.mat);
        for (int i = 0; i < d; ++i) acc[i * d + i] += coeff;
    }
    return acc;
}

// sum of g(alpha) over all roots alpha of f (the Galois-orbit eigenvalue sum)
inline Rational orbit_eigenvalue_sum(const EigenformRecord& rec, Int q) {
    Companion comp(rec.minpoly);
    auto m = eval_poly_at_companion(comp, rec.eigenvalue_poly(q));
    Rational tr = 0;
    for (int i = 0; i < comp.d; ++i) tr += m[i * comp.d + i];
    return tr;
}

// |det(c I - g(C_f))| = |Res_x(f(x), c - g(x))|: the field norm of
// c - a_q, used for the congruence residual
inline BigInt residual_norm(const EigenformRecord& rec, Int q,
                            const Rational& c) {
    Companion comp(rec.minpoly);
    int d = comp.d;
    auto m = eval_poly_at_companion(comp, rec.eigenvalue_poly(q));
    for (auto& v : m) v = -v;
    for (int i = 0; i < d; ++i) m[i * d + i] += c;
    // exact determinant by Gaussian elimination over Q
    Rational det = 1;
    for (int col = 0; col < d; ++col) {
        int piv = -1;
        for (int r = col; r < d; ++r)
            if (m[r * d + col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int t = 0; t < d; ++t)
                std::swap(m[piv * d + t], m[col * d + t]);
            det = -det;
        }
        det *= m[col * d + col];
        Rational inv = 1 / m[col * d + col];
        for (int r = col + 1; r < d; ++r) {
            Rational f = m[r * d + col] * inv;
            if (f == 0) continue;
            for (int t = col; t < d; ++t) m[r * d + t] -= f * m[col * d + t];
        }
    }
    GU2_CHECK(is_integer(det) || det == 0,
              "residual norm of an integral record must be integral");
    BigInt out = to_integer(det);
    return out >= 0 ? out : BigInt(-out);
}

}  // namespace gu2
