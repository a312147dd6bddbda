#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "gu2/order.hpp"

// The bundled table of quaternion algebras: for each supported prime level p
// a definite algebra (a,b/Q) ramified at {p, infinity}, a maximal order
// basis, and the (lambda, mu) pair with N(lambda) = p-1, N(mu) = p and
// tr(lambda * conj(mu)) = 0 that the genus construction uses.
//
// The config is line-oriented: one `algebra` ... `end` block per prime with
// fields p, a, b, basis (16 rationals, four (1,i,j,k) rows), lambda, mu
// (4 rationals each).  data/algebras.cfg ships the same text bit-for-bit.
//
// For p = 2 the table uses lambda = 1; lambda = -1 is an equally valid
// choice (same norms, same genus data up to sign).

namespace gu2 {

inline const char* builtin_algebra_table() {
    return
        "# quaternion algebra table: one record per supported prime level\n"
        "# basis/lambda/mu coordinates are rationals in the (1,i,j,k) basis\n"
        "algebra\n"
        "p 2\n"
        "a -1\n"
        "b -1\n"
        "basis 1 0 0 0\n"
        "basis 0 1 0 0\n"
        "basis 0 0 1 0\n"
        "basis 1/2 1/2 1/2 1/2\n"
        "lambda 1 0 0 0\n"
        "mu 0 1 0 -1\n"
        "end\n"
        "algebra\n"
        "p 3\n"
        "a -1\n"
        "b -3\n"
        "basis 1 0 0 0\n"
        "basis 0 1 0 0\n"
        "basis 1/2 0 1/2 0\n"
        "basis 0 1/2 0 1/2\n"
        "lambda 1 1 0 0\n"
        "mu 0 0 1 0\n"
        "end\n"
        "algebra\n"
        "p 5\n"
        "a -2\n"
        "b -5\n"
        "basis 1 0 0 0\n"
        "basis 1/2 -1/4 0 1/4\n"
        "basis 1/2 3/4 0 1/4\n"
        "basis -1/2 1/2 1/2 0\n"
        "lambda 2 0 0 0\n"
        "mu 0 0 1 0\n"
        "end\n"
        "algebra\n"
        "p 7\n"
        "a -1\n"
        "b -7\n"
        "basis 1 0 0 0\n"
        "basis 0 1 0 0\n"
        "basis 1/2 0 1/2 0\n"
        "basis 0 1/2 0 1/2\n"
        "lambda 2 1/2 0 -1/2\n"
        "mu 0 0 1 0\n"
        "end\n"
        "algebra\n"
        "p 11\n"
        "a -1\n"
        "b -11\n"
        "basis 1 0 0 0\n"
        "basis 0 1 0 0\n"
        "basis 1/2 0 1/2 0\n"
        "basis 0 1/2 0 1/2\n"
        "lambda 1 3 0 0\n"
        "mu 0 0 1 0\n"
        "end\n";
}

struct AlgebraRecord {
    int p = 0;
    Rational a, b;
    std::array<std::array<Rational, 4>, 4> basis;
    std::array<Rational, 4> lambda, mu;
};

inline std::vector<AlgebraRecord> parse_algebra_table(std::istream& in) {
    std::vector<AlgebraRecord> out;
    AlgebraRecord cur;
    int basis_rows = 0;
    bool in_block = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw data_error("algebra table line " + std::to_string(lineno) +
                         ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok == "algebra") {
            if (in_block) fail("nested algebra block");
            cur = AlgebraRecord{};
            basis_rows = 0;
            in_block = true;
        } else if (tok == "end") {
            if (!in_block) fail("stray end");
            if (basis_rows != 4) fail("expected 4 basis rows");
            if (cur.p == 0) fail("missing p");
            out.push_back(cur);
            in_block = false;
        } else if (tok == "p") {
            if (!(ls >> cur.p)) fail("bad p");
        } else if (tok == "a" || tok == "b") {
            std::string v;
            if (!(ls >> v)) fail("bad " + tok);
            (tok == "a" ? cur.a : cur.b) = parse_rational(v);
        } else if (tok == "basis") {
            if (basis_rows >= 4) fail("too many basis rows");
            for (int t = 0; t < 4; ++t) {
                std::string v;
                if (!(ls >> v)) fail("basis row needs 4 coordinates");
                cur.basis[basis_rows][t] = parse_rational(v);
            }
            ++basis_rows;
        } else if (tok == "lambda" || tok == "mu") {
            auto& dst = (tok == "lambda") ? cur.lambda : cur.mu;
            for (int t = 0; t < 4; ++t) {
                std::string v;
                if (!(ls >> v)) fail(tok + " needs 4 coordinates");
                dst[t] = parse_rational(v);
            }
        } else {
            fail("unknown field '" + tok + "'");
        }
    }
    if (in_block) fail("unterminated algebra block");
    return out;
}

struct AlgebraConfig {
    std::shared_ptr<QuaternionAlgebra> algebra;
    std::shared_ptr<MaximalOrder> order;
    Quat lambda, mu;
    int p;
};

inline AlgebraConfig instantiate(const AlgebraRecord& rec) {
    AlgebraConfig cfg;
    cfg.p = rec.p;
    cfg.algebra = std::make_shared<QuaternionAlgebra>(rec.a, rec.b, rec.p);
    std::array<Quat, 4> basis;
    for (int s = 0; s < 4; ++s)
        basis[s] = Quat(*cfg.algebra, rec.basis[s][0], rec.basis[s][1],
                        rec.basis[s][2], rec.basis[s][3]);
    cfg.order = std::make_shared<MaximalOrder>(cfg.algebra, basis);
    cfg.lambda =
        Quat(*cfg.algebra, rec.lambda[0], rec.lambda[1], rec.lambda[2],
             rec.lambda[3]);
    cfg.mu = Quat(*cfg.algebra, rec.mu[0], rec.mu[1], rec.mu[2], rec.mu[3]);
    GU2_INPUT_CHECK(cfg.order->contains(cfg.lambda), data_error,
                    "lambda not in the order");
    GU2_INPUT_CHECK(cfg.order->contains(cfg.mu), data_error,
                    "mu not in the order");
    return cfg;
}

// loads the record for prime p, from `path` if non-empty, else the builtin
inline AlgebraConfig load_algebra(int p, const std::string& path = "") {
    std::vector<AlgebraRecord> recs;
    if (!path.empty()) {
        std::ifstream f(path);
        GU2_INPUT_CHECK(f.good(), data_error,
                        "cannot open algebra table: " + path);
        recs = parse_algebra_table(f);
    } else {
        std::istringstream s(builtin_algebra_table());
        recs = parse_algebra_table(s);
    }
    for (const auto& r : recs)
        if (r.p == p) return instantiate(r);
    throw unsupported_error("no algebra record for p = " + std::to_string(p) +
                            " (supported levels: 2 3 5 7 11)");
}

}  // namespace gu2
