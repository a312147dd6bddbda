#pragma once

#include <stdexcept>
#include <string>

// Error taxonomy shared by the whole library.  Everything derives from
// gu2::error so callers can catch one type at the CLI boundary; the
// subclasses match the failure classes the operations document.

namespace gu2 {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// two operands live in different quaternion algebras
struct algebra_mismatch_error : error {
    using error::error;
};

// an internal identity failed; signals a bug upstream, not bad input
struct consistency_error : error {
    using error::error;
};

// a coset/orbit count disagrees with the expected Hecke degree
struct degree_mismatch_error : error {
    using error::error;
};

// the h = 1 assumption (mass formula check) failed
struct class_number_error : error {
    using error::error;
};

// no (lambda, mu) pair with the required norms and trace exists
struct no_admissible_pair_error : error {
    using error::error;
};

// malformed or missing bundled data
struct data_error : error {
    using error::error;
};

// the requested computation falls outside the supported cases
struct unsupported_error : error {
    using error::error;
};

#define GU2_STR1(x) #x
#define GU2_STR(x) GU2_STR1(x)

// invariant check that stays on in release builds; all group-theoretic
// identities in this library are cheap next to the sums they guard
#define GU2_CHECK(cond, msg)                                                   \
    do {                                                                       \
        if (!(cond))                                                           \
            throw ::gu2::consistency_error(std::string(__FILE__              \
                ":" GU2_STR(__LINE__) ": ") + (msg));                          \
    } while (0)

#define GU2_INPUT_CHECK(cond, exc_type, msg)                                   \
    do {                                                                       \
        if (!(cond)) throw exc_type(msg);                                      \
    } while (0)

}  // namespace gu2
