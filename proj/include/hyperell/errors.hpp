#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hyperell {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated precondition: negative isqrt argument, factorize(0), perfect-square
// curve, degenerate parameters, ...
struct domain_error : error {
    using error::error;
};

// Factorization budget ran out. Carries whatever was split off so far plus the
// unfactored cofactor; never silently returns a wrong answer.
struct budget_error : error {
    std::vector<std::pair<mpz_class, unsigned>> partial_factors;
    mpz_class unfactored_cofactor;

    budget_error(const std::string& what,
                 std::vector<std::pair<mpz_class, unsigned>> partial,
                 mpz_class cofactor)
        : error(what),
          partial_factors(std::move(partial)),
          unfactored_cofactor(std::move(cofactor)) {}
};

// An exact computation cross-checked against itself and disagreed (e.g. the
// interpolated resultant does not match a direct determinant evaluation).
struct consistency_error : error {
    using error::error;
};

// A repeated rational root p/q of D(z) exists but q is not a perfect square.
// Carries p/q in lowest terms so callers can decide what to do with it.
struct nonsquare_denominator_error : error {
    mpz_class num;
    mpz_class den;

    nonsquare_denominator_error(const std::string& what, mpz_class p, mpz_class q)
        : error(what), num(std::move(p)), den(std::move(q)) {}
};

}  // namespace hyperell
