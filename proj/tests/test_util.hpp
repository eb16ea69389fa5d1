#pragma once

#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "hyperell/hyperell.hpp"

namespace Catch {

template <>
struct StringMaker<mpz_class> {
    static std::string convert(const mpz_class& v) { return v.get_str(); }
};

template <>
struct StringMaker<hyperell::IntegerPoint> {
    static std::string convert(const hyperell::IntegerPoint& p) {
        return "(" + p.x.get_str() + "," + p.y.get_str() + ")";
    }
};

}  // namespace Catch

namespace testutil {

using hyperell::Integer;
using hyperell::IntegerPoint;

inline std::vector<IntegerPoint> points(
    std::initializer_list<std::pair<long, long>> ps) {
    std::vector<IntegerPoint> out;
    for (const auto& [x, y] : ps)
        out.push_back(IntegerPoint{Integer(x), Integer(y)});
    return out;
}

// Deterministically seeded generator so failures reproduce. Wraps the
// non-copyable gmp_randclass so it can be handed out by value.
struct SeededRng {
    gmp_randclass gen;

    explicit SeededRng(unsigned long seed) : gen(gmp_randinit_mt) { gen.seed(seed); }

    Integer get_z_bits(unsigned long bits) { return Integer(gen.get_z_bits(bits)); }
    Integer get_z_range(const Integer& n) { return Integer(gen.get_z_range(n)); }
};

inline SeededRng seeded_rng(unsigned long seed) { return SeededRng(seed); }

// Uniform in [-2^bits + 1, 2^bits - 1].
inline Integer signed_bits(SeededRng& rng, unsigned bits) {
    Integer v = rng.get_z_bits(bits);
    if (rng.get_z_bits(1) == 1)
        v = -v;
    return v;
}

// Uniform in [-span, span].
inline Integer signed_range(SeededRng& rng, long span) {
    return Integer(rng.get_z_range(Integer(2 * span + 1)) - span);
}

}  // namespace testutil
