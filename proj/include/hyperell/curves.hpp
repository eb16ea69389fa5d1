#pragma once

// Curve family descriptors, integer points, and verified solution sets.
// Construction validates the degeneracy preconditions (perfect-square
// curves have infinitely many integer points and are rejected).

#include <cstdint>
#include <variant>
#include <vector>

#include "hyperell/errors.hpp"
#include "hyperell/intarith.hpp"
#include "hyperell/poly.hpp"

namespace hyperell::solvers {

using intarith::Factorization;
using intarith::Integer;
using poly::eval;
using poly::IntPoly;
using poly::mul;
using poly::poly_square_root;

// y^2 = (x+a)(x+a+k)(x+b)(x+b+k)
struct Family1 {
    Integer a, b, k;

    friend bool operator==(const Family1&, const Family1&) = default;
};

// y^2 = c^2 x^4 + a x^2 + b
struct Family2 {
    Integer c, a, b;

    friend bool operator==(const Family2&, const Family2&) = default;
};

// c y^2 = c x^4 + a x^2 + b
struct Family3 {
    Integer c, a, b;

    friend bool operator==(const Family3&, const Family3&) = default;
};

// y^2 = (x^2 - 1)(x^2 - alpha^2)(x^2 - (alpha+1)^2)
struct Sextic {
    Integer alpha;

    friend bool operator==(const Sextic&, const Sextic&) = default;
};

// y^2 = x^4 + a3 x^3 + a2 x^2 + a1 x + a0
struct GeneralQuartic {
    Integer a3, a2, a1, a0;

    friend bool operator==(const GeneralQuartic&, const GeneralQuartic&) = default;
};

// y^2 = x^4 + b x^2 + d
struct MasserBiquadratic {
    Integer b, d;

    friend bool operator==(const MasserBiquadratic&, const MasserBiquadratic&) = default;
};

using CurveSpec =
    std::variant<Family1, Family2, Family3, Sextic, GeneralQuartic, MasserBiquadratic>;

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace detail

inline const char* family_name(const CurveSpec& spec) {
    return std::visit(detail::overloaded{
                          [](const Family1&) { return "family1"; },
                          [](const Family2&) { return "family2"; },
                          [](const Family3&) { return "family3"; },
                          [](const Sextic&) { return "sextic"; },
                          [](const GeneralQuartic&) { return "quartic"; },
                          [](const MasserBiquadratic&) { return "masser"; },
                      },
                      spec);
}

// The monic quartic x^4 + a3 x^3 + a2 x^2 + a1 x + a0.
inline IntPoly quartic_poly(const GeneralQuartic& g) {
    return IntPoly{g.a0, g.a1, g.a2, g.a3, Integer(1)};
}

// Rejects parameter choices that degenerate the curve (perfect-square or
// zero-discriminant right-hand sides).
inline void validate(const CurveSpec& spec) {
    std::visit(
        detail::overloaded{
            [](const Family1& s) {
                if (s.a == s.b || s.k == 0)
                    throw domain_error(
                        "family1: a = b or k = 0 makes the curve a perfect square");
            },
            [](const Family2& s) {
                if (s.c == 0)
                    throw domain_error("family2: c must be nonzero");
                if (s.a * s.a - 4 * s.b * s.c * s.c == 0)
                    throw domain_error("family2: discriminant a^2 - 4bc^2 is zero");
            },
            [](const Family3& s) {
                if (s.c == 0)
                    throw domain_error("family3: c must be nonzero");
                if (s.a * s.a - 4 * s.b * s.c == 0)
                    throw domain_error("family3: discriminant a^2 - 4bc is zero");
            },
            [](const Sextic& s) {
                if (s.alpha >= -2 && s.alpha <= 1)
                    throw domain_error(
                        "sextic: alpha in {-2,-1,0,1} repeats a factor, curve degenerates");
            },
            [](const GeneralQuartic& s) {
                if (poly_square_root(quartic_poly(s)).has_value())
                    throw domain_error("quartic: right-hand side is a perfect square");
            },
            [](const MasserBiquadratic& s) {
                if (s.b * s.b == 4 * s.d)
                    throw domain_error(
                        "masser: b^2 = 4d makes the curve a perfect square");
            },
        },
        spec);
}

inline CurveSpec make_family1(Integer a, Integer b, Integer k) {
    CurveSpec s = Family1{std::move(a), std::move(b), std::move(k)};
    validate(s);
    return s;
}
inline CurveSpec make_family2(Integer c, Integer a, Integer b) {
    CurveSpec s = Family2{std::move(c), std::move(a), std::move(b)};
    validate(s);
    return s;
}
inline CurveSpec make_family3(Integer c, Integer a, Integer b) {
    CurveSpec s = Family3{std::move(c), std::move(a), std::move(b)};
    validate(s);
    return s;
}
inline CurveSpec make_sextic(Integer alpha) {
    CurveSpec s = Sextic{std::move(alpha)};
    validate(s);
    return s;
}
inline CurveSpec make_general_quartic(Integer a3, Integer a2, Integer a1, Integer a0) {
    CurveSpec s = GeneralQuartic{std::move(a3), std::move(a2), std::move(a1), std::move(a0)};
    validate(s);
    return s;
}
inline CurveSpec make_masser(Integer b, Integer d) {
    CurveSpec s = MasserBiquadratic{std::move(b), std::move(d)};
    validate(s);
    return s;
}

// Exact substitution check of (x, y) into the curve equation.
inline bool satisfies(const CurveSpec& spec, const Integer& x, const Integer& y) {
    const Integer y2 = y * y;
    return std::visit(
        detail::overloaded{
            [&](const Family1& s) {
                return y2 == (x + s.a) * (x + s.a + s.k) * (x + s.b) * (x + s.b + s.k);
            },
            [&](const Family2& s) {
                const Integer x2 = x * x;
                return y2 == s.c * s.c * x2 * x2 + s.a * x2 + s.b;
            },
            [&](const Family3& s) {
                const Integer x2 = x * x;
                return s.c * y2 == s.c * x2 * x2 + s.a * x2 + s.b;
            },
            [&](const Sextic& s) {
                const Integer x2 = x * x;
                return y2 == (x2 - 1) * (x2 - s.alpha * s.alpha) *
                                 (x2 - (s.alpha + 1) * (s.alpha + 1));
            },
            [&](const GeneralQuartic& s) { return y2 == eval(quartic_poly(s), x); },
            [&](const MasserBiquadratic& s) {
                const Integer x2 = x * x;
                return y2 == x2 * x2 + s.b * x2 + s.d;
            },
        },
        spec);
}

// Right-hand side f with y^2 = f(x). Family3 weights the left side by c and
// has no such integer polynomial, so it is rejected here; its substitution
// check lives in satisfies().
inline IntPoly square_rhs(const CurveSpec& spec) {
    return std::visit(
        detail::overloaded{
            [](const Family1& s) {
                return mul(mul(IntPoly{s.a, 1}, IntPoly{s.a + s.k, 1}),
                           mul(IntPoly{s.b, 1}, IntPoly{s.b + s.k, 1}));
            },
            [](const Family2& s) {
                return IntPoly{s.b, 0, s.a, 0, s.c * s.c};
            },
            [](const Family3&) -> IntPoly {
                throw domain_error(
                    "family3: cy^2 = cx^4+ax^2+b has no integer y^2 = f(x) form");
            },
            [](const Sextic& s) {
                return mul(mul(IntPoly{-1, 0, 1},
                               IntPoly{Integer(-s.alpha * s.alpha), 0, 1}),
                           IntPoly{Integer(-(s.alpha + 1) * (s.alpha + 1)), 0, 1});
            },
            [](const GeneralQuartic& s) { return quartic_poly(s); },
            [](const MasserBiquadratic& s) {
                return IntPoly{s.d, 0, s.b, 0, 1};
            },
        },
        spec);
}

// An integer point with y normalized to be non-negative.
struct IntegerPoint {
    Integer x;
    Integer y;

    friend bool operator==(const IntegerPoint& p, const IntegerPoint& q) {
        return p.x == q.x && p.y == q.y;
    }
    friend bool operator<(const IntegerPoint& p, const IntegerPoint& q) {
        const int cx = cmp(p.x, q.x);
        return cx < 0 || (cx == 0 && p.y < q.y);
    }
};

// Provenance of a solve: how many divisor pairs were walked and which
// integer's factorization drove the enumeration.
struct SolutionMeta {
    std::uint64_t divisor_pairs_examined = 0;
    Integer factored_integer;
    Factorization factorization;

    friend bool operator==(const SolutionMeta&, const SolutionMeta&) = default;
};

// Canonical solver output: points sorted ascending by (x, y), deduplicated,
// every one substitution-verified before insertion.
struct SolutionSet {
    CurveSpec spec;
    std::vector<IntegerPoint> points;
    SolutionMeta meta;

    friend bool operator==(const SolutionSet&, const SolutionSet&) = default;

    bool contains(const Integer& x, const Integer& y) const {
        for (const auto& p : points)
            if (p.x == x && p.y == y)
                return true;
        return false;
    }
};

}  // namespace hyperell::solvers
