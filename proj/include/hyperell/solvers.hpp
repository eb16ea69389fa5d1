#pragma once

// Complete integer-point solvers for the supported curve families. Each
// solver reduces its curve to a finite enumeration of signed divisor pairs
// (d1, d2) of one integer, reconstructs candidate points from each pair, and
// keeps only candidates that satisfy the curve equation exactly. The final
// substitution check makes every solver unconditionally sound; completeness
// comes from the divisor-pair derivation and is cross-checked against the
// brute-force oracle in the tests.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyperell/curves.hpp"
#include "hyperell/errors.hpp"
#include "hyperell/intarith.hpp"
#include "hyperell/poly.hpp"

namespace hyperell::solvers {

using intarith::as_perfect_square;
using intarith::FactorBudget;
using intarith::factorize;
using intarith::for_each_signed_divisor_pair;
using intarith::merge_factorizations;
using intarith::square_factorization;
using poly::add;
using poly::DoubleRoot;
using poly::integer_roots;
using poly::rational_double_root;
using poly::resultant_in_z;
using poly::scale;
using poly::ZPolyInZ;

namespace detail {

// Collects candidates, keeps the verified ones, and produces the canonical
// sorted / deduplicated / y >= 0 solution set.
class PointAccumulator {
public:
    explicit PointAccumulator(CurveSpec spec) : spec_(std::move(spec)) {}

    void consider(const Integer& x, const Integer& y) {
        Integer ay = abs(y);
        if (satisfies(spec_, x, ay))
            points_.push_back(IntegerPoint{x, std::move(ay)});
    }

    SolutionSet finish(std::uint64_t pairs_examined, Integer factored,
                       Factorization fac) {
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
        return SolutionSet{std::move(spec_), std::move(points_),
                           SolutionMeta{pairs_examined, std::move(factored),
                                        std::move(fac)}};
    }

private:
    CurveSpec spec_;
    std::vector<IntegerPoint> points_;
};

inline bool same_parity(const Integer& d1, const Integer& d2) {
    return mpz_odd_p(d1.get_mpz_t()) == mpz_odd_p(d2.get_mpz_t());
}

// Factorization of p1 * p2 through the parts. Splitting algebraically before
// factoring is decisive when each part hides one large prime: rho then never
// has to separate the two primes from their product. On budget exhaustion the
// partial results of both parts are combined so the error still describes the
// whole product.
inline Factorization factor_split(const Integer& p1, const Integer& p2,
                                  const FactorBudget& budget) {
    auto widen = [](const budget_error& e, const Factorization& done,
                    const Integer& rest) {
        std::map<Integer, unsigned> primes;
        for (const auto& [p, m] : done.factors)
            primes[p] += m;
        for (const auto& [p, m] : e.partial_factors)
            primes[p] += m;
        std::vector<std::pair<Integer, unsigned>> partial(primes.begin(), primes.end());
        return budget_error(e.what(), std::move(partial),
                            Integer(e.unfactored_cofactor * abs(rest)));
    };
    Factorization f1;
    try {
        f1 = factorize(p1, budget);
    } catch (const budget_error& e) {
        throw widen(e, Factorization{}, p2);
    }
    try {
        return merge_factorizations(f1, factorize(p2, budget));
    } catch (const budget_error& e) {
        throw widen(e, f1, Integer(1));
    }
}

}  // namespace detail

// Proven search radius for family1: every integer point has |x| < 4M^2 with
// M = max(|a|, |b|, |k|). Used by the oracle cross-check.
inline Integer bound_family1(const Integer& a, const Integer& b, const Integer& k) {
    if (a == b || k == 0)
        throw domain_error("family1: a = b or k = 0 makes the curve a perfect square");
    Integer M = abs(a);
    if (abs(b) > M)
        M = abs(b);
    if (abs(k) > M)
        M = abs(k);
    return 4 * M * M;
}

// ---------------------------------------------------------------------------
// y^2 = (x+a)(x+a+k)(x+b)(x+b+k)
// ---------------------------------------------------------------------------
//
// Writing f = (x^2 + Bx/2 + C1)(x^2 + Bx/2 + C2) with B = 2(a+b+k) gives
// y^2 - g(x)^2 = d1 d2 with d1 d2 = (k(a-b))^2. For each same-parity signed
// divisor pair, C = 2ab+ka+kb - (d1+d2)/2, and x solves 2x^2 + Bx + 2C = 0,
// i.e. x = (-B +- sqrt(B^2 - 8C)) / 4, with y = (d2 - d1)/4.
inline SolutionSet solve_family1(const Integer& a, const Integer& b, const Integer& k,
                                 const FactorBudget& budget = {}) {
    CurveSpec spec = make_family1(a, b, k);
    const Integer u = k * (a - b);
    Integer N = u * u;
    // N is a known square; factoring u and doubling exponents sidesteps rho's
    // poor behavior on repeated prime factors.
    Factorization fac = square_factorization(factorize(u, budget));

    const Integer B = 2 * (a + b + k);
    const Integer S = 2 * a * b + k * a + k * b;
    const Integer B2 = B * B;

    detail::PointAccumulator acc(spec);
    std::uint64_t pairs = 0;
    Integer C, Delta, y, t;
    for_each_signed_divisor_pair(N, fac, [&](const Integer& d1, const Integer& d2) {
        ++pairs;
        if (!detail::same_parity(d1, d2))
            return;
        C = S - (d1 + d2) / 2;
        Delta = B2 - 8 * C;
        if (Delta < 0)
            return;
        const auto delta = as_perfect_square(Delta);
        if (!delta)
            return;
        y = d2 - d1;
        if (!mpz_divisible_ui_p(y.get_mpz_t(), 4))
            return;
        y /= 4;
        t = -B + *delta;
        if (mpz_divisible_ui_p(t.get_mpz_t(), 4))
            acc.consider(Integer(t / 4), y);
        if (*delta != 0) {
            t = -B - *delta;
            if (mpz_divisible_ui_p(t.get_mpz_t(), 4))
                acc.consider(Integer(t / 4), y);
        }
    });
    return acc.finish(pairs, std::move(N), std::move(fac));
}

// ---------------------------------------------------------------------------
// y^2 = c^2 x^4 + a x^2 + b
// ---------------------------------------------------------------------------
//
// (2c^2x^2 + a - 2c|y|)(2c^2x^2 + a + 2c|y|) = delta with delta = a^2 - 4bc^2,
// so for each same-parity signed divisor pair of delta:
// x^2 = (d1 + d2 - 2a) / (4c^2) and y = (d2 - d1) / (4|c|).
inline SolutionSet solve_family2(const Integer& c, const Integer& a, const Integer& b,
                                 const FactorBudget& budget = {}) {
    CurveSpec spec = make_family2(c, a, b);
    const Integer delta = a * a - 4 * b * c * c;
    // When b c^2 = s^2 the discriminant splits as (a - 2s)(a + 2s); factoring
    // the halves separately keeps large curves (e.g. a = -2^l, b = c = 1)
    // tractable.
    Factorization fac;
    if (const auto s = as_perfect_square(b * c * c))
        fac = detail::factor_split(a - 2 * *s, a + 2 * *s, budget);
    else
        fac = factorize(delta, budget);

    const Integer four_c2 = 4 * c * c;
    const Integer four_abs_c = 4 * abs(c);
    const Integer two_a = 2 * a;

    detail::PointAccumulator acc(spec);
    std::uint64_t pairs = 0;
    Integer num, K, y;
    for_each_signed_divisor_pair(delta, fac, [&](const Integer& d1, const Integer& d2) {
        ++pairs;
        if (!detail::same_parity(d1, d2))
            return;
        num = d1 + d2 - two_a;
        if (num < 0)
            return;
        if (!mpz_divisible_p(num.get_mpz_t(), four_c2.get_mpz_t()))
            return;
        mpz_divexact(K.get_mpz_t(), num.get_mpz_t(), four_c2.get_mpz_t());
        if (mpz_perfect_square_p(K.get_mpz_t()) == 0)
            return;
        y = d2 - d1;
        if (!mpz_divisible_p(y.get_mpz_t(), four_abs_c.get_mpz_t()))
            return;
        mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), four_abs_c.get_mpz_t());
        Integer m;
        mpz_sqrt(m.get_mpz_t(), K.get_mpz_t());
        acc.consider(m, y);
        if (m != 0)
            acc.consider(Integer(-m), y);
    });
    return acc.finish(pairs, delta, std::move(fac));
}

// ---------------------------------------------------------------------------
// c y^2 = c x^4 + a x^2 + b
// ---------------------------------------------------------------------------
//
// Same reduction with c^2 replaced by c: divisor pairs of Delta = a^2 - 4bc,
// x^2 = (d1 + d2 - 2a) / (4c), y = (d2 - d1) / (4c). Divisibility is tested
// against |4c|; the signed quotients then decide acceptance, and the final
// substitution check into cy^2 = cx^4 + ax^2 + b is authoritative.
inline SolutionSet solve_family3(const Integer& c, const Integer& a, const Integer& b,
                                 const FactorBudget& budget = {}) {
    CurveSpec spec = make_family3(c, a, b);
    const Integer Delta = a * a - 4 * b * c;
    Factorization fac;
    if (const auto s = as_perfect_square(b * c))
        fac = detail::factor_split(a - 2 * *s, a + 2 * *s, budget);
    else
        fac = factorize(Delta, budget);

    const Integer four_c = 4 * c;
    const Integer two_a = 2 * a;

    detail::PointAccumulator acc(spec);
    std::uint64_t pairs = 0;
    Integer num, K, y;
    for_each_signed_divisor_pair(Delta, fac, [&](const Integer& d1, const Integer& d2) {
        ++pairs;
        if (!detail::same_parity(d1, d2))
            return;
        num = d1 + d2 - two_a;
        if (!mpz_divisible_p(num.get_mpz_t(), four_c.get_mpz_t()))
            return;
        mpz_divexact(K.get_mpz_t(), num.get_mpz_t(), four_c.get_mpz_t());
        if (K < 0 || mpz_perfect_square_p(K.get_mpz_t()) == 0)
            return;
        y = d2 - d1;
        if (!mpz_divisible_p(y.get_mpz_t(), four_c.get_mpz_t()))
            return;
        mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), four_c.get_mpz_t());
        Integer m;
        mpz_sqrt(m.get_mpz_t(), K.get_mpz_t());
        acc.consider(m, y);
        if (m != 0)
            acc.consider(Integer(-m), y);
    });
    return acc.finish(pairs, Delta, std::move(fac));
}

// ---------------------------------------------------------------------------
// y^2 = (x^2 - 1)(x^2 - alpha^2)(x^2 - (alpha+1)^2)
// ---------------------------------------------------------------------------
//
// The critical value z0 = alpha^4 + 2alpha^3 + alpha^2 splits the sextic:
// G - z0 = -(s(x) - y)(s(x) + y) with s(x) = x^3 - (alpha^2 + alpha + 1)x.
// Divisor pairs of N = (alpha^2 + alpha)^2 then give s(x) = (d1 + d2)/2 and
// y = |d2 - d1| / 2; x comes from integer root extraction of the cubic.
inline SolutionSet solve_sextic(const Integer& alpha, const FactorBudget& budget = {}) {
    CurveSpec spec = make_sextic(alpha);
    const Integer u = alpha * alpha + alpha;
    const Integer s1 = u + 1;  // coefficient of x in s(x)
    Integer N = u * u;
    Factorization fac = square_factorization(factorize(u, budget));

    detail::PointAccumulator acc(spec);
    std::uint64_t pairs = 0;
    for_each_signed_divisor_pair(N, fac, [&](const Integer& d1, const Integer& d2) {
        ++pairs;
        if (!detail::same_parity(d1, d2))
            return;
        const Integer rhs = (d1 + d2) / 2;
        const Integer y = (d2 - d1) / 2;
        const IntPoly cubic{Integer(-rhs), Integer(-s1), Integer(0), Integer(1)};
        for (const Integer& x : integer_roots(cubic, budget))
            acc.consider(x, y);
    });
    return acc.finish(pairs, std::move(N), std::move(fac));
}

// ---------------------------------------------------------------------------
// y^2 = x^4 + b x^2 + d  (difference-of-squares identity)
// ---------------------------------------------------------------------------
//
// 4y^2 - (2x^2 + b)^2 = 4d - b^2 = E, so (2y - 2x^2 - b)(2y + 2x^2 + b) = E.
// Each signed divisor pair gives y = (d1 + d2)/4 and 2x^2 + b = +-(d2 - d1)/2;
// both signs must be tried because 2x^2 + b itself can be negative.
inline SolutionSet solve_masser_biquadratic(const Integer& b, const Integer& d,
                                            const FactorBudget& budget = {}) {
    CurveSpec spec = make_masser(b, d);
    const Integer E = 4 * d - b * b;
    Factorization fac;
    if (const auto t = as_perfect_square(d))
        fac = detail::factor_split(2 * *t - b, 2 * *t + b, budget);
    else
        fac = factorize(E, budget);

    detail::PointAccumulator acc(spec);
    std::uint64_t pairs = 0;
    for_each_signed_divisor_pair(E, fac, [&](const Integer& d1, const Integer& d2) {
        ++pairs;
        if (!detail::same_parity(d1, d2))
            return;
        const Integer sum = d1 + d2;
        if (sum < 0 || !mpz_divisible_ui_p(sum.get_mpz_t(), 4))
            return;
        const Integer y = sum / 4;
        const Integer v = (d2 - d1) / 2;
        for (int sgn : {+1, -1}) {
            Integer t = (sgn > 0 ? v : Integer(-v)) - b;
            if (t < 0 || mpz_odd_p(t.get_mpz_t()))
                continue;
            t /= 2;
            const auto m = as_perfect_square(t);
            if (!m)
                continue;
            acc.consider(*m, y);
            if (*m != 0)
                acc.consider(Integer(-*m), y);
            if (v == 0)
                break;
        }
    });
    return acc.finish(pairs, E, std::move(fac));
}

// ---------------------------------------------------------------------------
// y^2 = x^4 + a3 x^3 + a2 x^2 + a1 x + a0  (general monic quartic)
// ---------------------------------------------------------------------------

// Outcome when the double-root reduction does not apply to a curve. Distinct
// from an empty solution set: the curve may still have finitely many points,
// but this method cannot enumerate them.
struct MethodInapplicable {
    std::string reason;
};

using QuarticResult = std::variant<SolutionSet, MethodInapplicable>;

// Pipeline: D(z) = Res_x(f+z, f'); z0 = A/B^2 a repeated rational root of D;
// then B^2 f + A = r(x)^2 and (r(x0) - B y0)(r(x0) + B y0) = A, so every
// integer point comes from a signed divisor pair (e1, e2) of A via
// r(x) = (e1 + e2)/2, y = |e2 - e1| / (2B).
inline QuarticResult solve_general_quartic(const Integer& a3, const Integer& a2,
                                           const Integer& a1, const Integer& a0,
                                           const FactorBudget& budget = {}) {
    CurveSpec spec = make_general_quartic(a3, a2, a1, a0);
    const IntPoly f = quartic_poly(std::get<GeneralQuartic>(spec));

    const ZPolyInZ D = resultant_in_z(f);
    std::optional<DoubleRoot> root;
    try {
        root = rational_double_root(D);
    } catch (const nonsquare_denominator_error&) {
        return MethodInapplicable{
            "denominator of the repeated root of D(z) is not a perfect square"};
    }
    if (!root)
        return MethodInapplicable{"D(z) has no repeated rational root"};

    const Integer& A = root->A;
    const Integer& B = root->B;
    if (A == 0)
        throw domain_error("quartic: z0 = 0 means f is a rational square");

    IntPoly shifted = scale(f, B * B);
    shifted = add(shifted, IntPoly{A});
    const auto r = poly_square_root(shifted);
    if (!r)
        return MethodInapplicable{"B^2 f + A is not the square of a polynomial"};

    Factorization fac = factorize(A, budget);
    const Integer two_B = 2 * B;
    // r is quadratic; solve r(x) = (e1+e2)/2 by the discriminant.
    const Integer& r2 = r->coeff(2);
    const Integer& r1 = r->coeff(1);
    const Integer& r0 = r->coeff(0);

    detail::PointAccumulator acc(spec);
    std::uint64_t pairs = 0;
    for_each_signed_divisor_pair(A, fac, [&](const Integer& e1, const Integer& e2) {
        ++pairs;
        if (!detail::same_parity(e1, e2))
            return;
        const Integer rhs = (e1 + e2) / 2;
        Integer ydiff = e2 - e1;
        if (!mpz_divisible_p(ydiff.get_mpz_t(), two_B.get_mpz_t()))
            return;
        mpz_divexact(ydiff.get_mpz_t(), ydiff.get_mpz_t(), two_B.get_mpz_t());
        // r2 x^2 + r1 x + (r0 - rhs) = 0
        const Integer disc = r1 * r1 - 4 * r2 * (r0 - rhs);
        if (disc < 0)
            return;
        const auto sq = as_perfect_square(disc);
        if (!sq)
            return;
        const Integer den = 2 * r2;
        for (int sgn : {+1, -1}) {
            const Integer t = -r1 + (sgn > 0 ? *sq : Integer(-*sq));
            if (mpz_divisible_p(t.get_mpz_t(), den.get_mpz_t()))
                acc.consider(Integer(t / den), ydiff);
            if (*sq == 0)
                break;
        }
    });
    return acc.finish(pairs, A, std::move(fac));
}

inline QuarticResult solve_general_quartic(const IntPoly& f,
                                           const FactorBudget& budget = {}) {
    if (f.degree() != 4)
        throw domain_error("quartic: polynomial must have degree 4");
    if (f.leading_coeff() != 1)
        throw domain_error(
            "quartic: only monic quartics are handled here; curves "
            "y^2 = c^2 x^4 + ax^2 + b belong to the family2 solver");
    return solve_general_quartic(f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0),
                                 budget);
}

// Dispatcher over a CurveSpec. Family solvers always produce a SolutionSet;
// the general quartic may instead report MethodInapplicable.
inline QuarticResult solve(const CurveSpec& spec, const FactorBudget& budget = {}) {
    return std::visit(
        detail::overloaded{
            [&](const Family1& s) -> QuarticResult {
                return solve_family1(s.a, s.b, s.k, budget);
            },
            [&](const Family2& s) -> QuarticResult {
                return solve_family2(s.c, s.a, s.b, budget);
            },
            [&](const Family3& s) -> QuarticResult {
                return solve_family3(s.c, s.a, s.b, budget);
            },
            [&](const Sextic& s) -> QuarticResult {
                return solve_sextic(s.alpha, budget);
            },
            [&](const GeneralQuartic& s) -> QuarticResult {
                return solve_general_quartic(s.a3, s.a2, s.a1, s.a0, budget);
            },
            [&](const MasserBiquadratic& s) -> QuarticResult {
                return solve_masser_biquadratic(s.b, s.d, budget);
            },
        },
        spec);
}

}  // namespace hyperell::solvers
