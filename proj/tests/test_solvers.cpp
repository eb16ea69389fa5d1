#include <algorithm>
#include <variant>
#include <vector>

#include "test_util.hpp"

using namespace hyperell;
using testutil::points;
using testutil::seeded_rng;
using testutil::signed_range;

namespace {

const SolutionSet& as_set(const QuarticResult& r) {
    REQUIRE(std::holds_alternative<SolutionSet>(r));
    return std::get<SolutionSet>(r);
}

void check_set_invariants(const SolutionSet& set) {
    REQUIRE(std::is_sorted(set.points.begin(), set.points.end()));
    REQUIRE(std::adjacent_find(set.points.begin(), set.points.end()) ==
            set.points.end());
    for (const auto& p : set.points) {
        REQUIRE(p.y >= 0);
        REQUIRE(satisfies(set.spec, p.x, p.y));
    }
    REQUIRE(set.meta.factorization.product() == abs(set.meta.factored_integer));
}

}  // namespace

TEST_CASE("family1 reference sets") {
    const auto a = solve_family1(1, 2, 41);
    check_set_invariants(a);
    REQUIRE(a.points == points({{-51, 420},
                                {-43, 0},
                                {-42, 0},
                                {-22, 420},
                                {-2, 0},
                                {-1, 0},
                                {7, 420}}));
    REQUIRE(a.meta.factored_integer == 1681);  // (k(a-b))^2

    const auto b = solve_family1(3, -2, 9);
    check_set_invariants(b);
    REQUIRE(b.points == points({{-19, 168},
                                {-13, 30},
                                {-12, 0},
                                {-7, 0},
                                {-6, 12},
                                {-5, 14},
                                {-4, 12},
                                {-3, 0},
                                {2, 0},
                                {3, 30},
                                {9, 168}}));

    // Roots of the quartic are always present.
    const auto c = solve_family1(0, 1, 1);
    REQUIRE(c.points == points({{-2, 0}, {-1, 0}, {0, 0}}));
}

TEST_CASE("family1 degenerate parameters are rejected") {
    REQUIRE_THROWS_AS(solve_family1(3, 3, 5), domain_error);
    REQUIRE_THROWS_AS(solve_family1(1, 2, 0), domain_error);
    REQUIRE_THROWS_AS(bound_family1(1, 1, 1), domain_error);
}

TEST_CASE("family3 reference sets") {
    const auto a = solve_family3(6, 13, 2);
    check_set_invariants(a);
    REQUIRE(a.points == points({{-2, 5}, {2, 5}}));

    const auto b = solve_family3(12, -30, -24);
    check_set_invariants(b);
    REQUIRE(b.points == points({{-2, 2}, {2, 2}}));

    const auto c = solve_family3(1, 0, -1);  // y^2 = x^4 - 1
    REQUIRE(c.points == points({{-1, 0}, {1, 0}}));

    REQUIRE_THROWS_AS(solve_family3(0, 1, 1), domain_error);
    REQUIRE_THROWS_AS(solve_family3(2, 4, 2), domain_error);  // a^2 = 4bc
}

TEST_CASE("sextic trivial points and alpha symmetry") {
    const auto s2 = solve_sextic(2);
    check_set_invariants(s2);
    REQUIRE(s2.points ==
            points({{-3, 0}, {-2, 0}, {-1, 0}, {1, 0}, {2, 0}, {3, 0}}));

    // alpha and -(alpha+1) describe the same curve
    REQUIRE(solve_sextic(-3).points == s2.points);
    REQUIRE(solve_sextic(5).points == solve_sextic(-6).points);

    for (long bad : {-2L, -1L, 0L, 1L})
        REQUIRE_THROWS_AS(solve_sextic(bad), domain_error);
}

TEST_CASE("masser biquadratic reference sets") {
    const auto a = solve_masser_biquadratic(-5, 4);
    check_set_invariants(a);
    REQUIRE(a.points == points({{-2, 0}, {-1, 0}, {0, 2}, {1, 0}, {2, 0}}));

    const auto b = solve_masser_biquadratic(0, -1);
    REQUIRE(b.points == points({{-1, 0}, {1, 0}}));

    REQUIRE_THROWS_AS(solve_masser_biquadratic(2, 1), domain_error);  // b^2 = 4d
}

TEST_CASE("family2 reference sets") {
    const auto empty = solve_family2(7, -15, -2);
    check_set_invariants(empty);
    REQUIRE(empty.points.empty());
    REQUIRE(empty.meta.factored_integer == 617);

    const auto big = solve_family2(1, -(Integer(1) << 10), 1);
    check_set_invariants(big);
    REQUIRE(big.points == points({{-32, 1}, {0, 1}, {32, 1}}));

    REQUIRE_THROWS_AS(solve_family2(0, 3, 1), domain_error);
    REQUIRE_THROWS_AS(solve_family2(3, 6, 1), domain_error);  // a^2 = 4bc^2
}

TEST_CASE("general quartic pipeline") {
    SECTION("agrees with the family1 expansion") {
        const auto direct = as_set(solve_general_quartic(88, 2063, 5588, 3612));
        check_set_invariants(direct);
        REQUIRE(direct.points == solve_family1(1, 2, 41).points);
        REQUIRE(direct.meta.factored_integer == 1681);  // A from z0 = 1681/4
    }
    SECTION("reports inapplicability when B^2 f + A is not a square") {
        const auto r = solve_general_quartic(225, 0, 0, 49);
        REQUIRE(std::holds_alternative<MethodInapplicable>(r));
    }
    SECTION("critical value at an inflexion-free square case") {
        // y^2 = x^4 + 1 has z0 = -1 with B = 1 and r(x) = x^2.
        const auto r = as_set(solve_general_quartic(0, 0, 0, 1));
        REQUIRE(r.points == points({{0, 1}}));
        REQUIRE(r.points == solve_masser_biquadratic(0, 1).points);
    }
    SECTION("perfect-square right-hand side is a domain error") {
        // (x^2 + 1)^2
        REQUIRE_THROWS_AS(solve_general_quartic(0, 2, 0, 1), domain_error);
    }
    SECTION("IntPoly overload enforces monic degree 4") {
        REQUIRE_THROWS_AS(solve_general_quartic(IntPoly{1, 2, 3}), domain_error);
        REQUIRE_THROWS_AS(solve_general_quartic(IntPoly{1, 0, 0, 0, 4}), domain_error);
        const auto r = as_set(solve_general_quartic(IntPoly{3612, 5588, 2063, 88, 1}));
        REQUIRE(r.points == solve_family1(1, 2, 41).points);
    }
}

TEST_CASE("solve dispatches on the curve spec") {
    const CurveSpec spec = solvers::make_family3(6, 13, 2);
    const auto r = as_set(solvers::solve(spec));
    REQUIRE(r.points == points({{-2, 5}, {2, 5}}));
    REQUIRE(std::holds_alternative<MethodInapplicable>(
        solvers::solve(solvers::make_general_quartic(225, 0, 0, 49))));
}

TEST_CASE("family1 agrees with the oracle on random small instances") {
    auto rng = seeded_rng(20);
    int tested = 0;
    while (tested < 40) {
        const Integer a = signed_range(rng, 5);
        const Integer b = signed_range(rng, 5);
        const Integer k = signed_range(rng, 5);
        if (a == b || k == 0)
            continue;
        ++tested;
        const auto set = solve_family1(a, b, k);
        check_set_invariants(set);
        const Integer bound = bound_family1(a, b, k);
        const auto scanned = oracle::scan(square_rhs(set.spec), {-bound, bound});
        const auto report = oracle::cross_check(set.points, scanned);
        INFO("family1(" << a.get_str() << "," << b.get_str() << "," << k.get_str()
                        << ")");
        REQUIRE(report.ok());
        // N is a perfect square, so the self-paired divisors +-sqrt(N) join
        // the tau unordered pairs: at most 2(tau + 1) points in total
        REQUIRE(Integer(set.points.size()) <= 2 * set.meta.factorization.tau() + 2);
    }
}

TEST_CASE("masser, family2, and the oracle agree on random instances") {
    auto rng = seeded_rng(21);
    int tested = 0;
    while (tested < 60) {
        const Integer b = signed_range(rng, 30);
        const Integer d = signed_range(rng, 30);
        if (b * b == 4 * d)
            continue;
        ++tested;
        const auto via_masser = solve_masser_biquadratic(b, d);
        const auto via_family2 = solve_family2(1, b, d);
        check_set_invariants(via_masser);
        check_set_invariants(via_family2);
        REQUIRE(via_masser.points == via_family2.points);

        const Integer e = 4 * d - b * b;
        const Integer bound = isqrt(Integer((abs(e) + 1 + 2 * abs(b)) / 4)) + 1;
        const auto scanned =
            oracle::scan(IntPoly{d, 0, b, 0, 1}, {Integer(-bound), bound});
        INFO("masser(" << b.get_str() << "," << d.get_str() << ")");
        REQUIRE(oracle::cross_check(via_masser.points, scanned).ok());
    }
}

TEST_CASE("family3 agrees with a weighted brute-force scan") {
    auto rng = seeded_rng(22);
    int tested = 0;
    while (tested < 50) {
        const Integer c = signed_range(rng, 6);
        const Integer a = signed_range(rng, 12);
        const Integer b = signed_range(rng, 12);
        if (c == 0 || a * a - 4 * b * c == 0)
            continue;
        ++tested;
        const auto set = solve_family3(c, a, b);
        check_set_invariants(set);

        // every solution has 2|c| x^2 <= (|Delta| + 1)/2 + |a|
        const Integer Delta = a * a - 4 * b * c;
        const Integer bound =
            isqrt(Integer((abs(Delta) + 1 + 2 * abs(a)) / (4 * abs(c)))) + 1;
        std::vector<IntegerPoint> scanned;
        for (Integer x = -bound; x <= bound; ++x) {
            const Integer v = c * x * x * x * x + a * x * x + b;
            if (!mpz_divisible_p(v.get_mpz_t(), c.get_mpz_t()))
                continue;
            const Integer w = v / c;
            if (const auto y = as_perfect_square(w))
                scanned.push_back(IntegerPoint{x, *y});
        }
        INFO("family3(" << c.get_str() << "," << a.get_str() << "," << b.get_str()
                        << ")");
        REQUIRE(oracle::cross_check(set.points, scanned).ok());
    }
}

TEST_CASE("even curves are symmetric in x") {
    auto rng = seeded_rng(23);
    for (int i = 0; i < 30; ++i) {
        const Integer b = signed_range(rng, 40);
        const Integer d = signed_range(rng, 40);
        if (b * b == 4 * d)
            continue;
        const auto set = solve_masser_biquadratic(b, d);
        for (const auto& p : set.points)
            REQUIRE(set.contains(Integer(-p.x), p.y));
    }
}

TEST_CASE("solver propagates factorization budget exhaustion") {
    // delta = a^2 - 4bc^2 = 4 p q with two 10-digit primes and b chosen
    // negative and non-square so no algebraic split applies.
    const Integer q = Integer("1000000007") * Integer("1000000009");
    FactorBudget tiny;
    tiny.max_rho_steps = 8;
    REQUIRE_THROWS_AS(solve_family2(1, 0, Integer(-q), tiny), budget_error);
}

TEST_CASE("solution metadata records the driving factorization") {
    const auto set = solve_family1(1, 2, 41);
    REQUIRE(set.meta.divisor_pairs_examined > 0);
    REQUIRE(set.meta.factorization.tau() == 3);  // tau(41^2)
    const auto f2 = solve_family2(1, -7, 3);
    REQUIRE(f2.meta.factored_integer == 37);  // 49 - 12
}
