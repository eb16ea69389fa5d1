#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "test_util.hpp"

using namespace hyperell;
using testutil::seeded_rng;
using testutil::signed_bits;

TEST_CASE("isqrt floors exactly") {
    REQUIRE(isqrt(Integer(0)) == 0);
    REQUIRE(isqrt(Integer(1)) == 1);
    REQUIRE(isqrt(Integer(3)) == 1);
    REQUIRE(isqrt(Integer(4)) == 2);
    REQUIRE(isqrt(Integer(99)) == 9);
    REQUIRE_THROWS_AS(isqrt(Integer(-1)), domain_error);

    auto rng = seeded_rng(1);
    for (int i = 0; i < 1000; ++i) {
        const Integer n = rng.get_z_bits(256);
        const Integer r = isqrt(n);
        REQUIRE(r * r <= n);
        REQUIRE((r + 1) * (r + 1) > n);
    }
}

TEST_CASE("as_perfect_square recognizes exactly the squares") {
    REQUIRE(as_perfect_square(Integer(0)).value() == 0);
    REQUIRE(as_perfect_square(Integer(1)).value() == 1);
    REQUIRE(as_perfect_square(Integer(1681)).value() == 41);
    REQUIRE_FALSE(as_perfect_square(Integer(2)).has_value());
    REQUIRE_FALSE(as_perfect_square(Integer(-4)).has_value());

    auto rng = seeded_rng(2);
    for (int i = 0; i < 1000; ++i) {
        const Integer m = rng.get_z_bits(200) + 2;
        REQUIRE(as_perfect_square(Integer(m * m)).value() == m);
        REQUIRE_FALSE(as_perfect_square(Integer(m * m + 1)).has_value());
        REQUIRE_FALSE(as_perfect_square(Integer(m * m - 1)).has_value());
    }
}

TEST_CASE("is_probable_prime on known primes and composites") {
    for (long p : {2L, 3L, 5L, 7L, 97L, 1000000007L})
        REQUIRE(is_probable_prime(Integer(p)));
    REQUIRE(is_probable_prime(Integer("2305843009213693951")));  // 2^61 - 1
    REQUIRE(is_probable_prime((Integer(1) << 107) - 1));         // 33-digit prime

    for (long c : {0L, 1L, -7L, 4L, 561L, 1000000007L * 3})
        REQUIRE_FALSE(is_probable_prime(Integer(c)));
    // 2^67 - 1 = 193707721 * 761838257287
    REQUIRE_FALSE(is_probable_prime((Integer(1) << 67) - 1));
}

namespace {

void check_complete(const Factorization& fac, const Integer& n) {
    REQUIRE(fac.n == abs(n));
    REQUIRE(fac.product() == abs(n));
    for (std::size_t i = 0; i + 1 < fac.factors.size(); ++i)
        REQUIRE(fac.factors[i].first < fac.factors[i + 1].first);
    for (const auto& [p, e] : fac.factors) {
        REQUIRE(e >= 1);
        REQUIRE(is_probable_prime(p));
    }
}

}  // namespace

TEST_CASE("factorize recombines and certifies") {
    const Factorization f360 = factorize(Integer(360));
    REQUIRE(f360.factors ==
            std::vector<std::pair<Integer, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
    REQUIRE(factorize(Integer(1)).factors.empty());
    REQUIRE(factorize(Integer(-12)).factors ==
            std::vector<std::pair<Integer, unsigned>>{{2, 2}, {3, 1}});
    REQUIRE_THROWS_AS(factorize(Integer(0)), domain_error);

    SECTION("random 64-bit integers") {
        auto rng = seeded_rng(3);
        for (int i = 0; i < 300; ++i) {
            const Integer n = rng.get_z_bits(64) + 1;
            check_complete(factorize(n), n);
        }
    }
    SECTION("perfect powers") {
        Integer n = Integer(1) << 120;
        const Factorization f = factorize(n);
        REQUIRE(f.factors == std::vector<std::pair<Integer, unsigned>>{{2, 120}});
        const Integer p("1000000007");
        check_complete(factorize(Integer(p * p)), Integer(p * p));
    }
    SECTION("semiprime beyond trial division") {
        const Integer n = Integer("1000000007") * Integer("1000000009");
        check_complete(factorize(n), n);
    }
    SECTION("cache returns the same answer") {
        const Integer n("987654321987654321");
        REQUIRE(factorize(n) == factorize(n));
    }
}

TEST_CASE("factorize budget exhaustion carries the partial result") {
    // Two 20-digit primes: far beyond trial division, and rho cannot split
    // the product in 10 steps.
    const Integer p("9520972806333758431");
    const Integer q("26831423036065352611");
    const Integer n = 4 * p * q;
    FactorBudget tiny;
    tiny.max_rho_steps = 10;
    try {
        factorize(n, tiny);
        FAIL("expected budget_error");
    } catch (const budget_error& e) {
        Integer rebuilt = e.unfactored_cofactor;
        REQUIRE(rebuilt > 1);
        for (const auto& [f, mult] : e.partial_factors)
            for (unsigned i = 0; i < mult; ++i)
                rebuilt *= f;
        REQUIRE(rebuilt == n);
    }
    // A second identical call fails the same way: the incomplete result must
    // not have been cached as if it were complete.
    REQUIRE_THROWS_AS(factorize(n, tiny), budget_error);
    check_complete(factorize(Integer(4 * p)), Integer(4 * p));
}

TEST_CASE("merge_factorizations and square_factorization compose") {
    auto rng = seeded_rng(4);
    for (int i = 0; i < 50; ++i) {
        const Integer a = rng.get_z_bits(40) + 2;
        const Integer b = rng.get_z_bits(40) + 2;
        const Factorization merged = merge_factorizations(factorize(a), factorize(b));
        REQUIRE(merged == factorize(Integer(a * b)));
        const Factorization squared = square_factorization(factorize(a));
        REQUIRE(squared == factorize(Integer(a * a)));
    }
}

TEST_CASE("divisors match brute-force enumeration") {
    auto rng = seeded_rng(5);
    for (int i = 0; i < 40; ++i) {
        const Integer n = rng.get_z_range(Integer(5000)) + 1;
        const Factorization fac = factorize(n);
        std::vector<Integer> brute;
        for (Integer d = 1; d <= n; ++d)
            if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
                brute.push_back(d);
        REQUIRE(divisors(fac) == brute);
        REQUIRE(fac.tau() == Integer(brute.size()));

        std::size_t streamed = 0;
        for_each_divisor(fac, [&](const Integer& d) {
            ++streamed;
            REQUIRE(mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()));
        });
        REQUIRE(streamed == brute.size());
    }
}

TEST_CASE("signed divisor pairs cover both sign patterns") {
    using Pair = std::pair<Integer, Integer>;
    SECTION("positive N") {
        const auto pairs = signed_divisor_pairs(Integer(12));
        const std::vector<Pair> expected = {{-12, -1}, {-6, -2}, {-4, -3},
                                            {1, 12},   {2, 6},   {3, 4}};
        REQUIRE(pairs == expected);
    }
    SECTION("negative N") {
        const auto pairs = signed_divisor_pairs(Integer(-12));
        const std::vector<Pair> expected = {{-12, 1}, {-6, 2}, {-4, 3},
                                            {-3, 4},  {-2, 6}, {-1, 12}};
        REQUIRE(pairs == expected);
    }
    SECTION("square N keeps the middle pair once per sign") {
        const auto pairs = signed_divisor_pairs(Integer(36));
        REQUIRE(pairs.size() == 10);
        REQUIRE(std::count(pairs.begin(), pairs.end(), Pair{6, 6}) == 1);
        REQUIRE(std::count(pairs.begin(), pairs.end(), Pair{-6, -6}) == 1);
    }
    SECTION("products and uniqueness on random N") {
        auto rng = seeded_rng(6);
        for (int i = 0; i < 25; ++i) {
            Integer n = rng.get_z_range(Integer(100000)) + 2;
            if (i % 2)
                n = -n;
            const auto pairs = signed_divisor_pairs(n);
            std::set<Pair> seen;
            for (const auto& pr : pairs) {
                REQUIRE(pr.first * pr.second == n);
                REQUIRE(pr.first <= pr.second);
                REQUIRE(seen.insert(pr).second);
            }
        }
    }
    SECTION("N = 0 rejected") {
        REQUIRE_THROWS_AS(signed_divisor_pairs(Integer(0)), domain_error);
    }
}
