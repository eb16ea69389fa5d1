#pragma once

// Arbitrary-precision integer utilities: integer square root, perfect-square
// detection, Miller-Rabin primality, factorization (trial division + Brent's
// variant of Pollard rho with batched gcd), and signed divisor-pair
// enumeration. Everything is exact; nothing here ever rounds.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include <gmp.h>
#include <gmpxx.h>

#include "hyperell/errors.hpp"

namespace hyperell::intarith {

using Integer = mpz_class;

// ---------------------------------------------------------------------------
// Square roots and squares
// ---------------------------------------------------------------------------

// Floor square root: r with r^2 <= n < (r+1)^2. Throws on n < 0.
inline Integer isqrt(const Integer& n) {
    if (n < 0)
        throw domain_error("isqrt: negative argument");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// If n = d^2 for some d >= 0, returns d; otherwise empty. Negative n is never
// a square.
inline std::optional<Integer> as_perfect_square(const Integer& n) {
    if (n < 0)
        return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0)
        return std::nullopt;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

namespace detail {

// One strong-probable-prime round to base a, given n-1 = d * 2^s with d odd.
inline bool miller_rabin_round(const mpz_class& n, const mpz_class& a,
                               const mpz_class& d, unsigned long s) {
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    mpz_class nm1 = n - 1;
    if (x == 1 || x == nm1)
        return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == nm1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

inline gmp_randclass& witness_rng() {
    // Deterministic seed, thread-local so concurrent callers do not race.
    thread_local gmp_randclass rng(gmp_randinit_mt);
    thread_local bool seeded = false;
    if (!seeded) {
        rng.seed(0x9e3779b97f4a7c15ULL);
        seeded = true;
    }
    return rng;
}

}  // namespace detail

// Strong probable-prime test. Deterministic (12 fixed bases) for n < 2^64;
// 64 pseudo-random witness rounds above that, error probability < 2^-128.
// n <= 1 (including all negatives) is never prime.
inline bool is_probable_prime(const Integer& n) {
    static const unsigned long tiny[] = {2,  3,  5,  7,  11, 13,
                                         17, 19, 23, 29, 31, 37};
    if (n < 2)
        return false;
    for (unsigned long p : tiny) {
        if (mpz_cmp_ui(n.get_mpz_t(), p) == 0)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    if (mpz_fits_ulong_p(n.get_mpz_t()) != 0 || mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // The 12-base set is exact far beyond 2^64.
        for (unsigned long a : tiny)
            if (!detail::miller_rabin_round(n, mpz_class(a), d, s))
                return false;
        return true;
    }
    auto& rng = detail::witness_rng();
    mpz_class span = n - 3;
    for (int round = 0; round < 64; ++round) {
        mpz_class a = rng.get_z_range(span) + 2;  // a in [2, n-2]
        if (!detail::miller_rabin_round(n, a, d, s))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

// Complete prime factorization of a positive integer.
struct Factorization {
    Integer n;                                           // the integer factored
    std::vector<std::pair<Integer, unsigned>> factors;   // primes strictly increasing

    Integer product() const {
        Integer p = 1;
        for (const auto& [q, e] : factors)
            for (unsigned i = 0; i < e; ++i)
                p *= q;
        return p;
    }

    // Number of positive divisors.
    Integer tau() const {
        Integer t = 1;
        for (const auto& [q, e] : factors)
            t *= e + 1;
        return t;
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

// Optional limit on the factorization effort. Exceeding it raises
// budget_error; a partial answer is never returned as if it were complete.
struct FactorBudget {
    std::optional<std::uint64_t> max_rho_steps;
    std::optional<std::chrono::milliseconds> max_time;
};

namespace detail {

constexpr unsigned long kTrialDivisionBound = 1'000'000;

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialDivisionBound + 1, false);
        std::vector<std::uint32_t> ps;
        for (std::uint32_t i = 2; i <= kTrialDivisionBound; ++i) {
            if (composite[i])
                continue;
            ps.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialDivisionBound; j += i)
                composite[j] = true;
        }
        return ps;
    }();
    return primes;
}

struct BudgetClock {
    std::uint64_t steps_left;
    bool has_steps;
    std::chrono::steady_clock::time_point deadline;
    bool has_deadline;

    explicit BudgetClock(const FactorBudget& b)
        : steps_left(b.max_rho_steps.value_or(0)),
          has_steps(b.max_rho_steps.has_value()),
          has_deadline(b.max_time.has_value()) {
        if (has_deadline)
            deadline = std::chrono::steady_clock::now() + *b.max_time;
    }

    // Charge `used` rho steps; false once the budget is gone.
    bool charge(std::uint64_t used) {
        if (has_steps) {
            if (used > steps_left) {
                steps_left = 0;
                return false;
            }
            steps_left -= used;
        }
        if (has_deadline && std::chrono::steady_clock::now() > deadline)
            return false;
        return true;
    }
};

// Brent's cycle-finding rho with gcds batched over ~128 multiplications.
// Returns a nontrivial factor of n, or 0 if the budget ran out, or n itself
// if this (x0, c) choice failed and the caller should retry.
inline mpz_class rho_brent(const mpz_class& n, unsigned long c, BudgetClock& clock) {
    constexpr unsigned long kBatch = 128;
    mpz_class y(2), x, ys, q(1), g(1), diff;
    unsigned long r = 1;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) {
            mpz_mul(y.get_mpz_t(), y.get_mpz_t(), y.get_mpz_t());
            mpz_add_ui(y.get_mpz_t(), y.get_mpz_t(), c);
            mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
        }
        if (!clock.charge(r))
            return 0;
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            const unsigned long lim = std::min(kBatch, r - k);
            for (unsigned long i = 0; i < lim; ++i) {
                mpz_mul(y.get_mpz_t(), y.get_mpz_t(), y.get_mpz_t());
                mpz_add_ui(y.get_mpz_t(), y.get_mpz_t(), c);
                mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
                mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                mpz_mul(q.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            g = gcd(q, n);
            k += lim;
            if (!clock.charge(lim))
                return 0;
        }
        r *= 2;
    }
    if (g == n) {
        // The batch overshot; replay one step at a time from the saved point.
        g = 1;
        while (g == 1) {
            mpz_mul(ys.get_mpz_t(), ys.get_mpz_t(), ys.get_mpz_t());
            mpz_add_ui(ys.get_mpz_t(), ys.get_mpz_t(), c);
            mpz_mod(ys.get_mpz_t(), ys.get_mpz_t(), n.get_mpz_t());
            diff = abs(x - ys);
            if (diff == 0)
                return n;  // full cycle, retry with another c
            g = gcd(diff, n);
            if (!clock.charge(1))
                return 0;
        }
    }
    return g;
}

}  // namespace detail

// Complete factorization of |n|. Strategy: trial division by primes up to
// 10^6, then perfect-power reduction and Pollard rho (Brent variant), with
// every reported prime certified by is_probable_prime. Results are cached
// per process, keyed by |n|; cache access is mutex-guarded.
//
// Throws domain_error on n = 0 and budget_error (carrying the partial
// result) when the budget is exhausted before the factorization completes.
inline Factorization factorize(const Integer& n, const FactorBudget& budget = {}) {
    if (n == 0)
        throw domain_error("factorize: 0 has no prime factorization");
    Integer m = abs(n);

    static std::mutex cache_mutex;
    static std::map<Integer, Factorization> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(m);
        if (it != cache.end())
            return it->second;
    }

    Factorization result;
    result.n = m;
    std::map<Integer, unsigned> primes;

    for (std::uint32_t p : detail::small_primes()) {
        if (m == 1)
            break;
        if (mpz_cmp_ui(m.get_mpz_t(), std::uint64_t(p) * p) < 0) {
            // remaining cofactor is prime
            break;
        }
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            primes[Integer(p)] += 1;
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        }
    }

    detail::BudgetClock clock(budget);
    // Work list of (composite-or-prime cofactor, multiplicity).
    std::vector<std::pair<Integer, unsigned>> pending;
    if (m > 1)
        pending.emplace_back(m, 1u);

    auto raise_budget_error = [&]() {
        std::vector<std::pair<Integer, unsigned>> partial(primes.begin(), primes.end());
        Integer cofactor = 1;
        for (const auto& [v, mult] : pending)
            for (unsigned i = 0; i < mult; ++i)
                cofactor *= v;
        throw budget_error("factorize: budget exhausted, factorization incomplete",
                           std::move(partial), std::move(cofactor));
    };

    while (!pending.empty()) {
        auto [v, mult] = pending.back();
        pending.pop_back();
        if (is_probable_prime(v)) {
            primes[v] += mult;
            continue;
        }
        if (mpz_perfect_power_p(v.get_mpz_t())) {
            Integer root;
            unsigned long e = 2;
            for (;; ++e) {
                if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), e) != 0)
                    break;
            }
            pending.emplace_back(root, mult * static_cast<unsigned>(e));
            continue;
        }
        mpz_class g = v;  // force first iteration
        for (unsigned long c = 1; g == v || g == 1; ++c) {
            g = detail::rho_brent(v, c, clock);
            if (g == 0) {
                pending.emplace_back(v, mult);
                raise_budget_error();
            }
        }
        pending.emplace_back(g, mult);
        pending.emplace_back(Integer(v / g), mult);
    }

    result.factors.assign(primes.begin(), primes.end());

    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(result.n, result);
    }
    return result;
}

// Factorization of |a.n * b.n| assembled from the factorizations of the parts.
// Factoring an integer through a known splitting into smaller parts is often
// dramatically cheaper than factoring the product directly.
inline Factorization merge_factorizations(const Factorization& a, const Factorization& b) {
    Factorization out;
    out.n = a.n * b.n;
    std::map<Integer, unsigned> primes;
    for (const auto& [p, e] : a.factors)
        primes[p] += e;
    for (const auto& [p, e] : b.factors)
        primes[p] += e;
    out.factors.assign(primes.begin(), primes.end());
    return out;
}

// Factorization of n^2 from a factorization of n. Squares should be factored
// through their root: Pollard rho degrades badly on inputs divisible by p^2.
inline Factorization square_factorization(const Factorization& fac) {
    Factorization out;
    out.n = fac.n * fac.n;
    out.factors = fac.factors;
    for (auto& [p, e] : out.factors)
        e *= 2;
    return out;
}

// ---------------------------------------------------------------------------
// Divisors
// ---------------------------------------------------------------------------

// Calls fn(d) once for every positive divisor d of the factored integer, in
// mixed-radix (odometer) order, without materializing the divisor list.
template <typename Fn>
void for_each_divisor(const Factorization& fac, Fn&& fn) {
    const std::size_t k = fac.factors.size();
    std::vector<unsigned> exp(k, 0);
    std::vector<Integer> full_power(k);  // p_i^{e_i max}, for the carry reset
    for (std::size_t i = 0; i < k; ++i) {
        Integer pw;
        mpz_pow_ui(pw.get_mpz_t(), fac.factors[i].first.get_mpz_t(),
                   fac.factors[i].second);
        full_power[i] = pw;
    }
    Integer d = 1;
    for (;;) {
        fn(static_cast<const Integer&>(d));
        std::size_t i = 0;
        for (; i < k; ++i) {
            if (exp[i] < fac.factors[i].second) {
                ++exp[i];
                d *= fac.factors[i].first;
                break;
            }
            mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), full_power[i].get_mpz_t());
            exp[i] = 0;
        }
        if (i == k)
            break;
    }
}

// All positive divisors, ascending.
inline std::vector<Integer> divisors(const Factorization& fac) {
    std::vector<Integer> out;
    for_each_divisor(fac, [&](const Integer& d) { out.push_back(d); });
    std::sort(out.begin(), out.end());
    return out;
}

// Streams every signed pair (d1, d2) with d1*d2 = N and d1 <= d2, each pair
// exactly once, in no particular order. fac must be the factorization of |N|.
template <typename Fn>
void for_each_signed_divisor_pair(const Integer& N, const Factorization& fac, Fn&& fn) {
    if (N == 0)
        throw domain_error("signed divisor pairs: N must be nonzero");
    const bool positive = N > 0;
    Integer absN = abs(N);
    Integer d2;
    for_each_divisor(fac, [&](const Integer& d) {
        mpz_divexact(d2.get_mpz_t(), absN.get_mpz_t(), d.get_mpz_t());
        if (positive) {
            if (d <= d2)
                fn(d, d2);
            if (d >= d2)
                fn(Integer(-d), Integer(-d2));
        } else {
            fn(Integer(-d), d2);
        }
    });
}

// Materialized version of the above, sorted ascending by (d1, d2).
// For N > 0 both all-positive and all-negative pairs appear; for N < 0 the
// pairs are mixed-sign with d1 < 0 < d2.
inline std::vector<std::pair<Integer, Integer>> signed_divisor_pairs(
    const Integer& N, const FactorBudget& budget = {}) {
    Factorization fac = factorize(N, budget);
    std::vector<std::pair<Integer, Integer>> pairs;
    for_each_signed_divisor_pair(N, fac, [&](const Integer& d1, const Integer& d2) {
        pairs.emplace_back(d1, d2);
    });
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace hyperell::intarith
