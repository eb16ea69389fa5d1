#pragma once

// Brute-force integer-point finder: scans x over an interval and tests
// whether f(x) is a perfect square. Deliberately naive (no congruence
// sieving) so it can serve as an independent referee for the solvers. The
// only shared machinery is isqrt / as_perfect_square; in particular the
// oracle never consults the factorization code it helps validate.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "hyperell/curves.hpp"
#include "hyperell/errors.hpp"
#include "hyperell/intarith.hpp"
#include "hyperell/poly.hpp"

namespace hyperell::oracle {

using intarith::Integer;
using poly::IntPoly;
using solvers::IntegerPoint;
using solvers::SolutionSet;

// Inclusive interval of x values to test.
struct ScanRange {
    Integer lo;
    Integer hi;
};

namespace detail {

constexpr std::uint64_t kChunk = 1u << 16;  // x values per work unit

inline void scan_block(const IntPoly& f, const Integer& first, std::uint64_t count,
                       std::vector<IntegerPoint>& out) {
    Integer x = first;
    Integer v, root;
    for (std::uint64_t i = 0; i < count; ++i) {
        v = poly::eval(f, x);
        // negative values cannot be squares; skip the root extraction
        if (v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0) {
            mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
            out.push_back(IntegerPoint{x, root});
        }
        x += 1;
    }
}

}  // namespace detail

// All (x, y) with x in the range, f(x) = y^2, y >= 0; sorted by (x, y).
// Work is split into 2^16-wide chunks scanned in parallel.
inline std::vector<IntegerPoint> scan(const IntPoly& f, const ScanRange& range) {
    if (f.is_zero())
        throw domain_error("scan: f must be nonzero");
    if (range.lo > range.hi)
        throw domain_error("scan: empty range (lo > hi)");
    Integer total = range.hi - range.lo + 1;
    if (mpz_sizeinbase(total.get_mpz_t(), 2) > 62)
        throw domain_error("scan: range too large to enumerate");
    const std::uint64_t n = mpz_get_ui(total.get_mpz_t());

    const std::uint64_t chunks = (n + detail::kChunk - 1) / detail::kChunk;
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0)
        workers = 1;
    if (chunks < workers)
        workers = static_cast<unsigned>(chunks);

    std::vector<IntegerPoint> points;
    if (workers <= 1) {
        detail::scan_block(f, range.lo, n, points);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::vector<IntegerPoint>> found(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (;;) {
                    const std::uint64_t chunk = next.fetch_add(1);
                    if (chunk >= chunks)
                        return;
                    const std::uint64_t offset = chunk * detail::kChunk;
                    const std::uint64_t count =
                        std::min<std::uint64_t>(detail::kChunk, n - offset);
                    detail::scan_block(f, Integer(range.lo + offset), count, found[w]);
                }
            });
        }
        for (auto& t : pool)
            t.join();
        for (auto& part : found)
            points.insert(points.end(), part.begin(), part.end());
    }
    std::sort(points.begin(), points.end());
    return points;
}

// Discrepancies between a solver result and an exhaustive scan of y^2 = f(x)
// over the same range. Soundness breaches are solver points the scan did not
// confirm; completeness breaches are scanned points the solver missed.
struct CrossCheckReport {
    std::vector<IntegerPoint> soundness_breaches;
    std::vector<IntegerPoint> completeness_breaches;

    bool ok() const { return soundness_breaches.empty() && completeness_breaches.empty(); }
};

// Both inputs must be sorted ascending by (x, y).
inline CrossCheckReport cross_check(const std::vector<IntegerPoint>& claimed,
                                    const std::vector<IntegerPoint>& scanned) {
    CrossCheckReport report;
    std::set_difference(claimed.begin(), claimed.end(), scanned.begin(), scanned.end(),
                        std::back_inserter(report.soundness_breaches));
    std::set_difference(scanned.begin(), scanned.end(), claimed.begin(), claimed.end(),
                        std::back_inserter(report.completeness_breaches));
    return report;
}

inline CrossCheckReport cross_check(const SolutionSet& solver_out, const IntPoly& f,
                                    const ScanRange& range) {
    return cross_check(solver_out.points, scan(f, range));
}

}  // namespace hyperell::oracle
