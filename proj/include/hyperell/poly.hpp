#pragma once

// Exact univariate polynomial algebra over the integers. Provides the
// resultant D(z) = Res_x(f(x)+z, f'(x)) of a quartic as a cubic in z, the
// rational-double-root extraction z0 = A/B^2 from D, exact polynomial square
// roots, and integer-root finding by divisor enumeration.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "hyperell/errors.hpp"
#include "hyperell/intarith.hpp"

namespace hyperell::poly {

using intarith::as_perfect_square;
using intarith::divisors;
using intarith::FactorBudget;
using intarith::Factorization;
using intarith::factorize;
using intarith::Integer;

// Dense polynomial with Integer coefficients, coeffs[i] multiplying x^i.
// Normalized: no trailing zero coefficients; the zero polynomial has an
// empty coefficient vector and degree -1.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::initializer_list<Integer> ascending) : c_(ascending) { normalize(); }
    explicit IntPoly(std::vector<Integer> ascending) : c_(std::move(ascending)) { normalize(); }

    static IntPoly monomial(std::size_t deg, Integer coeff = 1) {
        std::vector<Integer> c(deg + 1, Integer(0));
        c[deg] = std::move(coeff);
        return IntPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const Integer& coeff(std::size_t i) const {
        static const Integer zero(0);
        return i < c_.size() ? c_[i] : zero;
    }
    const Integer& leading_coeff() const {
        static const Integer zero(0);
        return c_.empty() ? zero : c_.back();
    }
    const std::vector<Integer>& coeffs() const { return c_; }

    friend bool operator==(const IntPoly& p, const IntPoly& q) { return p.c_ == q.c_; }
    friend bool operator!=(const IntPoly& p, const IntPoly& q) { return !(p == q); }

private:
    std::vector<Integer> c_;

    void normalize() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
};

// The same dense representation, read as a polynomial in z (the variable
// introduced by eliminating x from f(x)+z).
using ZPolyInZ = IntPoly;

// ---------------------------------------------------------------------------
// Ring operations
// ---------------------------------------------------------------------------

inline IntPoly add(const IntPoly& p, const IntPoly& q) {
    std::vector<Integer> c(std::max(p.coeffs().size(), q.coeffs().size()), Integer(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = p.coeff(i) + q.coeff(i);
    return IntPoly(std::move(c));
}

inline IntPoly sub(const IntPoly& p, const IntPoly& q) {
    std::vector<Integer> c(std::max(p.coeffs().size(), q.coeffs().size()), Integer(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = p.coeff(i) - q.coeff(i);
    return IntPoly(std::move(c));
}

inline IntPoly mul(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero())
        return IntPoly();
    std::vector<Integer> c(p.coeffs().size() + q.coeffs().size() - 1, Integer(0));
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        for (std::size_t j = 0; j < q.coeffs().size(); ++j)
            c[i + j] += p.coeffs()[i] * q.coeffs()[j];
    return IntPoly(std::move(c));
}

inline IntPoly scale(const IntPoly& p, const Integer& c) {
    if (c == 0)
        return IntPoly();
    std::vector<Integer> out(p.coeffs());
    for (auto& a : out)
        a *= c;
    return IntPoly(std::move(out));
}

inline IntPoly derivative(const IntPoly& p) {
    if (p.degree() < 1)
        return IntPoly();
    std::vector<Integer> c(p.coeffs().size() - 1);
    for (std::size_t i = 1; i < p.coeffs().size(); ++i)
        c[i - 1] = Integer(i) * p.coeffs()[i];
    return IntPoly(std::move(c));
}

inline Integer eval(const IntPoly& p, const Integer& x) {
    Integer acc(0);
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        acc *= x;
        acc += p.coeffs()[i];
    }
    return acc;
}

inline IntPoly operator+(const IntPoly& p, const IntPoly& q) { return add(p, q); }
inline IntPoly operator-(const IntPoly& p, const IntPoly& q) { return sub(p, q); }
inline IntPoly operator*(const IntPoly& p, const IntPoly& q) { return mul(p, q); }

// ---------------------------------------------------------------------------
// Resultants
// ---------------------------------------------------------------------------

// Res(p, q) via the (deg p + deg q)-square Sylvester matrix, evaluated with
// Bareiss fraction-free elimination (all intermediate divisions exact).
// Degenerate degrees fall back to the standard conventions
// Res(const c, q) = c^deg q. Both polynomials must be nonzero.
inline Integer sylvester_resultant(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero())
        throw domain_error("sylvester_resultant: zero polynomial");
    const int m = p.degree();
    const int n = q.degree();
    if (m == 0 && n == 0)
        return Integer(1);
    if (m == 0) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), p.leading_coeff().get_mpz_t(), n);
        return r;
    }
    if (n == 0) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), q.leading_coeff().get_mpz_t(), m);
        return r;
    }

    const int N = m + n;
    std::vector<std::vector<Integer>> a(N, std::vector<Integer>(N, Integer(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            a[i][i + j] = p.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            a[n + i][i + j] = q.coeff(n - j);

    int sign = 1;
    Integer prev(1);
    for (int k = 0; k + 1 < N; ++k) {
        if (a[k][k] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < N; ++i)
                if (a[i][k] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0)
                return Integer(0);
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(),
                             prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[N - 1][N - 1] : Integer(-a[N - 1][N - 1]);
}

// D(z) = Res_x(f(x)+z, f'(x)) for a quartic f, as an exact cubic in z.
// Computed by evaluating the scalar resultant at z in {0, 1, -1, 2} and
// interpolating; a fifth evaluation at z = -2 cross-checks the result.
inline ZPolyInZ resultant_in_z(const IntPoly& f) {
    if (f.degree() != 4)
        throw domain_error("resultant_in_z: polynomial must have degree 4");
    const IntPoly fp = derivative(f);

    auto res_at = [&](long z) {
        std::vector<Integer> shifted(f.coeffs());
        shifted[0] += z;
        return sylvester_resultant(IntPoly(std::move(shifted)), fp);
    };
    const Integer v0 = res_at(0);
    const Integer v1 = res_at(1);
    const Integer w1 = res_at(-1);
    const Integer v2 = res_at(2);

    auto exact_div = [](const Integer& num, long den) {
        if (!mpz_divisible_ui_p(num.get_mpz_t(), den))
            throw consistency_error(
                "resultant_in_z: interpolation produced a non-integer coefficient");
        Integer q;
        mpz_divexact_ui(q.get_mpz_t(), num.get_mpz_t(), den);
        return q;
    };

    const Integer c0 = v0;
    const Integer c2 = exact_div(v1 + w1, 2) - c0;
    const Integer c3 = exact_div((v2 - c0 - 4 * c2) - (v1 - w1), 6);
    const Integer c1 = exact_div(v1 - w1, 2) - c3;

    if (c3 == 0)
        throw consistency_error("resultant_in_z: leading z^3 coefficient vanished");
    if (res_at(-2) != ((-2 * c3 + c2) * -2 + c1) * -2 + c0)
        throw consistency_error("resultant_in_z: z=-2 cross-check failed");
    return ZPolyInZ{c0, c1, c2, c3};
}

// ---------------------------------------------------------------------------
// Rational double root of D(z)
// ---------------------------------------------------------------------------

// A repeated rational root z0 = A/B^2 of D(z), in lowest terms with B > 0.
struct DoubleRoot {
    Integer A;
    Integer B;
    int multiplicity;  // 2, or 3 when D is a unit times a perfect cube
};

namespace detail {

// gcd of all coefficients, positive; 0 for the zero polynomial.
inline Integer content(const IntPoly& p) {
    Integer g(0);
    for (const auto& c : p.coeffs())
        g = gcd(g, c);
    return g;
}

// p divided by its content, with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero())
        return p;
    Integer g = content(p);
    if (p.leading_coeff() < 0)
        g = -g;
    std::vector<Integer> c(p.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i)
        mpz_divexact(c[i].get_mpz_t(), p.coeffs()[i].get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

// Pseudo-remainder: the remainder of lc(v)^(deg u - deg v + 1) * u by v,
// computed without leaving the integers.
inline IntPoly pseudo_rem(IntPoly u, const IntPoly& v) {
    const Integer& lv = v.leading_coeff();
    while (!u.is_zero() && u.degree() >= v.degree()) {
        const std::size_t shift = u.degree() - v.degree();
        IntPoly t = scale(mul(v, IntPoly::monomial(shift)), u.leading_coeff());
        u = sub(scale(u, lv), t);
    }
    return u;
}

// Primitive gcd of two nonzero integer polynomials (positive leading
// coefficient), by the primitive pseudo-remainder sequence.
inline IntPoly primitive_gcd(IntPoly u, IntPoly v) {
    u = primitive_part(u);
    v = primitive_part(v);
    if (u.degree() < v.degree())
        std::swap(u, v);
    while (!v.is_zero()) {
        IntPoly r = primitive_part(pseudo_rem(u, v));
        u = std::move(v);
        v = std::move(r);
    }
    return u;
}

}  // namespace detail

// Extracts the repeated rational root of a cubic D(z) if one exists.
// Returns empty when D is squarefree. When the root p/q (lowest terms) has
// q not a perfect square, throws nonsquare_denominator_error carrying p/q;
// otherwise returns A = p, B = sqrt(q), with multiplicity 3 when the root
// is triple.
inline std::optional<DoubleRoot> rational_double_root(const ZPolyInZ& D) {
    if (D.degree() != 3)
        throw domain_error("rational_double_root: polynomial must have degree 3 in z");
    const IntPoly g = detail::primitive_gcd(D, derivative(D));

    Integer p, q;  // repeated root p/q before normalization
    int multiplicity = 0;
    if (g.degree() <= 0)
        return std::nullopt;
    if (g.degree() == 1) {
        p = -g.coeff(0);
        q = g.coeff(1);
        multiplicity = 2;
    } else if (g.degree() == 2) {
        // A cubic with gcd(D, D') of degree 2 has a triple root, so the gcd
        // must itself be a perfect square of a linear polynomial.
        const Integer disc = g.coeff(1) * g.coeff(1) - 4 * g.coeff(2) * g.coeff(0);
        if (disc != 0)
            throw consistency_error(
                "rational_double_root: degree-2 gcd of a cubic is not a square");
        p = -g.coeff(1);
        q = 2 * g.coeff(2);
        multiplicity = 3;
    } else {
        throw consistency_error("rational_double_root: gcd degree exceeds 2");
    }

    Integer d = gcd(p, q);
    if (q < 0)
        d = -d;
    mpz_divexact(p.get_mpz_t(), p.get_mpz_t(), d.get_mpz_t());
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());

    auto B = as_perfect_square(q);
    if (!B)
        throw nonsquare_denominator_error(
            "rational_double_root: denominator of the repeated root is not a square",
            p, q);
    return DoubleRoot{std::move(p), std::move(*B), multiplicity};
}

// ---------------------------------------------------------------------------
// Polynomial square root
// ---------------------------------------------------------------------------

// Returns r with r^2 = p and positive leading coefficient, if such an r
// exists over the integers; empty otherwise. Coefficients of r are found by
// matching from the top degree down, then the candidate is verified by a
// full multiplication.
inline std::optional<IntPoly> poly_square_root(const IntPoly& p) {
    if (p.is_zero())
        return IntPoly();
    if (p.degree() % 2 != 0)
        return std::nullopt;
    const std::size_t h = p.degree() / 2;
    const auto lead = as_perfect_square(p.leading_coeff());
    if (!lead || *lead == 0)
        return std::nullopt;

    std::vector<Integer> r(h + 1, Integer(0));
    r[h] = *lead;
    const Integer twice_lead = 2 * r[h];
    for (std::size_t i = h; i-- > 0;) {
        // coefficient of x^(h+i) in r^2 is 2*r[h]*r[i] + known cross terms
        Integer acc = p.coeff(h + i);
        for (std::size_t j = i + 1, k = h + i - (i + 1); j < k; ++j, --k)
            acc -= 2 * r[j] * r[k];
        if ((h + i) % 2 == 0 && (h + i) / 2 > i && (h + i) / 2 < h)
            acc -= r[(h + i) / 2] * r[(h + i) / 2];
        if (!mpz_divisible_p(acc.get_mpz_t(), twice_lead.get_mpz_t()))
            return std::nullopt;
        mpz_divexact(r[i].get_mpz_t(), acc.get_mpz_t(), twice_lead.get_mpz_t());
    }
    IntPoly candidate(std::move(r));
    if (mul(candidate, candidate) != p)
        return std::nullopt;
    return candidate;
}

// ---------------------------------------------------------------------------
// Integer roots
// ---------------------------------------------------------------------------

// All integer roots of a nonzero polynomial (each listed once), found by
// enumerating divisors of the constant term after stripping powers of x.
// A factorization budget on the constant term propagates as budget_error.
inline std::vector<Integer> integer_roots(const IntPoly& p,
                                          const FactorBudget& budget = {}) {
    if (p.is_zero())
        throw domain_error("integer_roots: zero polynomial");
    std::size_t m = 0;
    while (p.coeff(m) == 0)
        ++m;
    std::vector<Integer> roots;
    if (m > 0)
        roots.emplace_back(0);
    IntPoly q(std::vector<Integer>(p.coeffs().begin() + m, p.coeffs().end()));
    if (q.degree() >= 1) {
        const Factorization fac = factorize(q.coeff(0), budget);
        for (const Integer& d : divisors(fac)) {
            if (eval(q, d) == 0)
                roots.push_back(d);
            if (eval(q, -d) == 0)
                roots.push_back(-d);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace hyperell::poly
