#pragma once

// Command-line front end. The argument grammar is parsed by hand because
// instance parameters are arbitrary-precision integers with a power
// shorthand (-2^100), which standard option parsers lex as option names.
// Every subcommand accepts its parameters positionally or as --name flags;
// the same grammar parses batch-file lines, so batch runs and direct
// invocations behave identically.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "hyperell/curves.hpp"
#include "hyperell/errors.hpp"
#include "hyperell/intarith.hpp"
#include "hyperell/oracle.hpp"
#include "hyperell/poly.hpp"
#include "hyperell/report.hpp"
#include "hyperell/solvers.hpp"

namespace hyperell::cli {

using intarith::FactorBudget;
using intarith::isqrt;
using poly::IntPoly;
using solvers::bound_family1;
using solvers::Family1;
using solvers::Family2;
using solvers::Family3;
using solvers::GeneralQuartic;
using solvers::MasserBiquadratic;
using solvers::MethodInapplicable;
using solvers::Sextic;
using solvers::SolutionSet;

// Raised on malformed command lines.
struct usage_error : error {
    using error::error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInapplicable = 4;

enum class OutputFormat { text, structured };

// A brute-force scan request (the `oracle` subcommand).
struct OracleRequest {
    IntPoly f;
    Integer lo;
    Integer hi;

    friend bool operator==(const OracleRequest&, const OracleRequest&) = default;
};

// Fully resolved instance: what to run and how to report it.
struct RunConfig {
    std::variant<CurveSpec, OracleRequest> spec;
    bool verify_with_oracle = false;
    std::optional<Integer> oracle_bound_override;  // > 0 when present
    OutputFormat output_format = OutputFormat::text;
    bool timing = false;
    FactorBudget factorization_budget;
};

// ---------------------------------------------------------------------------
// Literal parsing
// ---------------------------------------------------------------------------

// Integer literal with power shorthand: [+-]digits or [+-]base^exponent.
// The sign applies to the whole value, so -2^100 = -(2^100).
inline Integer parse_integer(std::string_view tok) {
    const std::string_view whole = tok;
    auto fail = [&]() -> Integer {
        throw usage_error("bad integer literal '" + std::string(whole) + "'");
    };
    if (tok.empty())
        fail();
    bool neg = false;
    if (tok[0] == '+' || tok[0] == '-') {
        neg = tok[0] == '-';
        tok.remove_prefix(1);
    }
    auto digits = [&](std::string_view part) {
        if (part.empty())
            fail();
        for (char ch : part)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                fail();
        return Integer(std::string(part), 10);
    };
    Integer value;
    if (const auto caret = tok.find('^'); caret == std::string_view::npos) {
        value = digits(tok);
    } else {
        const Integer base = digits(tok.substr(0, caret));
        const Integer expo = digits(tok.substr(caret + 1));
        if (!expo.fits_ulong_p())
            throw usage_error("exponent out of range in '" + std::string(whole) + "'");
        mpz_pow_ui(value.get_mpz_t(), base.get_mpz_t(), expo.get_ui());
    }
    return neg ? Integer(-value) : value;
}

// Comma-separated integer literals, at least one.
inline std::vector<Integer> parse_integer_list(std::string_view tok) {
    std::vector<Integer> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = tok.find(',', start);
        const auto piece =
            comma == std::string_view::npos ? tok.substr(start) : tok.substr(start, comma - start);
        out.push_back(parse_integer(piece));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Instance parsing
// ---------------------------------------------------------------------------

// Output / verification flags; a batch run's own flags become the per-line
// defaults, which individual lines may still override.
struct FlagDefaults {
    bool json = false;
    bool timing = false;
    std::optional<bool> verify;  // unset: per-family default
    std::optional<Integer> bound;
    std::optional<double> budget_seconds;
};

namespace detail {

inline const std::vector<std::string>& params_for(const std::string& cmd) {
    static const std::map<std::string, std::vector<std::string>> table = {
        {"family1", {"a", "b", "k"}},   {"family2", {"c", "a", "b"}},
        {"family3", {"c", "a", "b"}},   {"sextic", {"alpha"}},
        {"quartic", {"coeffs"}},        {"masser", {"b", "d"}},
        {"oracle", {"coeffs", "lo", "hi"}},
    };
    const auto it = table.find(cmd);
    if (it == table.end())
        throw usage_error("unknown subcommand '" + cmd + "'");
    return it->second;
}

}  // namespace detail

// Parses one instance: tokens[0] is the subcommand, the rest are parameters
// (positional or --name) and flags. Throws usage_error on grammar violations
// and domain_error on degenerate curve parameters.
inline RunConfig parse_instance(const std::vector<std::string>& tokens,
                                const FlagDefaults& base) {
    if (tokens.empty())
        throw usage_error("empty command");
    const std::string& cmd = tokens[0];
    if (cmd == "batch")
        throw usage_error("batch cannot be nested; list curve instances directly");
    const auto& params = detail::params_for(cmd);

    FlagDefaults flags = base;
    std::map<std::string, std::string> values;
    std::size_t next_positional = 0;

    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        const bool is_flag = tok.size() > 2 && tok[0] == '-' && tok[1] == '-';
        if (is_flag) {
            std::string name = tok.substr(2);
            std::optional<std::string> attached;
            if (const auto eq = name.find('='); eq != std::string::npos) {
                attached = name.substr(eq + 1);
                name.resize(eq);
            }
            auto value_of = [&]() -> std::string {
                if (attached)
                    return *attached;
                if (++i >= tokens.size())
                    throw usage_error("option '--" + name + "' expects a value");
                return tokens[i];
            };
            if (name == "json") {
                flags.json = true;
            } else if (name == "timing") {
                flags.timing = true;
            } else if (name == "verify") {
                flags.verify = true;
            } else if (name == "no-verify") {
                flags.verify = false;
            } else if (name == "bound") {
                flags.bound = parse_integer(value_of());
                if (*flags.bound <= 0)
                    throw usage_error("--bound must be positive");
            } else if (name == "budget") {
                const std::string v = value_of();
                std::size_t used = 0;
                double seconds = 0;
                try {
                    seconds = std::stod(v, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != v.size() || !(seconds > 0))
                    throw usage_error("--budget expects a positive number of seconds");
                flags.budget_seconds = seconds;
            } else if (std::find(params.begin(), params.end(), name) != params.end()) {
                if (values.count(name))
                    throw usage_error("duplicate parameter '" + name + "'");
                values[name] = value_of();
            } else {
                throw usage_error("unknown option '--" + name + "' for " + cmd);
            }
        } else {
            while (next_positional < params.size() && values.count(params[next_positional]))
                ++next_positional;
            if (next_positional >= params.size())
                throw usage_error("unexpected argument '" + tok + "'");
            values[params[next_positional++]] = tok;
        }
    }
    for (const auto& p : params)
        if (!values.count(p))
            throw usage_error(cmd + ": missing parameter '" + p + "'");

    RunConfig cfg;
    cfg.output_format = flags.json ? OutputFormat::structured : OutputFormat::text;
    cfg.timing = flags.timing;
    cfg.oracle_bound_override = flags.bound;
    if (flags.budget_seconds)
        cfg.factorization_budget.max_time =
            std::chrono::milliseconds(std::max<long long>(
                1, static_cast<long long>(std::llround(*flags.budget_seconds * 1000.0))));

    auto arg = [&](const char* name) { return parse_integer(values.at(name)); };
    if (cmd == "family1") {
        cfg.spec = solvers::make_family1(arg("a"), arg("b"), arg("k"));
    } else if (cmd == "family2") {
        cfg.spec = solvers::make_family2(arg("c"), arg("a"), arg("b"));
    } else if (cmd == "family3") {
        cfg.spec = solvers::make_family3(arg("c"), arg("a"), arg("b"));
    } else if (cmd == "sextic") {
        cfg.spec = solvers::make_sextic(arg("alpha"));
    } else if (cmd == "quartic") {
        const auto cs = parse_integer_list(values.at("coeffs"));
        if (cs.size() != 4)
            throw usage_error("quartic: --coeffs expects a3,a2,a1,a0 (4 integers)");
        cfg.spec = solvers::make_general_quartic(cs[0], cs[1], cs[2], cs[3]);
    } else if (cmd == "masser") {
        cfg.spec = solvers::make_masser(arg("b"), arg("d"));
    } else {  // oracle
        const auto cs = parse_integer_list(values.at("coeffs"));
        IntPoly f(std::vector<Integer>(cs.rbegin(), cs.rend()));
        cfg.spec = OracleRequest{std::move(f), arg("lo"), arg("hi")};
    }

    if (flags.verify) {
        cfg.verify_with_oracle = *flags.verify;
    } else if (const auto* curve = std::get_if<CurveSpec>(&cfg.spec)) {
        // Verification is free at desk scale but must never trigger a 2^l-wide
        // scan by accident, so only family1 with a small proven bound defaults
        // to on.
        if (const auto* f1 = std::get_if<Family1>(curve))
            cfg.verify_with_oracle = bound_family1(f1->a, f1->b, f1->k) <= 1'000'000;
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// Verification bounds
// ---------------------------------------------------------------------------

namespace detail {

inline Integer icbrt(const Integer& n) {
    Integer r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3);
    return r;
}

// Search radius guaranteed to contain every integer point the solver can
// emit. family1 uses the proven curve bound; the others bound |x| through
// the divisor-pair equations (|d1 + d2| <= |N| + 1 for any divisor pair).
inline Integer verify_bound(const CurveSpec& spec) {
    return std::visit(
        solvers::detail::overloaded{
            [](const Family1& s) { return bound_family1(s.a, s.b, s.k); },
            [](const Family2& s) {
                const Integer delta = s.a * s.a - 4 * s.b * s.c * s.c;
                return Integer(
                    isqrt(Integer((abs(delta) + 1 + 2 * abs(s.a)) / (4 * s.c * s.c))) + 1);
            },
            [](const Family3& s) {
                const Integer Delta = s.a * s.a - 4 * s.b * s.c;
                return Integer(
                    isqrt(Integer((abs(Delta) + 1 + 2 * abs(s.a)) / (4 * abs(s.c)))) + 1);
            },
            [](const Sextic& s) {
                const Integer q = s.alpha * s.alpha + s.alpha + 1;
                Integer n = q - 1;
                n *= n;
                const Integer b1 = isqrt(Integer(2 * q)) + 1;
                const Integer b2 = icbrt(Integer(n + 1)) + 1;
                return Integer(std::max(b1, b2));
            },
            [](const GeneralQuartic& s) {
                // Recompute the reduction to read off the square root r and
                // bound |x| from |r(x)| <= (|A| + 1) / 2.
                const IntPoly f = quartic_poly(s);
                const auto root = poly::rational_double_root(poly::resultant_in_z(f));
                if (!root)
                    throw domain_error("verify: quartic reduction inapplicable");
                IntPoly shifted = poly::scale(f, root->B * root->B);
                shifted = poly::add(shifted, IntPoly{root->A});
                const auto r = poly_square_root(shifted);
                if (!r)
                    throw domain_error("verify: quartic reduction inapplicable");
                const Integer big_r = (abs(root->A) + 1) / 2 + abs(r->coeff(0));
                return Integer(abs(r->coeff(1)) + isqrt(big_r) + 1);
            },
            [](const MasserBiquadratic& s) {
                const Integer e = 4 * s.d - s.b * s.b;
                return Integer(isqrt(Integer((abs(e) + 1 + 2 * abs(s.b)) / 4)) + 1);
            },
        },
        spec);
}

// family3 weighs the left side by c, so the scan tests c | v and v/c square
// instead of delegating to the y^2 = f(x) oracle.
inline std::vector<solvers::IntegerPoint> scan_family3(const Family3& s,
                                                       const Integer& bound) {
    std::vector<solvers::IntegerPoint> pts;
    Integer v, w, y;
    for (Integer x = -bound; x <= bound; ++x) {
        const Integer x2 = x * x;
        v = (s.c * x2 + s.a) * x2 + s.b;
        if (!mpz_divisible_p(v.get_mpz_t(), s.c.get_mpz_t()))
            continue;
        mpz_divexact(w.get_mpz_t(), v.get_mpz_t(), s.c.get_mpz_t());
        if (w < 0 || mpz_perfect_square_p(w.get_mpz_t()) == 0)
            continue;
        mpz_sqrt(y.get_mpz_t(), w.get_mpz_t());
        pts.push_back(solvers::IntegerPoint{x, y});
    }
    return pts;
}

inline std::string poly_to_string(const IntPoly& f) {
    if (f.degree() < 0)
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        const Integer& coef = f.coeff(i);
        if (coef == 0 && f.degree() > 0)
            continue;
        const Integer mag = abs(coef);
        if (first)
            os << (coef < 0 ? "-" : "");
        else
            os << (coef < 0 ? " - " : " + ");
        if (mag != 1 || i == 0)
            os << mag.get_str();
        if (i > 0) {
            os << "x";
            if (i > 1)
                os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

inline std::string spec_header(const CurveSpec& spec) {
    const auto d = [](const Integer& n) { return n.get_str(); };
    return std::visit(
        solvers::detail::overloaded{
            [&](const Family1& s) {
                return "family1(a=" + d(s.a) + ", b=" + d(s.b) + ", k=" + d(s.k) + ")";
            },
            [&](const Family2& s) {
                return "family2(c=" + d(s.c) + ", a=" + d(s.a) + ", b=" + d(s.b) + ")";
            },
            [&](const Family3& s) {
                return "family3(c=" + d(s.c) + ", a=" + d(s.a) + ", b=" + d(s.b) + ")";
            },
            [&](const Sextic& s) { return "sextic(alpha=" + d(s.alpha) + ")"; },
            [&](const GeneralQuartic& s) {
                return "quartic(a3=" + d(s.a3) + ", a2=" + d(s.a2) + ", a1=" + d(s.a1) +
                       ", a0=" + d(s.a0) + ")";
            },
            [&](const MasserBiquadratic& s) {
                return "masser(b=" + d(s.b) + ", d=" + d(s.d) + ")";
            },
        },
        spec);
}

inline std::string equation_string(const CurveSpec& spec) {
    if (const auto* f3 = std::get_if<Family3>(&spec)) {
        const IntPoly rhs{f3->b, 0, f3->a, 0, f3->c};
        const std::string lead = f3->c == 1 ? "" : (f3->c == -1 ? "-" : f3->c.get_str());
        return lead + "y^2 = " + poly_to_string(rhs);
    }
    return "y^2 = " + poly_to_string(square_rhs(spec));
}

}  // namespace detail

// Scans the oracle over the guaranteed radius (or an explicit override) and
// compares point sets in both directions.
struct VerifyReport {
    Integer bound;
    oracle::CrossCheckReport cmp;
};

inline VerifyReport verify_against_oracle(const SolutionSet& set,
                                          const std::optional<Integer>& override_bound) {
    const Integer bound =
        override_bound ? *override_bound : detail::verify_bound(set.spec);
    std::vector<solvers::IntegerPoint> scanned;
    if (const auto* f3 = std::get_if<Family3>(&set.spec))
        scanned = detail::scan_family3(*f3, bound);
    else
        scanned = oracle::scan(square_rhs(set.spec), {-bound, bound});
    return VerifyReport{bound, oracle::cross_check(set.points, scanned)};
}

// ---------------------------------------------------------------------------
// Execution and rendering
// ---------------------------------------------------------------------------

namespace detail {

inline void render_points_text(std::ostream& out,
                               const std::vector<solvers::IntegerPoint>& pts) {
    out << "points (" << pts.size() << ", y >= 0):";
    for (const auto& p : pts)
        out << " (" << p.x.get_str() << "," << p.y.get_str() << ")";
    out << "\n";
}

inline json points_json(const std::vector<solvers::IntegerPoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts)
        arr.push_back(json{{"x", dec(p.x)}, {"y", dec(p.y)}});
    return arr;
}

}  // namespace detail

// Runs one parsed instance, writing the full report (including error text)
// to `out`. Returns the process exit code for this instance.
inline int execute(const RunConfig& cfg, std::ostream& out) {
    const bool structured = cfg.output_format == OutputFormat::structured;
    auto emit_error = [&](const char* kind, const std::string& what, int code) {
        if (structured)
            out << json{{"error", kind}, {"message", what}}.dump() << "\n";
        else
            out << "error: " << what << "\n";
        return code;
    };
    try {
        const auto t0 = std::chrono::steady_clock::now();

        if (const auto* req = std::get_if<OracleRequest>(&cfg.spec)) {
            const auto pts = oracle::scan(req->f, {req->lo, req->hi});
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            if (structured) {
                json coeffs = json::array();
                for (int i = req->f.degree(); i >= 0; --i)
                    coeffs.push_back(dec(req->f.coeff(i)));
                json j{{"oracle", json{{"coeffs", std::move(coeffs)},
                                       {"lo", dec(req->lo)},
                                       {"hi", dec(req->hi)}}},
                       {"points", detail::points_json(pts)}};
                if (cfg.timing)
                    j["elapsed_ms"] = ms;
                out << j.dump() << "\n";
            } else {
                out << "oracle scan of y^2 = " << detail::poly_to_string(req->f)
                    << " for x in [" << req->lo.get_str() << ", " << req->hi.get_str()
                    << "]\n";
                detail::render_points_text(out, pts);
                if (cfg.timing)
                    out << "elapsed: " << ms << " ms\n";
            }
            return kExitOk;
        }

        const CurveSpec& spec = std::get<CurveSpec>(cfg.spec);
        solvers::QuarticResult result = solvers::solve(spec, cfg.factorization_budget);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();

        if (const auto* na = std::get_if<MethodInapplicable>(&result)) {
            if (structured)
                out << json{{"spec", spec_to_json(spec)},
                            {"method_inapplicable", true},
                            {"reason", na->reason}}
                           .dump()
                    << "\n";
            else
                out << detail::spec_header(spec) << ": " << detail::equation_string(spec)
                    << "\n"
                    << "method inapplicable: " << na->reason << "\n";
            return kExitInapplicable;
        }

        const SolutionSet& set = std::get<SolutionSet>(result);
        std::optional<VerifyReport> verify;
        if (cfg.verify_with_oracle)
            verify = verify_against_oracle(set, cfg.oracle_bound_override);

        if (structured) {
            json j = solution_to_json(set, cfg.timing ? ms : -1.0);
            if (verify)
                j["verify"] = json{{"bound", dec(verify->bound)},
                                   {"ok", verify->cmp.ok()},
                                   {"soundness_breaches",
                                    detail::points_json(verify->cmp.soundness_breaches)},
                                   {"completeness_breaches",
                                    detail::points_json(verify->cmp.completeness_breaches)}};
            out << j.dump() << "\n";
        } else {
            out << detail::spec_header(spec) << ": " << detail::equation_string(spec) << "\n";
            detail::render_points_text(out, set.points);
            out << "divisor pairs examined: " << set.meta.divisor_pairs_examined
                << "; tau = " << set.meta.factorization.tau().get_str()
                << "; factored integer = " << set.meta.factored_integer.get_str() << "\n";
            if (verify)
                out << "verify: oracle agreement for |x| <= " << verify->bound.get_str()
                    << ": "
                    << (verify->cmp.ok()
                            ? std::string("OK")
                            : "FAILED (" +
                                  std::to_string(verify->cmp.soundness_breaches.size()) +
                                  " unsound, " +
                                  std::to_string(verify->cmp.completeness_breaches.size()) +
                                  " missed)")
                    << "\n";
            if (cfg.timing)
                out << "elapsed: " << ms << " ms\n";
        }
        if (verify && !verify->cmp.ok())
            return kExitDomain;
        return kExitOk;
    } catch (const budget_error& e) {
        return emit_error("budget", e.what(), kExitBudget);
    } catch (const domain_error& e) {
        return emit_error("domain", e.what(), kExitDomain);
    } catch (const error& e) {
        return emit_error("internal", e.what(), kExitDomain);
    }
}

// ---------------------------------------------------------------------------
// Batch runner
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t)
        toks.push_back(std::move(t));
    return toks;
}

}  // namespace detail

// Runs every instance line of `file` (subcommand-style lines, '#' comments),
// executing lines concurrently but emitting buffered reports in input order.
// Exit code 0 only if every instance succeeded.
inline int run_batch(const std::string& path, const FlagDefaults& defaults,
                     std::ostream& out) {
    std::ifstream in(path);
    if (!in) {
        out << "error: cannot open batch file '" << path << "'\n";
        return kExitUsage;
    }

    struct Line {
        std::size_t number;
        std::string text;
    };
    std::vector<Line> lines;
    std::string raw;
    for (std::size_t n = 1; std::getline(in, raw); ++n) {
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.resize(hash);
        const auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto last = raw.find_last_not_of(" \t\r");
        lines.push_back(Line{n, raw.substr(first, last - first + 1)});
    }

    const auto t0 = std::chrono::steady_clock::now();
    struct Outcome {
        int code = kExitOk;
        std::string report;
    };
    std::vector<Outcome> outcomes(lines.size());

    auto work = [&](std::size_t i) {
        std::ostringstream buf;
        int code;
        try {
            const RunConfig cfg = parse_instance(detail::split_tokens(lines[i].text), defaults);
            code = execute(cfg, buf);
        } catch (const usage_error& e) {
            code = kExitUsage;
            if (defaults.json)
                buf << json{{"error", "parse"}, {"message", e.what()}}.dump() << "\n";
            else
                buf << "parse error: " << e.what() << "\n";
        } catch (const budget_error& e) {
            code = kExitBudget;
            buf << "error: " << e.what() << "\n";
        } catch (const error& e) {
            code = kExitDomain;
            buf << "error: " << e.what() << "\n";
        }
        outcomes[i] = Outcome{code, buf.str()};
    };

    const std::size_t workers = std::min<std::size_t>(
        lines.empty() ? 1 : lines.size(),
        std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1 || lines.size() <= 1) {
        for (std::size_t i = 0; i < lines.size(); ++i)
            work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < lines.size();
                     i = next.fetch_add(1))
                    work(i);
            });
        for (auto& th : pool)
            th.join();
    }
    const double total_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();

    std::size_t solved = 0, failed = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!defaults.json)
            out << "-- line " << lines[i].number << ": " << lines[i].text << "\n";
        out << outcomes[i].report;
        (outcomes[i].code == kExitOk ? solved : failed) += 1;
    }
    if (defaults.json)
        out << json{{"instances", lines.size()},
                    {"solved", solved},
                    {"errors", failed},
                    {"total_wall_ms", total_ms}}
                   .dump()
            << "\n";
    else
        out << "summary: " << lines.size() << " instances, " << solved << " solved, "
            << failed << " errors, total wall time " << total_ms << " ms\n";
    return failed == 0 ? kExitOk : kExitUsage;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline const char* usage_text() {
    return R"(usage: hyperell <subcommand> [parameters] [flags]

subcommands (parameters positional or --name <value>):
  family1 --a <int> --b <int> --k <int>   y^2 = (x+a)(x+a+k)(x+b)(x+b+k)
  family2 --c <int> --a <int> --b <int>   y^2 = c^2 x^4 + a x^2 + b
  family3 --c <int> --a <int> --b <int>   c y^2 = c x^4 + a x^2 + b
  sextic  --alpha <int>                   y^2 = (x^2-1)(x^2-alpha^2)(x^2-(alpha+1)^2)
  quartic --coeffs a3,a2,a1,a0            y^2 = x^4 + a3 x^3 + a2 x^2 + a1 x + a0
  masser  --b <int> --d <int>             y^2 = x^4 + b x^2 + d
  oracle  --coeffs c4,...,c0 --lo <int> --hi <int>   brute-force scan of y^2 = f(x)
  batch   <file>                          run one instance per line ('#' comments)

integers may use the power shorthand base^exp, e.g. -2^100

flags:
  --json             structured (JSON) output
  --verify           cross-check the solution against a brute-force oracle scan
  --no-verify        disable the cross-check (family1 defaults on at desk scale)
  --bound <int>      override the oracle scan radius
  --timing           report elapsed wall time
  --budget <secs>    limit factorization effort; exceeding it exits 3

exit codes: 0 ok, 1 usage/parse error, 2 domain error, 3 budget exhausted,
            4 method inapplicable
)";
}

// Full process entry point: returns the exit code.
inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        std::cerr << usage_text();
        return kExitUsage;
    }
    for (const auto& a : args)
        if (a == "--help" || a == "-h" || a == "help") {
            std::cout << usage_text();
            return kExitOk;
        }
    try {
        if (args[0] == "batch") {
            FlagDefaults defaults;
            std::optional<std::string> file;
            for (std::size_t i = 1; i < args.size(); ++i) {
                const std::string& tok = args[i];
                if (tok == "--json") {
                    defaults.json = true;
                } else if (tok == "--timing") {
                    defaults.timing = true;
                } else if (tok == "--verify") {
                    defaults.verify = true;
                } else if (tok == "--no-verify") {
                    defaults.verify = false;
                } else if (tok == "--bound") {
                    if (++i >= args.size())
                        throw usage_error("--bound expects a value");
                    defaults.bound = parse_integer(args[i]);
                    if (*defaults.bound <= 0)
                        throw usage_error("--bound must be positive");
                } else if (tok == "--budget") {
                    if (++i >= args.size())
                        throw usage_error("--budget expects a value");
                    try {
                        defaults.budget_seconds = std::stod(args[i]);
                    } catch (const std::exception&) {
                        defaults.budget_seconds.reset();
                    }
                    if (!defaults.budget_seconds || !(*defaults.budget_seconds > 0))
                        throw usage_error("--budget expects a positive number of seconds");
                } else if (!tok.empty() && tok[0] != '-' && !file) {
                    file = tok;
                } else {
                    throw usage_error("unexpected batch argument '" + tok + "'");
                }
            }
            if (!file)
                throw usage_error("batch: missing input file");
            return run_batch(*file, defaults, std::cout);
        }
        const RunConfig cfg = parse_instance(args, FlagDefaults{});
        return execute(cfg, std::cout);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n(run with --help for usage)\n";
        return kExitUsage;
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

}  // namespace hyperell::cli
