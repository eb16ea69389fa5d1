#pragma once

// Structured (JSON) serialization of solver results. Every integer is
// emitted as a decimal string so values of any size round-trip exactly;
// field order is fixed so identical runs produce byte-identical output.
// elapsed_ms is the one non-deterministic field and is only present when
// timing was requested.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperell/curves.hpp"
#include "hyperell/errors.hpp"

namespace hyperell::cli {

using intarith::Factorization;
using intarith::Integer;
using json = nlohmann::ordered_json;
using solvers::CurveSpec;
using solvers::IntegerPoint;
using solvers::SolutionSet;

inline std::string dec(const Integer& n) { return n.get_str(); }

inline json spec_to_json(const CurveSpec& spec) {
    json j;
    j["family"] = solvers::family_name(spec);
    std::visit(solvers::detail::overloaded{
                   [&](const solvers::Family1& s) {
                       j["a"] = dec(s.a);
                       j["b"] = dec(s.b);
                       j["k"] = dec(s.k);
                   },
                   [&](const solvers::Family2& s) {
                       j["c"] = dec(s.c);
                       j["a"] = dec(s.a);
                       j["b"] = dec(s.b);
                   },
                   [&](const solvers::Family3& s) {
                       j["c"] = dec(s.c);
                       j["a"] = dec(s.a);
                       j["b"] = dec(s.b);
                   },
                   [&](const solvers::Sextic& s) { j["alpha"] = dec(s.alpha); },
                   [&](const solvers::GeneralQuartic& s) {
                       j["a3"] = dec(s.a3);
                       j["a2"] = dec(s.a2);
                       j["a1"] = dec(s.a1);
                       j["a0"] = dec(s.a0);
                   },
                   [&](const solvers::MasserBiquadratic& s) {
                       j["b"] = dec(s.b);
                       j["d"] = dec(s.d);
                   },
               },
               spec);
    return j;
}

inline CurveSpec spec_from_json(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    auto field = [&](const char* name) {
        return Integer(j.at(name).get<std::string>());
    };
    if (family == "family1")
        return solvers::make_family1(field("a"), field("b"), field("k"));
    if (family == "family2")
        return solvers::make_family2(field("c"), field("a"), field("b"));
    if (family == "family3")
        return solvers::make_family3(field("c"), field("a"), field("b"));
    if (family == "sextic")
        return solvers::make_sextic(field("alpha"));
    if (family == "quartic")
        return solvers::make_general_quartic(field("a3"), field("a2"), field("a1"),
                                             field("a0"));
    if (family == "masser")
        return solvers::make_masser(field("b"), field("d"));
    throw domain_error("unknown curve family in structured input: " + family);
}

// elapsed_ms < 0 means "timing not requested"; the field is then omitted so
// identical runs serialize identically.
inline json solution_to_json(const SolutionSet& set, double elapsed_ms = -1.0) {
    json j;
    j["spec"] = spec_to_json(set.spec);
    json pts = json::array();
    for (const auto& p : set.points) {
        json q;
        q["x"] = dec(p.x);
        q["y"] = dec(p.y);
        pts.push_back(std::move(q));
    }
    j["points"] = std::move(pts);
    json meta;
    meta["divisor_pairs"] = set.meta.divisor_pairs_examined;
    meta["tau"] = dec(set.meta.factorization.tau());
    meta["factored_integer"] = dec(set.meta.factored_integer);
    json fl = json::array();
    for (const auto& [p, e] : set.meta.factorization.factors)
        fl.push_back(json::array({dec(p), std::to_string(e)}));
    meta["factorization"] = std::move(fl);
    if (elapsed_ms >= 0.0)
        meta["elapsed_ms"] = elapsed_ms;
    j["meta"] = std::move(meta);
    return j;
}

inline SolutionSet solution_from_json(const json& j) {
    SolutionSet set;
    set.spec = spec_from_json(j.at("spec"));
    for (const auto& q : j.at("points"))
        set.points.push_back(IntegerPoint{Integer(q.at("x").get<std::string>()),
                                          Integer(q.at("y").get<std::string>())});
    const json& meta = j.at("meta");
    set.meta.divisor_pairs_examined = meta.at("divisor_pairs").get<std::uint64_t>();
    set.meta.factored_integer = Integer(meta.at("factored_integer").get<std::string>());
    Factorization fac;
    fac.n = abs(set.meta.factored_integer);
    for (const auto& pe : meta.at("factorization"))
        fac.factors.emplace_back(
            Integer(pe.at(0).get<std::string>()),
            static_cast<unsigned>(std::stoul(pe.at(1).get<std::string>())));
    set.meta.factorization = std::move(fac);
    return set;
}

}  // namespace hyperell::cli
