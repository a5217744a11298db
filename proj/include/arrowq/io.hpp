// Copyright 2026 The arrowq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON forms of rules, KS instances, Bell scenarios and the module reports.
// nlohmann::json objects keep keys sorted, so dumps are stable.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arrowq/ballot_hilbert.hpp"
#include "arrowq/bell.hpp"
#include "arrowq/landauer.hpp"
#include "arrowq/social_choice.hpp"

namespace arrowq::io {

using Json = nlohmann::json;

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

namespace detail {

template <typename T>
T get(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(std::string(what) + ": missing key '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ValidationError(std::string(what) + ": bad value for '" + key + "': " + e.what());
    }
}

inline LinearOrder order_from_json(const Json& j, std::size_t n, const char* what) {
    std::vector<Alternative> ranking;
    try {
        ranking = j.get<std::vector<Alternative>>();
    } catch (const Json::exception&) {
        throw ValidationError(std::string(what) + ": ballots must be arrays of alternative ids");
    }
    if (ranking.size() != n) {
        throw ValidationError(std::string(what) + ": ballot has " + std::to_string(ranking.size()) +
                              " entries, expected " + std::to_string(n));
    }
    try {
        return LinearOrder(std::move(ranking));
    } catch (const InvalidArgumentError& e) {
        throw ValidationError(std::string(what) + ": " + e.what());
    }
}

/// A complex number as [re, im] or a bare real.
inline Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ValidationError("complex numbers are written as [re, im] or a real number");
}

inline Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

}  // namespace detail

inline Json order_to_json(const LinearOrder& o) { return Json(std::vector<Alternative>(o.ranking().begin(), o.ranking().end())); }

inline Json profile_to_json(const Profile& p) {
    Json j = Json::array();
    for (const auto& b : p.ballots) j.push_back(order_to_json(b));
    return j;
}

// ---------------------------------------------------------------------------
// Rule files: {"voters", "alternatives", "kind": "table"|"pairwise", "entries"}

inline Json rule_to_json(const VotingRule& rule) {
    Json j;
    j["voters"] = rule.voters();
    j["alternatives"] = rule.alternatives();
    Json entries = Json::array();
    if (rule.is_pairwise()) {
        j["kind"] = "pairwise";
        const auto& agg = rule.aggregator();
        std::size_t p = 0;
        for (auto [a, b] : all_pairs(rule.alternatives())) {
            entries.push_back({{"pair", {a, b}}, {"truth_table", agg.table(p++)}});
        }
    } else {
        j["kind"] = "table";
        const auto& space = rule.space();
        for (std::uint64_t k = 0; k < space.size(); ++k) {
            if (auto out = rule.outcome_rank(k)) {
                entries.push_back({{"profile", profile_to_json(space.at(k))}, {"outcome", order_to_json(space.order(*out))}});
            }
        }
    }
    j["entries"] = std::move(entries);
    return j;
}

inline VotingRule rule_from_json(const Json& j, const Guards& guards = {}) {
    constexpr const char* kWhat = "rule file";
    const auto m = detail::get<std::size_t>(j, "voters", kWhat);
    const auto n = detail::get<std::size_t>(j, "alternatives", kWhat);
    const auto kind = detail::get<std::string>(j, "kind", kWhat);
    const auto entries = detail::get<Json>(j, "entries", kWhat);
    if (!entries.is_array()) throw ValidationError("rule file: 'entries' must be an array");
    if (kind == "pairwise") {
        if (n < 1 || n > guards.max_alternatives || m < 1 || m > 20) {
            throw SizeLimitError("rule file: pairwise rule shape out of range");
        }
        std::vector<std::vector<std::uint8_t>> tables(pair_count(n));
        std::vector<bool> seen(tables.size(), false);
        for (const auto& e : entries) {
            const auto pair = detail::get<std::vector<Alternative>>(e, "pair", kWhat);
            if (pair.size() != 2 || pair[0] >= pair[1] || pair[1] >= n) {
                throw ValidationError("rule file: pairs must be [a, b] with a < b < n");
            }
            const std::size_t p = pair_index(n, pair[0], pair[1]);
            if (seen[p]) throw ValidationError("rule file: duplicate pair entry");
            seen[p] = true;
            tables[p] = detail::get<std::vector<std::uint8_t>>(e, "truth_table", kWhat);
        }
        for (bool s : seen)
            if (!s) throw ValidationError("rule file: every pair needs a truth table");
        return VotingRule::from_pairwise(PairwiseAggregator(m, n, std::move(tables)), guards);
    }
    if (kind != "table") throw ValidationError("rule file: kind must be 'table' or 'pairwise'");
    const ProfileSpace space(m, n, guards);
    VotingRule::Table outcomes(space.size());
    for (const auto& e : entries) {
        const auto profile_json = detail::get<Json>(e, "profile", kWhat);
        if (!profile_json.is_array() || profile_json.size() != m) {
            throw ValidationError("rule file: each profile needs one ballot per voter");
        }
        Profile p;
        for (const auto& b : profile_json) p.ballots.push_back(detail::order_from_json(b, n, kWhat));
        const std::uint64_t k = space.index_of(p);
        if (outcomes[k]) throw ValidationError("rule file: duplicate profile " + p.str());
        outcomes[k] = static_cast<std::uint32_t>(detail::order_from_json(detail::get<Json>(e, "outcome", kWhat), n, kWhat).rank());
    }
    return VotingRule::from_table(m, n, std::move(outcomes), guards);
}

inline Json arrow_report_to_json(const ArrowReport& r) {
    Json j;
    j["pareto"] = {{"holds", r.pareto.holds}};
    if (r.pareto.witness) {
        j["pareto"]["witness"] = {{"profile", profile_to_json(r.pareto.witness->profile)},
                                  {"unanimously_preferred", r.pareto.witness->preferred},
                                  {"over", r.pareto.witness->other}};
    }
    j["iia"] = {{"holds", r.iia.holds}};
    if (r.iia.witness) {
        j["iia"]["witness"] = {{"first", profile_to_json(r.iia.witness->first)},
                               {"second", profile_to_json(r.iia.witness->second)},
                               {"pair", {r.iia.witness->a, r.iia.witness->b}}};
    }
    j["ud"] = r.ud;
    j["dictator"] = r.dictator.dictator ? Json(*r.dictator.dictator) : Json(nullptr);
    j["dictator_verdicts"] = r.dictator.verdicts;
    return j;
}

inline Json arrow_verification_to_json(const ArrowVerification& v) {
    Json dictators = Json::array();
    for (const auto& d : v.dictators) dictators.push_back(d ? Json(*d) : Json(nullptr));
    return {{"voters", v.voters},
            {"alternatives", v.alternatives},
            {"fair_rule_count", v.fair_rule_count},
            {"all_dictatorial", v.all_dictatorial},
            {"dictators", dictators}};
}

// ---------------------------------------------------------------------------
// Circuits and KS instances.

/// Sparse dump: list of [row, col] for the nonzero (unit) entries.
inline Json circuit_to_json(const UnitaryCircuit& c) {
    Json entries = Json::array();
    for (auto [row, col] : c.sparse_entries()) entries.push_back({row, col});
    return {{"local_dimension", c.local_dimension()}, {"registers", c.registers()}, {"entries", entries}};
}

inline KSInstance ks_instance_from_json(const Json& j) {
    constexpr const char* kWhat = "KS instance";
    KSInstance inst;
    inst.dimension = detail::get<std::uint64_t>(j, "dimension", kWhat);
    const auto vectors = detail::get<Json>(j, "vectors", kWhat);
    if (!vectors.is_array()) throw ValidationError("KS instance: 'vectors' must be an array");
    for (const auto& v : vectors) {
        if (!v.is_array()) throw ValidationError("KS instance: each vector is an array of [re, im]");
        std::vector<Complex> amps;
        for (const auto& c : v) amps.push_back(detail::complex_from_json(c));
        inst.vectors.push_back(std::move(amps));
    }
    inst.bases = detail::get<std::vector<std::vector<std::size_t>>>(j, "bases", kWhat);
    inst.coloring = detail::get<std::vector<std::uint8_t>>(j, "coloring", kWhat);
    return inst;
}

inline Json ks_instance_to_json(const KSInstance& inst) {
    Json vectors = Json::array();
    for (const auto& v : inst.vectors) {
        Json row = Json::array();
        for (const auto& c : v) row.push_back(detail::complex_to_json(c));
        vectors.push_back(std::move(row));
    }
    return {{"dimension", inst.dimension}, {"vectors", vectors}, {"bases", inst.bases}, {"coloring", inst.coloring}};
}

// ---------------------------------------------------------------------------
// Bell scenarios: {"alice": [[x,y,z]...], "bob": [...], "state": [amp x4],
//                  "arrow": {"rule": {...}, "distribution": {"k": w}, "watched_voter": i}}

struct ArrowScenario {
    VotingRule rule;
    std::vector<double> distribution;  // indexed by profile
    std::size_t watched_voter = 0;
};

struct Scenario {
    std::optional<bell::AxisSet> axes;
    std::optional<PureState> state;
    std::optional<ArrowScenario> arrow;
};

inline Json axis_to_json(const bell::BlochAxis& a) { return Json::array({a.vec()[0], a.vec()[1], a.vec()[2]}); }

inline Scenario scenario_from_json(const Json& j, const Guards& guards = {}) {
    if (!j.is_object()) throw ValidationError("scenario: expected a JSON object");
    Scenario s;
    auto axes = [](const Json& list, const char* who) {
        if (!list.is_array() || list.empty()) {
            throw ValidationError(std::string("scenario: '") + who + "' must be a non-empty list of 3-vectors");
        }
        std::vector<bell::BlochAxis> out;
        for (const auto& v : list) {
            if (!v.is_array() || v.size() != 3) throw ValidationError("scenario: axes are 3-vectors");
            try {
                out.push_back(bell::BlochAxis::normalized(bell::Vec3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()}));
            } catch (const Json::exception&) {
                throw ValidationError("scenario: axis components must be numbers");
            } catch (const InvalidArgumentError& e) {
                throw ValidationError(std::string("scenario: ") + e.what());
            }
        }
        return out;
    };
    if (j.contains("alice") || j.contains("bob")) {
        if (!j.contains("alice") || !j.contains("bob")) {
            throw ValidationError("scenario: give both 'alice' and 'bob' axes");
        }
        s.axes = bell::AxisSet{axes(j["alice"], "alice"), axes(j["bob"], "bob")};
    }
    if (j.contains("state")) {
        const auto& st = j["state"];
        if (!st.is_array() || st.size() != 4) throw ValidationError("scenario: 'state' needs 4 amplitudes");
        std::vector<Complex> amps;
        for (const auto& c : st) amps.push_back(detail::complex_from_json(c));
        try {
            s.state = PureState::normalized(2, 2, std::move(amps));
        } catch (const InvalidArgumentError& e) {
            throw ValidationError(std::string("scenario: ") + e.what());
        }
    }
    if (j.contains("arrow")) {
        const auto& a = j["arrow"];
        VotingRule rule = rule_from_json(detail::get<Json>(a, "rule", "scenario arrow block"), guards);
        std::vector<double> dist;
        if (a.contains("distribution")) {
            dist.assign(rule.space().size(), 0.0);
            if (!a["distribution"].is_object()) {
                throw ValidationError("scenario: distribution is a map from profile index to weight");
            }
            for (const auto& [key, w] : a["distribution"].items()) {
                std::size_t pos = 0;
                unsigned long long k = 0;
                try {
                    k = std::stoull(key, &pos);
                } catch (const std::exception&) {
                    pos = 0;
                }
                if (pos != key.size() || k >= dist.size() || !w.is_number()) {
                    throw ValidationError("scenario: bad distribution entry '" + key + "'");
                }
                dist[k] = w.get<double>();
            }
        } else {
            dist = bell::uniform_distribution(rule);
        }
        const auto watched =
            a.contains("watched_voter") ? detail::get<std::size_t>(a, "watched_voter", "scenario arrow block") : std::size_t{0};
        s.arrow = ArrowScenario{std::move(rule), std::move(dist), watched};
    }
    return s;
}

inline Json inequality_result_to_json(const bell::InequalityResult& r) {
    Json alice = Json::array(), bob = Json::array();
    for (const auto& a : r.alice) alice.push_back(axis_to_json(a));
    for (const auto& b : r.bob) bob.push_back(axis_to_json(b));
    return {{"name", r.name},
            {"value", r.value},
            {"classical_bound", {{"lower", r.classical.lower}, {"upper", r.classical.upper}}},
            {"violated", r.violated},
            {"axes", {{"alice", alice}, {"bob", bob}}}};
}

inline Json correlation_table_to_json(const bell::CorrelationTable& t) {
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    Json corr = Json::array(), weight = Json::array(), ap = Json::array(), bp = Json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        Json row = Json::array(), wrow = Json::array();
        for (std::size_t k = 0; k < 3; ++k) {
            row.push_back(opt(t.correlation[i][k]));
            wrow.push_back(t.weight[i][k]);
        }
        corr.push_back(row);
        weight.push_back(wrow);
        ap.push_back(opt(t.alice_plus[i]));
        bp.push_back(opt(t.bob_plus[i]));
    }
    return {{"correlation", corr}, {"weight", weight}, {"alice_plus", ap}, {"bob_plus", bp}};
}

// ---------------------------------------------------------------------------
// Energy reports: {m, n, strategy, k, T, log_base, E1, E2, E, formula_variant}

inline Json energy_report_to_json(const landauer::VotingEnergyReport& r, const landauer::EnergyParams& p) {
    return {{"m", r.voters},
            {"n", r.alternatives},
            {"strategy", landauer::to_string(r.strategy)},
            {"k", p.k},
            {"T", p.temperature},
            {"log_base", p.log_base == 0.0 ? Json("e") : Json(p.log_base)},
            {"E1", r.e1},
            {"E2", r.e2},
            {"E", r.e},
            {"formula_variant", landauer::to_string(r.variant)}};
}

}  // namespace arrowq::io
