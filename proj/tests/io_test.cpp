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

#include "arrowq/io.hpp"

#include <random>

#include "arrowq/rules.hpp"
#include "gtest/gtest.h"

using namespace arrowq;
using io::Json;

namespace {

VotingRule random_table_rule(std::size_t m, std::size_t n, std::mt19937_64& rng) {
    ProfileSpace space(m, n);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(space.ballot_count()));
    VotingRule::Table t(space.size());
    for (auto& e : t) {
        const auto r = pick(rng);
        if (r < space.ballot_count()) e = r;  // r == n! leaves the profile outside the domain
    }
    return VotingRule::from_table(m, n, std::move(t));
}

}  // namespace

TEST(rule_json, table_round_trip_property) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = 1 + trial % 3, n = 1 + (trial / 3) % 3;
        auto rule = random_table_rule(m, n, rng);
        auto back = io::rule_from_json(Json::parse(io::rule_to_json(rule).dump()));
        EXPECT_EQ(back.to_table().table(), rule.to_table().table()) << m << "x" << n;
        EXPECT_EQ(back.domain_size(), rule.domain_size());
    }
}

TEST(rule_json, pairwise_round_trip_property) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 1 + trial % 3, n = 2 + trial % 2;
        std::vector<std::vector<std::uint8_t>> tables(pair_count(n), std::vector<std::uint8_t>(std::size_t{1} << m));
        for (auto& t : tables)
            for (auto& bit : t) bit = static_cast<std::uint8_t>(rng() & 1);
        auto rule = VotingRule::from_pairwise(PairwiseAggregator(m, n, tables));
        auto back = io::rule_from_json(io::rule_to_json(rule));
        ASSERT_TRUE(back.is_pairwise());
        for (std::size_t p = 0; p < tables.size(); ++p) EXPECT_EQ(back.aggregator().table(p), tables[p]);
    }
}

TEST(rule_json, named_rules_survive) {
    for (const auto& rule : {rules::borda(2, 3), rules::projection(3, 3, 2), rules::constant(2, LinearOrder({2, 0, 1}))}) {
        EXPECT_EQ(io::rule_from_json(io::rule_to_json(rule)).to_table().table(), rule.to_table().table());
    }
}

TEST(rule_json, rejects_malformed_files) {
    EXPECT_THROW(io::rule_from_json(Json::parse(R"({"voters": 2})")), ValidationError);
    EXPECT_THROW(io::rule_from_json(Json::parse(R"({"voters": 1, "alternatives": 2, "kind": "vote", "entries": []})")),
                 ValidationError);
    EXPECT_THROW(io::rule_from_json(Json::parse(
                     R"({"voters": 1, "alternatives": 2, "kind": "table", "entries": [{"profile": [[0, 0]], "outcome": [0, 1]}]})")),
                 ValidationError);
    EXPECT_THROW(io::rule_from_json(Json::parse(
                     R"({"voters": 1, "alternatives": 2, "kind": "table", "entries": [{"profile": [[0, 1]]}]})")),
                 ValidationError);
    EXPECT_THROW(io::rule_from_json(Json::parse(R"({"voters": 1, "alternatives": 2, "kind": "table", "entries": [
                     {"profile": [[0, 1]], "outcome": [0, 1]}, {"profile": [[0, 1]], "outcome": [1, 0]}]})")),
                 ValidationError);
    EXPECT_THROW(io::rule_from_json(Json::parse(R"({"voters": 2, "alternatives": 3, "kind": "pairwise", "entries": [
                     {"pair": [0, 1], "truth_table": [0, 0, 1, 1]}]})")),
                 ValidationError);
    EXPECT_THROW(io::rule_from_json(Json::parse(R"({"voters": 2, "alternatives": 9, "kind": "table", "entries": []})")),
                 SizeLimitError);
    EXPECT_THROW(io::read_json_file("/nonexistent/rule.json"), ValidationError);
}

TEST(ks_json, round_trip_and_complex_forms) {
    auto inst = ks_instance_from_outcome(rules::projection(2, 3, 0), Profile{{LinearOrder({0, 1, 2}), LinearOrder({1, 0, 2})}});
    auto back = io::ks_instance_from_json(io::ks_instance_to_json(inst));
    EXPECT_EQ(back.dimension, inst.dimension);
    EXPECT_EQ(back.vectors, inst.vectors);
    EXPECT_EQ(back.bases, inst.bases);
    EXPECT_EQ(back.coloring, inst.coloring);

    auto mixed = io::ks_instance_from_json(
        Json::parse(R"({"dimension": 2, "vectors": [[1, 0], [[0, 0], [0, 1]]], "bases": [[0, 1]], "coloring": [0, 1]})"));
    EXPECT_EQ(mixed.vectors[1][1], Complex(0, 1));
    EXPECT_TRUE(verify_ks_coloring(mixed).valid);
}

TEST(ks_json, parse_errors) {
    EXPECT_THROW(io::ks_instance_from_json(Json::parse(R"({"dimension": 2})")), ValidationError);
    EXPECT_THROW(io::ks_instance_from_json(
                     Json::parse(R"({"dimension": 2, "vectors": [["a", 0]], "bases": [], "coloring": []})")),
                 ValidationError);
    EXPECT_THROW(io::ks_instance_from_json(
                     Json::parse(R"({"dimension": 2, "vectors": [], "bases": "x", "coloring": []})")),
                 ValidationError);
}

TEST(scenario_json, parses_axes_state_and_arrow_block) {
    auto rule = io::rule_to_json(rules::projection(2, 3, 0));
    Json j = {{"alice", {{0, 0, 2}, {1, 0, 0}}},
              {"bob", {{1, 0, 1}, {1, 0, -1}}},
              {"state", {0, 1, -1, 0}},
              {"arrow", {{"rule", rule}, {"distribution", {{"0", 0.25}, {"7", 0.75}}}, {"watched_voter", 1}}}};
    auto s = io::scenario_from_json(j);
    ASSERT_TRUE(s.axes && s.state && s.arrow);
    EXPECT_EQ(s.axes->alice[0].vec(), (bell::Vec3{0, 0, 1}));
    EXPECT_TRUE(s.state->equal_up_to_phase(bell::singlet()));
    EXPECT_EQ(s.arrow->distribution[7], 0.75);
    EXPECT_EQ(s.arrow->watched_voter, 1u);

    auto uniform = io::scenario_from_json(Json{{"arrow", {{"rule", rule}}}});
    EXPECT_NEAR(uniform.arrow->distribution[3], 1.0 / 36, 1e-15);
}

TEST(scenario_json, parse_errors) {
    auto rule = io::rule_to_json(rules::projection(2, 3, 0));
    EXPECT_THROW(io::scenario_from_json(Json::parse("[]")), ValidationError);
    EXPECT_THROW(io::scenario_from_json(Json{{"alice", {{0, 0, 1}}}}), ValidationError);
    EXPECT_THROW(io::scenario_from_json(Json{{"alice", {{0, 0}}}, {"bob", {{0, 0, 1}}}}), ValidationError);
    EXPECT_THROW(io::scenario_from_json(Json{{"alice", {{0, 0, 0}}}, {"bob", {{0, 0, 1}}}}), ValidationError);
    EXPECT_THROW(io::scenario_from_json(Json{{"state", {1, 0, 0}}}), ValidationError);
    EXPECT_THROW(io::scenario_from_json(Json{{"state", {0, 0, 0, 0}}}), ValidationError);
    EXPECT_THROW(io::scenario_from_json(Json{{"arrow", {{"rule", rule}, {"distribution", {{"x", 1}}}}}}), ValidationError);
    EXPECT_THROW(io::scenario_from_json(Json{{"arrow", {{"rule", rule}, {"distribution", {{"36", 1}}}}}}), ValidationError);
    EXPECT_THROW(io::scenario_from_json(Json{{"arrow", {{"rule", rule}, {"watched_voter", "zero"}}}}), ValidationError);
}

TEST(report_json, energy_keys) {
    landauer::EnergyParams p{1.0, 1.0, 0.0};
    auto j = io::energy_report_to_json(landauer::voting_energy(p, 3, 3, landauer::Strategy::kWithMemory), p);
    for (const char* key : {"m", "n", "strategy", "k", "T", "log_base", "E1", "E2", "E", "formula_variant"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["log_base"], "e");
    EXPECT_EQ(j["strategy"], "with-memory");
}

TEST(report_json, circuit_entries_are_sparse) {
    auto c = lift_rule_to_unitary(BallotSpace(2), rules::projection(2, 2, 0));
    auto j = io::circuit_to_json(c);
    EXPECT_EQ(j["entries"].size(), 8u);
    EXPECT_EQ(j["local_dimension"], 2);
}
