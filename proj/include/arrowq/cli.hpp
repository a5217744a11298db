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

// Subcommand implementations behind the arrowq tool. Each returns a Report
// whose JSON form is deterministic for a given configuration.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "arrowq/ballot_hilbert.hpp"
#include "arrowq/bell.hpp"
#include "arrowq/io.hpp"
#include "arrowq/landauer.hpp"
#include "arrowq/rules.hpp"
#include "arrowq/social_choice.hpp"

namespace arrowq::cli {

using io::Json;

struct Report {
    std::string subcommand;
    Json config = Json::object();
    Json results = Json::object();
    std::vector<std::string> failures;

    [[nodiscard]] bool pass() const { return failures.empty(); }

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }

    [[nodiscard]] Json to_json() const {
        return {{"subcommand", subcommand},
                {"config", config},
                {"results", results},
                {"summary", {{"pass", pass()}, {"failures", failures}}}};
    }

    [[nodiscard]] std::string dump() const { return to_json().dump(2) + "\n"; }
};

// ---------------------------------------------------------------------------

struct VerifyArrowOptions {
    std::size_t voters = 2;
    std::size_t alternatives = 3;
};

inline Report cmd_verify_arrow(const VerifyArrowOptions& opt, const Guards& guards = {}) {
    Report rep;
    rep.subcommand = "verify-arrow";
    rep.config = {{"voters", opt.voters}, {"alternatives", opt.alternatives}};
    const ArrowVerification v = verify_arrow(opt.voters, opt.alternatives, guards);
    rep.results = io::arrow_verification_to_json(v);

    Json rules = Json::array();
    for (const auto& rule : v.rules) {
        // Cross-check each fair rule through its table form.
        const ArrowReport ar = arrow_report(rule.to_table());
        rep.require(ar.pareto.holds && ar.iia.holds && ar.ud, "fair rule fails a condition in table form");
        rules.push_back({{"rule", io::rule_to_json(rule)}, {"conditions", io::arrow_report_to_json(ar)}});
    }
    rep.results["rules"] = std::move(rules);

    if (opt.alternatives > 2) {
        rep.require(v.all_dictatorial, "a fair rule without a dictator was found");
    } else {
        rep.require(!v.all_dictatorial, "no non-dictatorial fair rule exists at this size");
    }
    return rep;
}

// ---------------------------------------------------------------------------

struct CloneTestOptions {
    std::size_t voters = 2;
    std::size_t alternatives = 3;
    std::size_t voter = 0;
    std::vector<double> thetas{0.0, std::numbers::pi / 8, std::numbers::pi / 4, 3 * std::numbers::pi / 8,
                               std::numbers::pi / 2};
    std::optional<std::string> rule_file;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
};

/// (cos^3 t + sin^3 t)^2: overlap of (c|00> + s|11>) with psi (x) psi.
inline double analytic_cloning_fidelity(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double overlap = c * c * c + s * s * s;
    return overlap * overlap;
}

inline Report cmd_clone_test(const CloneTestOptions& opt, const Guards& guards = {}) {
    Report rep;
    rep.subcommand = "clone-test";
    const VotingRule rule = opt.rule_file ? io::rule_from_json(io::read_json_file(*opt.rule_file), guards)
                                          : rules::projection(opt.voters, opt.alternatives, opt.voter, guards);
    rep.config = {{"voters", rule.voters()},
                  {"alternatives", rule.alternatives()},
                  {"voter", opt.voter},
                  {"thetas", opt.thetas},
                  {"rule_file", opt.rule_file ? Json(*opt.rule_file) : Json(nullptr)},
                  {"samples", opt.samples},
                  {"seed", opt.seed},
                  {"tolerance", opt.tolerance}};

    const BallotSpace space(rule.alternatives(), 0, guards);
    const UnitaryCircuit circuit = lift_rule_to_unitary(space, rule, guards);
    if (opt.voter >= rule.voters()) {
        throw InvalidArgumentError("voter " + std::to_string(opt.voter) + " out of range");
    }
    if (!is_dictatorial_circuit(circuit, space, opt.voter)) {
        throw PreconditionError("the rule is not dictatorial for voter " + std::to_string(opt.voter));
    }
    const std::size_t m = rule.voters();

    if (circuit.size() <= guards.max_dense_dimension) {
        const double defect = circuit.unitarity_defect(guards);
        rep.results["unitarity_defect"] = defect;
        rep.results["permutation_matrix"] = circuit.is_permutation_matrix(guards);
        rep.require(defect <= kNormTolerance, "circuit is not unitary");
    } else {
        rep.results["unitarity_defect"] = nullptr;
        rep.results["permutation_matrix"] = nullptr;
    }

    // Every basis profile: dictator ballot b with every filler assignment.
    const ProfileSpace others_space(m > 1 ? m - 1 : 1, rule.alternatives(), guards);
    const std::uint64_t filler_count = m > 1 ? others_space.size() : 1;
    std::uint64_t basis_cases = 0, exact = 0;
    double worst = 0;
    for (std::uint64_t b = 0; b < space.ballot_count(); ++b) {
        const PureState psi = PureState::basis(space.dimension(), 1, b);
        for (std::uint64_t f = 0; f < filler_count; ++f) {
            std::vector<LinearOrder> fillers;
            if (m > 1) fillers = others_space.at(f).ballots;
            const double fid = cloning_fidelity(circuit, space, opt.voter, psi, fillers);
            ++basis_cases;
            exact += fid == 1.0;
            worst = std::max(worst, std::abs(fid - 1.0));
        }
    }
    rep.results["basis"] = {{"cases", basis_cases}, {"exact_clones", exact}, {"max_deviation", worst}};
    rep.require(exact == basis_cases, "a basis ballot was not cloned with fidelity exactly 1");

    const std::vector<LinearOrder> fillers(m - 1, space.ballot_at(0));
    Json per_theta = Json::array();
    for (double theta : opt.thetas) {
        std::vector<Complex> amps(space.dimension());
        amps[0] = std::cos(theta);
        amps[1] = std::sin(theta);
        const PureState psi = PureState::normalized(space.dimension(), 1, std::move(amps));
        const double fid = cloning_fidelity(circuit, space, opt.voter, psi, fillers);
        const double expected = analytic_cloning_fidelity(theta);
        per_theta.push_back({{"theta", theta}, {"fidelity", fid}, {"analytic", expected}});
        rep.require(std::abs(fid - expected) <= opt.tolerance, "fidelity off the analytic curve at theta=" +
                                                                   std::to_string(theta));
    }
    rep.results["superpositions"] = std::move(per_theta);

    const auto sampled = sample_two_ballot_superpositions(space, opt.samples, opt.seed);
    std::vector<PureState> states;
    for (const auto& s : sampled) states.push_back(s.second);
    const CloningScanReport scan = no_cloning_scan(circuit, space, opt.voter, states, fillers);
    rep.results["scan"] = {{"samples", scan.samples},
                           {"min_fidelity", scan.min_fidelity},
                           {"argmin_theta", scan.argmin ? Json(sampled[*scan.argmin].first) : Json(nullptr)},
                           {"basis_samples_clone", scan.basis_samples_clone},
                           {"superpositions_fail", scan.superpositions_fail}};
    rep.require(scan.basis_samples_clone, "scan: a basis sample failed to clone");
    rep.require(scan.superpositions_fail, "scan: a superposition was cloned perfectly");
    return rep;
}

// ---------------------------------------------------------------------------

struct BellOptions {
    std::string inequality = "chsh";
    bool optimize = false;
    std::optional<std::string> scenario_file;
    std::size_t budget = 10000;
    std::uint64_t seed = 0;
};

inline Report cmd_bell(const BellOptions& opt, const Guards& guards = {}) {
    Report rep;
    rep.subcommand = "bell";
    rep.config = {{"inequality", opt.inequality},
                  {"optimize", opt.optimize},
                  {"scenario_file", opt.scenario_file ? Json(*opt.scenario_file) : Json(nullptr)},
                  {"budget", opt.budget},
                  {"seed", opt.seed}};

    bell::BellExpression expr;
    if (opt.inequality == "chsh") {
        expr = bell::BellExpression::chsh();
    } else if (opt.inequality == "ch") {
        expr = bell::BellExpression::ch();
    } else {
        throw InvalidArgumentError("unknown inequality '" + opt.inequality + "' (chsh | ch)");
    }

    io::Scenario scenario;
    if (opt.scenario_file) scenario = io::scenario_from_json(io::read_json_file(*opt.scenario_file), guards);
    const PureState state = scenario.state ? *scenario.state : bell::singlet();

    bell::AxisSet axes;
    if (scenario.axes) {
        axes = *scenario.axes;
    } else {
        axes = bell::chsh_optimal_singlet_axes();
        if (opt.inequality == "ch") std::swap(axes.alice[0], axes.alice[1]);
    }
    if (axes.alice.size() != 2 || axes.bob.size() != 2) {
        throw ValidationError("scenario: CHSH and CH take two settings per party");
    }

    if (opt.optimize) {
        bell::AxisSet start = axes;
        if (!scenario.axes) {
            const auto r = bell::random_axes(4, opt.seed);
            start = {{r[0], r[1]}, {r[2], r[3]}};
        }
        const auto res = bell::maximize_violation(expr, state, start, opt.budget);
        rep.results["optimization"] = {{"initial_value", res.initial_value},
                                       {"evaluations", res.evaluations},
                                       {"value", res.value}};
        axes = res.axes;
    }

    const bell::InequalityResult result = bell::evaluate(expr, state, axes.alice, axes.bob, guards);
    rep.results["inequality"] = io::inequality_result_to_json(result);
    rep.results["quantum_range"] = {{"lower", expr.quantum_lower}, {"upper", expr.quantum_upper}};
    rep.require(result.value <= expr.quantum_upper + 1e-6 && result.value >= expr.quantum_lower - 1e-6,
                "value lies outside the quantum range");

    // CH(a1,a2,b1,b2) against (S(a2,a1,b1,b2) - 2) / 4 on the same axes.
    const double ch = bell::ch_value(state, axes.alice[0], axes.alice[1], axes.bob[0], axes.bob[1]).value;
    const double s = bell::chsh_value(state, axes.alice[1], axes.alice[0], axes.bob[0], axes.bob[1]).value;
    const double gap = std::abs(ch - (s - 2) / 4);
    rep.results["ch_chsh_identity_gap"] = gap;
    rep.require(gap <= 1e-10, "CH and CHSH values are inconsistent");

    if (scenario.arrow) {
        const auto& a = *scenario.arrow;
        const auto table = bell::arrow_scenario_table(a.rule, a.distribution, bell::BallotEmbedding::default_embedding(),
                                                      a.watched_voter);
        rep.results["arrow_scenario"] = io::correlation_table_to_json(table);
        rep.results["arrow_scenario"]["watched_voter"] = a.watched_voter;
    }
    return rep;
}

// ---------------------------------------------------------------------------

struct EnergyOptions {
    std::size_t voters = 3;
    std::size_t alternatives = 3;
    std::string strategy = "with-memory";
    double k = landauer::kBoltzmann;
    double temperature = 300.0;
    double log_base = 0.0;
    std::string variant = "resolved";
    std::size_t scan_voters = 0;  // 0: no divergence scan
};

inline Report cmd_energy(const EnergyOptions& opt, const Guards& guards = {}) {
    Report rep;
    rep.subcommand = "energy";
    const landauer::EnergyParams params{opt.k, opt.temperature, opt.log_base};
    params.validate();
    const auto strategy = landauer::parse_strategy(opt.strategy);
    const auto variant = landauer::parse_variant(opt.variant);
    rep.config = {{"voters", opt.voters},         {"alternatives", opt.alternatives},
                  {"strategy", opt.strategy},     {"k", opt.k},
                  {"T", opt.temperature},         {"log_base", opt.log_base == 0.0 ? Json("e") : Json(opt.log_base)},
                  {"variant", opt.variant},       {"scan_voters", opt.scan_voters}};

    const auto chosen = landauer::voting_energy(params, opt.voters, opt.alternatives, strategy, variant, guards);
    rep.results["report"] = io::energy_report_to_json(chosen, params);
    const auto other_variant = variant == landauer::FormulaVariant::kResolved ? landauer::FormulaVariant::kPaperLiteral
                                                                              : landauer::FormulaVariant::kResolved;
    const auto other = landauer::voting_energy(params, opt.voters, opt.alternatives, strategy, other_variant, guards);
    if (other.e1 != chosen.e1 || other.e2 != chosen.e2) {
        rep.results["alternate_variant"] = io::energy_report_to_json(other, params);
    }
    rep.require(chosen.e == chosen.e1 + chosen.e2, "E != E1 + E2");
    rep.require(chosen.e1 >= 0 && chosen.e2 >= 0, "negative erasure energy");

    if (opt.scan_voters > 0) {
        const auto scan = landauer::divergence_scan(params, opt.alternatives, opt.scan_voters, strategy, guards);
        rep.results["divergence"] = {{"E1", scan.e1},
                                     {"strictly_increasing_from_two", scan.strictly_increasing_from_two},
                                     {"annotation", scan.annotation}};
        rep.require(scan.strictly_increasing_from_two, "E1 is not strictly increasing in the voter count");
    }
    return rep;
}

// ---------------------------------------------------------------------------

struct KsVerifyOptions {
    std::string instance_file;
};

inline Report cmd_ks_verify(const KsVerifyOptions& opt) {
    Report rep;
    rep.subcommand = "ks-verify";
    rep.config = {{"instance", opt.instance_file}};
    const KSInstance inst = io::ks_instance_from_json(io::read_json_file(opt.instance_file));
    const KSVerification v = verify_ks_coloring(inst);
    rep.results = {{"valid", v.valid},
                   {"violated_bases", v.violated_bases},
                   {"bases", inst.bases.size()},
                   {"vectors", inst.vectors.size()}};
    rep.require(v.valid, "coloring violates the one-per-basis rule");
    return rep;
}

}  // namespace arrowq::cli
