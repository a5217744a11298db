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

// arrowq: command-line driver. Every subcommand prints one JSON report and
// exits 0 iff the report's summary passes; errors exit 2.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "arrowq/cli.hpp"

namespace {

int emit(arrowq::cli::Report report, const std::string& output, bool timing,
         std::chrono::steady_clock::time_point start) {
    if (timing) {
        report.results["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    const std::string text = report.dump();
    if (output == "-") {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw arrowq::ValidationError("cannot write '" + output + "'");
        out << text;
    }
    return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arrowq: Arrow's theorem, voting circuits, cloning, Bell and Landauer checks"};
    app.require_subcommand(1);

    std::string output = "-";
    bool json = false;
    bool timing = false;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output,-o", output, "Report path, '-' for stdout")->capture_default_str();
        sub->add_flag("--json", json, "Machine format (the only format; accepted for compatibility)");
        sub->add_flag("--timing", timing, "Add wall time to the report (breaks byte-identical output)");
        sub->add_option("--seed", seed, "Random seed")->capture_default_str();
    };

    arrowq::cli::VerifyArrowOptions arrow_opt;
    auto* verify = app.add_subcommand("verify-arrow", "Enumerate all fair rules and look for dictators");
    verify->add_option("--voters,-m", arrow_opt.voters)->capture_default_str();
    verify->add_option("--alternatives,-n", arrow_opt.alternatives)->capture_default_str();
    add_common(verify);

    arrowq::cli::CloneTestOptions clone_opt;
    std::string rule_file;
    auto* clone = app.add_subcommand("clone-test", "Cloning fidelity of a dictatorial voting circuit");
    clone->add_option("--theta", clone_opt.thetas, "Superposition angles in radians")->delimiter(',');
    clone->add_option("--rule", rule_file, "Rule file (default: projection on --voter)");
    clone->add_option("--voter", clone_opt.voter)->capture_default_str();
    clone->add_option("--voters,-m", clone_opt.voters)->capture_default_str();
    clone->add_option("--alternatives,-n", clone_opt.alternatives)->capture_default_str();
    clone->add_option("--samples", clone_opt.samples)->capture_default_str();
    clone->add_option("--tolerance", clone_opt.tolerance)->capture_default_str();
    add_common(clone);

    arrowq::cli::BellOptions bell_opt;
    std::string scenario_file;
    auto* bell = app.add_subcommand("bell", "Classical bound and quantum value of CHSH / CH");
    bell->add_option("--inequality", bell_opt.inequality)->check(CLI::IsMember({"chsh", "ch"}))->capture_default_str();
    bell->add_flag("--optimize", bell_opt.optimize, "Search axes for the largest value");
    bell->add_option("--scenario", scenario_file, "Scenario file");
    bell->add_option("--budget", bell_opt.budget, "Objective evaluations for --optimize")->capture_default_str();
    add_common(bell);

    arrowq::cli::EnergyOptions energy_opt;
    auto* energy = app.add_subcommand("energy", "Landauer ledger of finding the dictator");
    energy->add_option("--voters,-m", energy_opt.voters)->capture_default_str();
    energy->add_option("--alternatives,-n", energy_opt.alternatives)->capture_default_str();
    energy->add_option("--strategy", energy_opt.strategy)
        ->check(CLI::IsMember({"with-memory", "without-memory"}))
        ->capture_default_str();
    energy->add_option("--k", energy_opt.k, "Boltzmann constant")->capture_default_str();
    energy->add_option("--T", energy_opt.temperature, "Temperature (K)")->capture_default_str();
    energy->add_option("--log-base", energy_opt.log_base, "Logarithm base (0 = natural)")->capture_default_str();
    energy->add_option("--variant", energy_opt.variant)
        ->check(CLI::IsMember({"resolved", "paper-literal"}))
        ->capture_default_str();
    energy->add_option("--scan-voters", energy_opt.scan_voters, "Also scan E1 for m = 1..N")->capture_default_str();
    add_common(energy);

    arrowq::cli::KsVerifyOptions ks_opt;
    auto* ks = app.add_subcommand("ks-verify", "Check a {0,1} coloring against declared orthonormal bases");
    ks->add_option("--instance", ks_opt.instance_file, "KS instance file")->required();
    add_common(ks);

    CLI11_PARSE(app, argc, argv);
    (void)json;

    const auto start = std::chrono::steady_clock::now();
    try {
        const auto guards = arrowq::Guards::from_environment();
        if (verify->parsed()) {
            return emit(arrowq::cli::cmd_verify_arrow(arrow_opt, guards), output, timing, start);
        }
        if (clone->parsed()) {
            clone_opt.seed = seed;
            if (!rule_file.empty()) clone_opt.rule_file = rule_file;
            return emit(arrowq::cli::cmd_clone_test(clone_opt, guards), output, timing, start);
        }
        if (bell->parsed()) {
            bell_opt.seed = seed;
            if (!scenario_file.empty()) bell_opt.scenario_file = scenario_file;
            return emit(arrowq::cli::cmd_bell(bell_opt, guards), output, timing, start);
        }
        if (energy->parsed()) {
            return emit(arrowq::cli::cmd_energy(energy_opt, guards), output, timing, start);
        }
        if (ks->parsed()) {
            return emit(arrowq::cli::cmd_ks_verify(ks_opt), output, timing, start);
        }
    } catch (const arrowq::SizeLimitError& e) {
        std::cerr << "arrowq: size limit: " << e.what() << "\n";
        return 2;
    } catch (const arrowq::Error& e) {
        std::cerr << "arrowq: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
