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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "arrowq/errors.hpp"
#include "arrowq/guards.hpp"
#include "arrowq/linear_order.hpp"

namespace arrowq::landauer {

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K, exact SI value

struct EnergyParams {
    double k = kBoltzmann;
    double temperature = 300.0;  // K
    double log_base = 0.0;       // 0 selects the natural logarithm

    void validate() const {
        if (!(temperature > 0) || !std::isfinite(temperature)) {
            throw InvalidArgumentError("temperature must be positive, got " + std::to_string(temperature));
        }
        if (!(k > 0) || !std::isfinite(k)) {
            throw InvalidArgumentError("Boltzmann constant must be positive");
        }
        if (log_base != 0.0 && (!(log_base > 0) || log_base == 1.0 || !std::isfinite(log_base))) {
            throw InvalidArgumentError("log base must be positive and != 1");
        }
    }

    /// log of a value given as its natural log.
    [[nodiscard]] double log_from_ln(double ln_value) const {
        return log_base == 0.0 ? ln_value : ln_value / std::log(log_base);
    }

    [[nodiscard]] double kT() const { return k * temperature; }
};

enum class Strategy { kWithMemory, kWithoutMemory };

inline std::string to_string(Strategy s) { return s == Strategy::kWithMemory ? "with-memory" : "without-memory"; }

inline Strategy parse_strategy(const std::string& s) {
    if (s == "with-memory") return Strategy::kWithMemory;
    if (s == "without-memory") return Strategy::kWithoutMemory;
    throw InvalidArgumentError("unknown strategy '" + s + "' (with-memory | without-memory)");
}

struct ErasureCost {
    Strategy strategy = Strategy::kWithMemory;
    std::uint64_t cardinality = 1;
    double energy = 0;
};

/// Landauer cost of erasing a D-ary guess: kT log D once when guesses are
/// remembered, (D-1) kT log D when every wrong guess is erased.
inline ErasureCost erase_cost(const EnergyParams& params, std::uint64_t cardinality, Strategy strategy) {
    params.validate();
    if (cardinality == 0) throw InvalidArgumentError("erasure cardinality must be at least 1");
    const double per_erasure = params.kT() * params.log_from_ln(std::log(static_cast<double>(cardinality)));
    const double erasures = strategy == Strategy::kWithMemory ? 1.0 : static_cast<double>(cardinality - 1);
    return {strategy, cardinality, erasures * per_erasure};
}

enum class FormulaVariant {
    kResolved,      // D1 = voters, D2 = n! ballots
    kPaperLiteral,  // with memory: kT log m! and kT log (n!)!
};

inline std::string to_string(FormulaVariant v) { return v == FormulaVariant::kResolved ? "resolved" : "paper-literal"; }

inline FormulaVariant parse_variant(const std::string& s) {
    if (s == "resolved") return FormulaVariant::kResolved;
    if (s == "paper-literal") return FormulaVariant::kPaperLiteral;
    throw InvalidArgumentError("unknown formula variant '" + s + "' (resolved | paper-literal)");
}

struct VotingEnergyReport {
    std::size_t voters = 0;
    std::size_t alternatives = 0;
    Strategy strategy = Strategy::kWithMemory;
    FormulaVariant variant = FormulaVariant::kResolved;
    double e1 = 0;  // find the dictator
    double e2 = 0;  // find the dictator's ballot
    double e = 0;
};

/// E = E1 + E2 for Bob's guessing game.
///
/// The literal variant takes the with-memory costs as kT log m! and
/// kT log (n!)!, evaluated through lgamma. Without memory both variants agree.
inline VotingEnergyReport voting_energy(const EnergyParams& params, std::size_t voters, std::size_t alternatives,
                                        Strategy strategy, FormulaVariant variant = FormulaVariant::kResolved,
                                        const Guards& guards = {}) {
    params.validate();
    if (voters < 1 || alternatives < 1) throw InvalidArgumentError("need at least one voter and one alternative");
    if (alternatives > guards.max_energy_alternatives) {
        throw SizeLimitError("energy ledger: n=" + std::to_string(alternatives) + " exceeds guard " +
                             std::to_string(guards.max_energy_alternatives));
    }
    const std::uint64_t ballots = factorial(alternatives);
    VotingEnergyReport r{voters, alternatives, strategy, variant, 0, 0, 0};
    if (variant == FormulaVariant::kResolved || strategy == Strategy::kWithoutMemory) {
        r.e1 = erase_cost(params, voters, strategy).energy;
        r.e2 = erase_cost(params, ballots, strategy).energy;
    } else {
        // log(x!) = lgamma(x + 1)
        r.e1 = params.kT() * params.log_from_ln(std::lgamma(static_cast<double>(voters) + 1.0));
        r.e2 = params.kT() * params.log_from_ln(std::lgamma(static_cast<double>(ballots) + 1.0));
    }
    r.e = r.e1 + r.e2;
    return r;
}

struct DivergenceScan {
    std::vector<double> e1;  // e1[k] = E1 at m = k + 1
    bool strictly_increasing_from_two = true;
    std::string annotation;
};

/// E1(m) for m = 1..m_max at fixed n.
inline DivergenceScan divergence_scan(const EnergyParams& params, std::size_t alternatives, std::size_t max_voters,
                                      Strategy strategy, const Guards& guards = {}) {
    if (max_voters < 1) throw InvalidArgumentError("divergence scan needs at least one voter");
    if (max_voters > guards.max_scan_voters) {
        throw SizeLimitError("divergence scan: m_max=" + std::to_string(max_voters) + " exceeds guard " +
                             std::to_string(guards.max_scan_voters));
    }
    DivergenceScan s;
    s.e1.reserve(max_voters);
    for (std::size_t m = 1; m <= max_voters; ++m) {
        s.e1.push_back(voting_energy(params, m, alternatives, strategy, FormulaVariant::kResolved, guards).e1);
        if (m >= 3 && !(s.e1[m - 1] > s.e1[m - 2])) s.strictly_increasing_from_two = false;
    }
    s.annotation =
        "E1 grows without bound in the number of voters; read as: no finite-energy dictatorial circuit exists "
        "for an infinite electorate.";
    return s;
}

}  // namespace arrowq::landauer
