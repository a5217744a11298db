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

// A handful of named rules used by tests, the CLI and as Arrow counterexamples.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <numeric>
#include <vector>

#include "arrowq/social_choice.hpp"

namespace arrowq::rules {

/// r(p) = p^voter.
inline VotingRule projection(std::size_t m, std::size_t n, std::size_t voter, const Guards& guards = {}) {
    if (voter >= m) {
        throw InvalidArgumentError("projection voter " + std::to_string(voter) + " out of range");
    }
    return VotingRule::tabulate(m, n, [voter](const Profile& p) { return p.ballots[voter]; }, guards);
}

/// r(p) = reverse of p^voter. Fails Pareto and has no dictator.
inline VotingRule anti_dictator(std::size_t m, std::size_t n, std::size_t voter, const Guards& guards = {}) {
    if (voter >= m) {
        throw InvalidArgumentError("anti-dictator voter " + std::to_string(voter) + " out of range");
    }
    return VotingRule::tabulate(m, n, [voter](const Profile& p) { return p.ballots[voter].reversed(); }, guards);
}

inline VotingRule constant(std::size_t m, const LinearOrder& outcome, const Guards& guards = {}) {
    return VotingRule::tabulate(m, outcome.size(), [&outcome](const Profile&) { return outcome; }, guards);
}

/// Borda count: position k earns n-1-k points; ties go to the lower id.
inline VotingRule borda(std::size_t m, std::size_t n, const Guards& guards = {}) {
    return VotingRule::tabulate(
        m, n,
        [n](const Profile& p) {
            std::vector<std::size_t> score(n, 0);
            for (const auto& b : p.ballots)
                for (std::size_t pos = 0; pos < n; ++pos) score[b[pos]] += n - 1 - pos;
            std::vector<Alternative> ranking(n);
            std::iota(ranking.begin(), ranking.end(), Alternative{0});
            std::stable_sort(ranking.begin(), ranking.end(),
                             [&](Alternative x, Alternative y) { return score[x] > score[y]; });
            return LinearOrder(std::move(ranking));
        },
        guards);
}

/// Pairwise majority as an aggregator. With an odd electorate there are no
/// ties; the outcome is only guaranteed transitive for n = 2.
inline PairwiseAggregator pairwise_majority(std::size_t m, std::size_t n) {
    const std::size_t inputs = std::size_t{1} << m;
    std::vector<std::uint8_t> table(inputs);
    for (std::size_t x = 0; x < inputs; ++x) {
        table[x] = static_cast<std::uint8_t>(2 * static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(x))) > m);
    }
    return PairwiseAggregator(m, n, std::vector<std::vector<std::uint8_t>>(pair_count(n), table));
}

}  // namespace arrowq::rules
