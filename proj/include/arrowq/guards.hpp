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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "arrowq/errors.hpp"

namespace arrowq {

/// Enumeration and memory limits. Every exhaustive routine takes one of these
/// and refuses inputs beyond it. Defaults keep the largest routine run in
/// seconds; `scaled` raises them for callers that accept longer runs.
struct Guards {
    std::size_t max_alternatives = 8;        // enumerate_orders: n! <= 40320
    std::size_t max_pair_inputs = 16;        // fair-rule search: 2^m
    std::size_t max_pairwise_alternatives = 4;
    std::uint64_t max_profiles = 1u << 22;   // tabulated rule size (n!)^m
    std::uint64_t max_circuit_dimension = 4096;  // d^(m+1)
    std::uint64_t max_dense_dimension = 1024;    // dense matrix materialization
    std::size_t max_bell_settings = 4;
    std::size_t max_energy_alternatives = 20;    // 20! still fits in 64 bits
    std::uint64_t max_scan_voters = 1000000;

    /// Multiplies every limit by `factor`. Limits tied to 64-bit overflow
    /// (factorials) stay capped.
    [[nodiscard]] Guards scaled(std::uint64_t factor) const {
        if (factor == 0) {
            throw InvalidArgumentError("guard multiplier must be positive");
        }
        Guards g = *this;
        g.max_alternatives = std::min<std::size_t>(g.max_alternatives * factor, 12);
        g.max_pair_inputs *= factor;
        g.max_pairwise_alternatives *= factor;
        g.max_profiles *= factor;
        g.max_circuit_dimension *= factor;
        g.max_dense_dimension *= factor;
        g.max_bell_settings = std::min<std::size_t>(g.max_bell_settings * factor, 16);
        g.max_energy_alternatives = 20;
        g.max_scan_voters *= factor;
        return g;
    }

    /// Defaults scaled by the integer in ARROWQ_GUARD_OVERRIDE, if set.
    static Guards from_environment() {
        const char* raw = std::getenv("ARROWQ_GUARD_OVERRIDE");
        if (raw == nullptr || *raw == '\0') {
            return Guards{};
        }
        char* end = nullptr;
        unsigned long long factor = std::strtoull(raw, &end, 10);
        if (end == raw || *end != '\0' || factor == 0) {
            throw InvalidArgumentError(std::string("ARROWQ_GUARD_OVERRIDE must be a positive integer, got '") + raw +
                                       "'");
        }
        return Guards{}.scaled(factor);
    }
};

}  // namespace arrowq
