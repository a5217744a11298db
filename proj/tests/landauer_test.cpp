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

#include "arrowq/landauer.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace arrowq;
using namespace arrowq::landauer;

namespace {

EnergyParams unit_kt() { return EnergyParams{1.0, 1.0, 0.0}; }

}  // namespace

TEST(erase_cost, examples) {
    EnergyParams room;
    EXPECT_NEAR(erase_cost(room, 2, Strategy::kWithMemory).energy, kBoltzmann * 300 * std::log(2.0), 1e-35);
    EXPECT_EQ(erase_cost(room, 1, Strategy::kWithMemory).energy, 0.0);
    EXPECT_EQ(erase_cost(room, 1, Strategy::kWithoutMemory).energy, 0.0);
    EXPECT_NEAR(erase_cost(unit_kt(), 6, Strategy::kWithMemory).energy, 1.791759, 1e-6);
    EXPECT_NEAR(erase_cost(unit_kt(), 6, Strategy::kWithoutMemory).energy, 8.958797, 1e-6);
    EXPECT_THROW((void)erase_cost(unit_kt(), 0, Strategy::kWithMemory), InvalidArgumentError);
}

TEST(erase_cost, without_memory_costs_d_minus_one_times_more) {
    for (std::uint64_t d = 1; d <= 200; ++d) {
        const double with = erase_cost(unit_kt(), d, Strategy::kWithMemory).energy;
        const double without = erase_cost(unit_kt(), d, Strategy::kWithoutMemory).energy;
        EXPECT_GE(without, with);
        EXPECT_NEAR(without, static_cast<double>(d - 1) * with, 1e-12 * (1 + without));
    }
}

TEST(erase_cost, linear_in_temperature) {
    for (double t : {0.5, 1.0, 77.0, 300.0, 1e4}) {
        EnergyParams p{kBoltzmann, t, 0.0};
        EnergyParams base{kBoltzmann, 1.0, 0.0};
        EXPECT_NEAR(erase_cost(p, 24, Strategy::kWithoutMemory).energy / erase_cost(base, 24, Strategy::kWithoutMemory).energy,
                    t, 1e-9 * t);
    }
}

TEST(erase_cost, log_base_two_counts_bits) {
    EnergyParams bits{1.0, 1.0, 2.0};
    EXPECT_NEAR(erase_cost(bits, 8, Strategy::kWithMemory).energy, 3.0, 1e-12);
}

TEST(energy_params, rejects_bad_values) {
    EXPECT_THROW((EnergyParams{1.0, 0.0, 0.0}.validate()), InvalidArgumentError);
    EXPECT_THROW((EnergyParams{1.0, -5.0, 0.0}.validate()), InvalidArgumentError);
    EXPECT_THROW((EnergyParams{0.0, 1.0, 0.0}.validate()), InvalidArgumentError);
    EXPECT_THROW((EnergyParams{1.0, 1.0, 1.0}.validate()), InvalidArgumentError);
    EXPECT_THROW((EnergyParams{1.0, 1.0, -2.0}.validate()), InvalidArgumentError);
    EXPECT_THROW((void)voting_energy(EnergyParams{1.0, 0.0, 0.0}, 3, 3, Strategy::kWithMemory), InvalidArgumentError);
}

TEST(voting_energy, examples) {
    auto r = voting_energy(unit_kt(), 3, 3, Strategy::kWithMemory);
    EXPECT_NEAR(r.e, 2.890372, 1e-6);
    EXPECT_NEAR(r.e1, std::log(3.0), 1e-15);
    EXPECT_NEAR(r.e2, std::log(6.0), 1e-15);

    EXPECT_EQ(voting_energy(unit_kt(), 1, 4, Strategy::kWithMemory).e1, 0.0);
    EXPECT_EQ(voting_energy(unit_kt(), 5, 1, Strategy::kWithoutMemory).e2, 0.0);

    auto w = voting_energy(unit_kt(), 3, 3, Strategy::kWithoutMemory);
    EXPECT_NEAR(w.e, 2 * std::log(3.0) + 5 * std::log(6.0), 1e-12);
}

TEST(voting_energy, guards) {
    EXPECT_THROW((void)voting_energy(unit_kt(), 3, 21, Strategy::kWithMemory), SizeLimitError);
    EXPECT_NO_THROW((void)voting_energy(unit_kt(), 3, 20, Strategy::kWithMemory));
    EXPECT_THROW((void)voting_energy(unit_kt(), 0, 3, Strategy::kWithMemory), InvalidArgumentError);
}

TEST(voting_energy, literal_variant) {
    auto lit = voting_energy(unit_kt(), 4, 3, Strategy::kWithMemory, FormulaVariant::kPaperLiteral);
    EXPECT_NEAR(lit.e1, std::log(24.0), 1e-12);  // log 4!
    EXPECT_NEAR(lit.e2, std::log(720.0), 1e-12);  // log 6!
    for (std::size_t m = 1; m <= 6; ++m)
        for (std::size_t n = 1; n <= 5; ++n) {
            auto a = voting_energy(unit_kt(), m, n, Strategy::kWithoutMemory, FormulaVariant::kPaperLiteral);
            auto b = voting_energy(unit_kt(), m, n, Strategy::kWithoutMemory, FormulaVariant::kResolved);
            EXPECT_EQ(a.e, b.e);
        }
    EXPECT_EQ(parse_variant("paper-literal"), FormulaVariant::kPaperLiteral);
    EXPECT_THROW(parse_variant("other"), InvalidArgumentError);
    EXPECT_EQ(parse_strategy("without-memory"), Strategy::kWithoutMemory);
    EXPECT_THROW(parse_strategy("forget"), InvalidArgumentError);
}

TEST(divergence_scan, first_five) {
    auto s = divergence_scan(unit_kt(), 3, 5, Strategy::kWithMemory);
    ASSERT_EQ(s.e1.size(), 5u);
    EXPECT_EQ(s.e1[0], 0.0);
    for (std::size_t m = 2; m <= 5; ++m) EXPECT_NEAR(s.e1[m - 1], std::log(static_cast<double>(m)), 1e-15);
    EXPECT_TRUE(s.strictly_increasing_from_two);
    EXPECT_FALSE(s.annotation.empty());
}

TEST(divergence_scan, long_scan_is_unbounded) {
    auto s = divergence_scan(unit_kt(), 3, 100000, Strategy::kWithMemory);
    EXPECT_TRUE(s.strictly_increasing_from_two);
    EXPECT_GT(s.e1.back(), 11.5);  // ln 1e5 = 11.51
    EXPECT_THROW((void)divergence_scan(unit_kt(), 3, 2000000, Strategy::kWithMemory), SizeLimitError);
}
