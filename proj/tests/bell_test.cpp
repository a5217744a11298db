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

#include "arrowq/bell.hpp"

#include <cmath>
#include <numbers>

#include "arrowq/rules.hpp"
#include "gtest/gtest.h"

using namespace arrowq;
using namespace arrowq::bell;

namespace {

const double kPi = std::numbers::pi;
const double kTsirelson = 2 * std::numbers::sqrt2;

using M4 = std::array<std::array<Complex, 4>, 4>;

// Oracle: sigma_a (x) sigma_b as an explicit 4x4 matrix, Pauli matrices
// written out by hand.
M4 spin_pair(const Vec3& a, const Vec3& b) {
    auto sig = [](const Vec3& v) {
        return std::array<std::array<Complex, 2>, 2>{
            {{Complex(v[2], 0), Complex(v[0], -v[1])}, {Complex(v[0], v[1]), Complex(-v[2], 0)}}};
    };
    auto sa = sig(a), sb = sig(b);
    M4 m{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m[2 * i + k][2 * j + l] = sa[i][j] * sb[k][l];
    return m;
}

double oracle_correlation(const std::array<Complex, 4>& psi, const Vec3& a, const Vec3& b) {
    auto m = spin_pair(a, b);
    Complex s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += std::conj(psi[i]) * m[i][j] * psi[j];
    return s.real();
}

// Oracle for local bounds: enumerate +-1 outcomes and compute S directly.
std::pair<double, double> oracle_chsh_bounds() {
    double lo = 1e9, hi = -1e9;
    for (int a1 : {-1, 1})
        for (int a2 : {-1, 1})
            for (int b1 : {-1, 1})
                for (int b2 : {-1, 1}) {
                    const double s = a1 * b1 + a1 * b2 + a2 * b1 - a2 * b2;
                    lo = std::min(lo, s);
                    hi = std::max(hi, s);
                }
    return {lo, hi};
}

}  // namespace

TEST(bloch_axis, validation) {
    EXPECT_THROW(BlochAxis(Vec3{1, 1, 0}), InvalidArgumentError);
    EXPECT_THROW(BlochAxis::normalized(Vec3{0, 0, 0}), InvalidArgumentError);
    auto a = BlochAxis::spherical(1.1, 0.4);
    auto b = BlochAxis::spherical(a.polar(), a.azimuth());
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(a.vec()[k], b.vec()[k], 1e-14);
}

TEST(singlet, correlation_examples) {
    auto s = singlet();
    auto z = BlochAxis(Vec3{0, 0, 1}), x = BlochAxis(Vec3{1, 0, 0});
    EXPECT_NEAR(measurement_correlation(s, z, z), -1.0, 1e-15);
    EXPECT_NEAR(measurement_correlation(s, z, x), 0.0, 1e-15);
    for (int k = 0; k <= 12; ++k) {
        const double t = k * kPi / 12;
        EXPECT_NEAR(measurement_correlation(s, z, BlochAxis::in_xz_plane(t)), -std::cos(t), 1e-12);
    }
}

TEST(singlet, matches_matrix_oracle_on_random_axes) {
    const double h = 1 / std::sqrt(2.0);
    const std::array<Complex, 4> psi{0, h, -h, 0};
    auto axes = random_axes(40, 5);
    for (std::size_t k = 0; k + 1 < axes.size(); k += 2) {
        const double v = measurement_correlation(singlet(), axes[k], axes[k + 1]);
        EXPECT_NEAR(v, oracle_correlation(psi, axes[k].vec(), axes[k + 1].vec()), 1e-12);
        EXPECT_NEAR(v, -dot(axes[k].vec(), axes[k + 1].vec()), 1e-12);
    }
}

TEST(expectation, rejects_wrong_shape) {
    auto three = PureState::basis(3, 2, 0);
    auto z = BlochAxis(Vec3{0, 0, 1});
    EXPECT_THROW((void)measurement_correlation(three, z, z), InvalidArgumentError);
}

TEST(classical_bound, standard_expressions) {
    auto [lo, hi] = oracle_chsh_bounds();
    auto chsh = classical_bound(BellExpression::chsh());
    EXPECT_EQ(chsh.lower, lo);
    EXPECT_EQ(chsh.upper, hi);
    EXPECT_EQ(chsh.upper, 2.0);
    auto ch = classical_bound(BellExpression::ch());
    EXPECT_EQ(ch.lower, -1.0);
    EXPECT_EQ(ch.upper, 0.0);
    auto e = classical_bound(BellExpression::correlator());
    EXPECT_EQ(e.lower, -1.0);
    EXPECT_EQ(e.upper, 1.0);
}

TEST(classical_bound, setting_guard) {
    auto big = BellExpression::chsh();
    big.alice_settings = 5;
    EXPECT_THROW((void)classical_bound(big), SizeLimitError);
}

TEST(chsh, optimal_axes_reach_tsirelson) {
    auto ax = chsh_optimal_singlet_axes();
    auto r = chsh_value(singlet(), ax.alice[0], ax.alice[1], ax.bob[0], ax.bob[1]);
    EXPECT_NEAR(r.value, kTsirelson, 1e-12);
    EXPECT_TRUE(r.violated);
}

TEST(chsh, degenerate_axes_stay_classical) {
    auto z = BlochAxis(Vec3{0, 0, 1});
    auto r = chsh_value(singlet(), z, z, z, z);
    EXPECT_NEAR(std::abs(r.value), 2.0, 1e-12);
    EXPECT_FALSE(r.violated);
}

TEST(chsh, product_state_never_violates) {
    auto prod = PureState::basis(2, 2, 0);
    auto ax = random_axes(4 * 10000, 17);
    for (std::size_t k = 0; k < ax.size(); k += 4) {
        auto r = chsh_value(prod, ax[k], ax[k + 1], ax[k + 2], ax[k + 3]);
        ASSERT_LE(std::abs(r.value), 2.0 + 1e-12);
        ASSERT_FALSE(r.violated);
    }
}

TEST(chsh, tsirelson_ceiling_on_random_axes) {
    auto ax = random_axes(4 * 5000, 23);
    for (std::size_t k = 0; k < ax.size(); k += 4) {
        auto r = chsh_value(singlet(), ax[k], ax[k + 1], ax[k + 2], ax[k + 3]);
        ASSERT_LE(std::abs(r.value), kTsirelson + 1e-12);
    }
}

TEST(ch, optimal_value_and_identity) {
    auto ax = chsh_optimal_singlet_axes();
    auto r = ch_value(singlet(), ax.alice[1], ax.alice[0], ax.bob[0], ax.bob[1]);
    EXPECT_NEAR(r.value, (std::numbers::sqrt2 - 1) / 2, 1e-12);
    EXPECT_TRUE(r.violated);

    auto rnd = random_axes(4 * 200, 3);
    for (std::size_t k = 0; k < rnd.size(); k += 4) {
        const double ch = ch_value(singlet(), rnd[k], rnd[k + 1], rnd[k + 2], rnd[k + 3]).value;
        const double s = chsh_value(singlet(), rnd[k + 1], rnd[k], rnd[k + 2], rnd[k + 3]).value;
        EXPECT_NEAR(ch, (s - 2) / 4, 1e-12);
    }
}

TEST(ch, identity_on_deterministic_strategies) {
    auto ch = BellExpression::ch();
    auto chsh = BellExpression::chsh();
    for (int mask = 0; mask < 16; ++mask) {
        std::array<int, 2> a{(mask & 1) ? 1 : -1, (mask & 2) ? 1 : -1};
        std::array<int, 2> b{(mask & 4) ? 1 : -1, (mask & 8) ? 1 : -1};
        std::array<int, 2> swapped{a[1], a[0]};
        EXPECT_DOUBLE_EQ(ch.evaluate_deterministic(a, b), (chsh.evaluate_deterministic(swapped, b) - 2) / 4);
    }
}

TEST(deterministic, chsh_values) {
    auto e = BellExpression::chsh();
    std::array<int, 2> plus{1, 1}, mixed{1, -1};
    EXPECT_EQ(e.evaluate_deterministic(plus, plus), 2.0);
    EXPECT_EQ(e.evaluate_deterministic(mixed, plus), 2.0);
    EXPECT_EQ(e.evaluate_deterministic(plus, mixed), 2.0);
    std::array<int, 1> one{1};
    EXPECT_THROW((void)e.evaluate_deterministic(one, plus), InvalidArgumentError);
}

TEST(optimizer, reaches_tsirelson_from_random_start) {
    const auto start = random_axes(4, 0);
    AxisSet init{{start[0], start[1]}, {start[2], start[3]}};
    auto res = maximize_violation(BellExpression::chsh(), singlet(), init, 10000);
    EXPECT_NEAR(res.value, kTsirelson, 1e-6);
    EXPECT_LE(res.evaluations, 10000u);
    EXPECT_GE(res.value, res.initial_value);
}

TEST(optimizer, ch_reaches_its_quantum_maximum) {
    const auto start = random_axes(4, 9);
    AxisSet init{{start[0], start[1]}, {start[2], start[3]}};
    auto res = maximize_violation(BellExpression::ch(), singlet(), init, 10000);
    EXPECT_NEAR(res.value, (std::numbers::sqrt2 - 1) / 2, 1e-6);
}

TEST(optimizer, optimum_is_a_fixed_point) {
    // Start at spherical angles so the decode round trip is exact.
    auto opt = chsh_optimal_singlet_axes();
    auto res = maximize_violation(BellExpression::chsh(), singlet(), opt, 2000);
    EXPECT_NEAR(res.value, kTsirelson, 1e-12);
    EXPECT_NEAR(res.value, res.initial_value, 1e-12);
}

TEST(optimizer, budget_one_returns_initial) {
    const auto start = random_axes(4, 1);
    AxisSet init{{start[0], start[1]}, {start[2], start[3]}};
    auto res = maximize_violation(BellExpression::chsh(), singlet(), init, 1);
    EXPECT_EQ(res.evaluations, 1u);
    EXPECT_EQ(res.value, res.initial_value);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(res.axes.alice[k].vec(), init.alice[k].vec());
    EXPECT_THROW((void)maximize_violation(BellExpression::chsh(), singlet(), init, 0), InvalidArgumentError);
}

TEST(embedding, default_examples) {
    auto e = BallotEmbedding::default_embedding();
    EXPECT_EQ(e.of(LinearOrder({0, 1, 2})), (AxisSign{2, 1}));
    EXPECT_EQ(e.of(LinearOrder({2, 1, 0})), (AxisSign{2, -1}));
    EXPECT_EQ(e.of(LinearOrder({2, 0, 1})), (AxisSign{1, 1}));
    EXPECT_EQ(e.of(LinearOrder({1, 0, 2})), (AxisSign{1, -1}));
    EXPECT_EQ(e.of(LinearOrder({1, 2, 0})), (AxisSign{3, 1}));
    EXPECT_EQ(e.of(LinearOrder({0, 2, 1})), (AxisSign{3, -1}));
    EXPECT_EQ(e.spin_direction(LinearOrder({2, 1, 0})), (Vec3{0, -1, 0}));
}

TEST(embedding, reversal_and_round_trip) {
    auto e = BallotEmbedding::default_embedding();
    for (const auto& o : enumerate_orders(3)) {
        auto s = e.of(o), r = e.of(o.reversed());
        EXPECT_EQ(s.axis, r.axis);
        EXPECT_EQ(s.sign, -r.sign);
        EXPECT_EQ(e.ballot_for(s), o);
    }
}

TEST(embedding, rejects_bad_maps) {
    auto axes = std::array<BlochAxis, 3>{BlochAxis(Vec3{1, 0, 0}), BlochAxis(Vec3{0, 1, 0}), BlochAxis(Vec3{0, 0, 1})};
    std::array<AxisSign, 6> dup{};
    dup.fill({1, 1});
    EXPECT_THROW(BallotEmbedding(dup, axes), ValidationError);
    // Bijective but reversal is not a sign flip: pair rank r with rank r^1.
    std::array<AxisSign, 6> wrong{AxisSign{1, 1}, {1, -1}, {2, 1}, {2, -1}, {3, 1}, {3, -1}};
    EXPECT_THROW(BallotEmbedding(wrong, axes), ValidationError);
}

TEST(arrow_scenario, dictator_watched_is_perfectly_correlated) {
    auto rule = rules::projection(2, 3, 0);
    auto table = arrow_scenario_table(rule, uniform_distribution(rule), BallotEmbedding::default_embedding(), 0);
    for (std::size_t k = 0; k < 3; ++k) {
        ASSERT_TRUE(table.correlation[k][k].has_value());
        EXPECT_DOUBLE_EQ(*table.correlation[k][k], 1.0);
        for (std::size_t l = 0; l < 3; ++l)
            if (l != k) {
                EXPECT_FALSE(table.correlation[k][l].has_value());
            }
        EXPECT_NEAR(*table.alice_plus[k], 0.5, 1e-15);
    }
}

TEST(arrow_scenario, non_dictator_watched_is_uncorrelated) {
    auto rule = rules::projection(2, 3, 1);
    auto table = arrow_scenario_table(rule, uniform_distribution(rule), BallotEmbedding::default_embedding(), 0);
    double total = 0;
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) {
            ASSERT_TRUE(table.correlation[k][l].has_value());
            EXPECT_NEAR(*table.correlation[k][l], 0.0, 1e-15);
            EXPECT_NEAR(table.weight[k][l], 1.0 / 9, 1e-15);
            total += table.weight[k][l];
        }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(arrow_scenario, point_distribution) {
    auto rule = rules::projection(2, 3, 1);
    ProfileSpace space(2, 3);
    std::vector<double> dist(space.size(), 0.0);
    // Voter 0: [0,1,2] (r2+), voter 1: [2,1,0] (r2-).
    dist[space.index_of(Profile{{LinearOrder({0, 1, 2}), LinearOrder({2, 1, 0})}})] = 1.0;
    auto table = arrow_scenario_table(rule, dist, BallotEmbedding::default_embedding(), 0);
    EXPECT_DOUBLE_EQ(*table.correlation[1][1], -1.0);
    EXPECT_DOUBLE_EQ(table.weight[1][1], 1.0);
    EXPECT_FALSE(table.correlation[0][0].has_value());

    dist[0] += 0.5;
    EXPECT_THROW((void)arrow_scenario_table(rule, dist, BallotEmbedding::default_embedding(), 0), ValidationError);
}

TEST(arrow_scenario, needs_three_alternatives) {
    auto rule = rules::projection(2, 2, 0);
    EXPECT_THROW((void)arrow_scenario_table(rule, uniform_distribution(rule), BallotEmbedding::default_embedding(), 0),
                 InvalidArgumentError);
}
