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

#include "arrowq/linear_order.hpp"

#include <random>
#include <set>

#include "gtest/gtest.h"

using namespace arrowq;

TEST(linear_order, enumerate_small) {
    auto one = enumerate_orders(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], LinearOrder({0}));

    auto two = enumerate_orders(2);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0], LinearOrder({0, 1}));
    EXPECT_EQ(two[1], LinearOrder({1, 0}));

    auto three = enumerate_orders(3);
    ASSERT_EQ(three.size(), 6u);
    EXPECT_EQ(three.front(), LinearOrder({0, 1, 2}));
    EXPECT_EQ(three.back(), LinearOrder({2, 1, 0}));
}

TEST(linear_order, enumeration_is_lexicographic_and_rank_indexed) {
    for (std::size_t n = 1; n <= 7; ++n) {
        auto orders = enumerate_orders(n);
        ASSERT_EQ(orders.size(), factorial(n));
        for (std::size_t k = 0; k < orders.size(); ++k) {
            EXPECT_EQ(orders[k].rank(), k);
            EXPECT_EQ(LinearOrder::from_rank(n, k), orders[k]);
            if (k > 0) {
                EXPECT_LT(orders[k - 1], orders[k]);
            }
        }
    }
}

TEST(linear_order, rank_round_trip_random_large) {
    std::mt19937_64 rng(7);
    for (std::size_t n : {9u, 12u, 20u}) {
        for (int trial = 0; trial < 200; ++trial) {
            const std::uint64_t r = rng() % factorial(n);
            EXPECT_EQ(LinearOrder::from_rank(n, r).rank(), r);
        }
    }
}

TEST(linear_order, size_guard) {
    EXPECT_THROW(enumerate_orders(0), SizeLimitError);
    EXPECT_THROW(enumerate_orders(9), SizeLimitError);
    EXPECT_NO_THROW(enumerate_orders(9, Guards{}.scaled(2)));
}

TEST(linear_order, prefers) {
    EXPECT_TRUE(prefers(LinearOrder({0, 1, 2}), 0, 2));
    EXPECT_FALSE(prefers(LinearOrder({2, 1, 0}), 0, 2));
    EXPECT_THROW((void)prefers(LinearOrder({0, 1, 2}), 1, 1), InvalidArgumentError);
    EXPECT_THROW((void)prefers(LinearOrder({0, 1, 2}), 0, 3), InvalidArgumentError);
}

TEST(linear_order, prefers_is_antisymmetric) {
    for (const auto& o : enumerate_orders(3)) {
        for (auto [a, b] : all_pairs(3)) {
            EXPECT_NE(o.prefers(a, b), o.prefers(b, a)) << o.str();
        }
    }
}

TEST(linear_order, rejects_non_permutations) {
    EXPECT_THROW(LinearOrder({0, 0, 1}), InvalidArgumentError);
    EXPECT_THROW(LinearOrder({1, 2, 3}), InvalidArgumentError);
    EXPECT_THROW(LinearOrder(std::vector<Alternative>{}), InvalidArgumentError);
    EXPECT_THROW(LinearOrder::from_rank(3, 6), InvalidArgumentError);
}

TEST(linear_order, pair_index_matches_all_pairs) {
    for (std::size_t n = 2; n <= 6; ++n) {
        auto pairs = all_pairs(n);
        ASSERT_EQ(pairs.size(), pair_count(n));
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            EXPECT_EQ(pair_index(n, pairs[k].first, pairs[k].second), k);
            EXPECT_EQ(pair_index(n, pairs[k].second, pairs[k].first), k);
        }
    }
}

TEST(linear_order, factorial_overflow_guard) {
    EXPECT_EQ(factorial(20), 2432902008176640000ull);
    EXPECT_THROW(factorial(21), SizeLimitError);
}
