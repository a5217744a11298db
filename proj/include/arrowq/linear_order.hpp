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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "arrowq/errors.hpp"
#include "arrowq/guards.hpp"

namespace arrowq {

using Alternative = std::uint32_t;

/// n! for n <= 20; larger values overflow 64 bits and are rejected.
inline std::uint64_t factorial(std::size_t n) {
    if (n > 20) {
        throw SizeLimitError("factorial(" + std::to_string(n) + ") overflows 64 bits");
    }
    std::uint64_t r = 1;
    for (std::size_t k = 2; k <= n; ++k) {
        r *= k;
    }
    return r;
}

/// Checked integer power; throws SizeLimitError on overflow past `limit`.
inline std::uint64_t checked_pow(std::uint64_t base, std::size_t exponent, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::size_t k = 0; k < exponent; ++k) {
        if (base != 0 && r > limit / base) {
            throw SizeLimitError(std::to_string(base) + "^" + std::to_string(exponent) + " exceeds limit " +
                                 std::to_string(limit));
        }
        r *= base;
    }
    if (r > limit) {
        throw SizeLimitError(std::to_string(base) + "^" + std::to_string(exponent) + " exceeds limit " +
                             std::to_string(limit));
    }
    return r;
}

/// A ballot: strict ranking of alternatives 0..n-1, most preferred first.
///
/// The lexicographic rank of the ranking is the canonical ballot index used
/// as the basis label of the ballot Hilbert space and as the profile digit.
class LinearOrder {
  public:
    LinearOrder() = default;

    explicit LinearOrder(std::vector<Alternative> ranking) : ranking_(std::move(ranking)) {
        if (ranking_.empty()) {
            throw InvalidArgumentError("a linear order needs at least one alternative");
        }
        if (ranking_.size() > 20) {
            throw SizeLimitError("linear orders are limited to 20 alternatives");
        }
        position_.assign(ranking_.size(), kUnset);
        for (std::size_t pos = 0; pos < ranking_.size(); ++pos) {
            Alternative a = ranking_[pos];
            if (a >= ranking_.size() || position_[a] != kUnset) {
                throw InvalidArgumentError("ranking is not a permutation of 0.." + std::to_string(ranking_.size() - 1));
            }
            position_[a] = static_cast<std::uint32_t>(pos);
        }
    }

    /// Inverse of rank(): the order at lexicographic index `rank` among n! orders.
    static LinearOrder from_rank(std::size_t n, std::uint64_t rank) {
        std::uint64_t total = factorial(n);
        if (n == 0 || rank >= total) {
            throw InvalidArgumentError("rank " + std::to_string(rank) + " out of range for n=" + std::to_string(n));
        }
        std::vector<Alternative> pool(n);
        std::iota(pool.begin(), pool.end(), Alternative{0});
        std::vector<Alternative> ranking;
        ranking.reserve(n);
        for (std::size_t i = n; i > 0; --i) {
            std::uint64_t block = factorial(i - 1);
            std::size_t digit = static_cast<std::size_t>(rank / block);
            rank %= block;
            ranking.push_back(pool[digit]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
        }
        return LinearOrder(std::move(ranking));
    }

    /// Lexicographic rank via the Lehmer code.
    [[nodiscard]] std::uint64_t rank() const {
        const std::size_t n = ranking_.size();
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t smaller_after = 0;
            for (std::size_t j = i + 1; j < n; ++j) {
                smaller_after += ranking_[j] < ranking_[i];
            }
            r += smaller_after * factorial(n - 1 - i);
        }
        return r;
    }

    [[nodiscard]] std::size_t size() const { return ranking_.size(); }
    [[nodiscard]] std::span<const Alternative> ranking() const { return ranking_; }
    [[nodiscard]] Alternative operator[](std::size_t pos) const { return ranking_[pos]; }

    [[nodiscard]] std::size_t position(Alternative a) const {
        check_alternative(a);
        return position_[a];
    }

    /// True iff `a` is ranked above `b`.
    [[nodiscard]] bool prefers(Alternative a, Alternative b) const {
        check_alternative(a);
        check_alternative(b);
        if (a == b) {
            throw InvalidArgumentError("prefers() needs two distinct alternatives, got " + std::to_string(a) + " twice");
        }
        return position_[a] < position_[b];
    }

    [[nodiscard]] LinearOrder reversed() const {
        return LinearOrder(std::vector<Alternative>(ranking_.rbegin(), ranking_.rend()));
    }

    [[nodiscard]] std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < ranking_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(ranking_[i]);
        }
        return s + "]";
    }

    friend bool operator==(const LinearOrder& x, const LinearOrder& y) { return x.ranking_ == y.ranking_; }
    friend auto operator<=>(const LinearOrder& x, const LinearOrder& y) { return x.ranking_ <=> y.ranking_; }

  private:
    static constexpr std::uint32_t kUnset = ~std::uint32_t{0};

    void check_alternative(Alternative a) const {
        if (a >= ranking_.size()) {
            throw InvalidArgumentError("alternative " + std::to_string(a) + " out of range for n=" +
                                       std::to_string(ranking_.size()));
        }
    }

    std::vector<Alternative> ranking_;
    std::vector<std::uint32_t> position_;
};

inline bool prefers(const LinearOrder& order, Alternative a, Alternative b) { return order.prefers(a, b); }

/// All n! orders in lexicographic order; element k has rank k.
inline std::vector<LinearOrder> enumerate_orders(std::size_t n, const Guards& guards = {}) {
    if (n < 1 || n > guards.max_alternatives) {
        throw SizeLimitError("enumerate_orders: n=" + std::to_string(n) + " outside 1.." +
                             std::to_string(guards.max_alternatives));
    }
    std::vector<Alternative> ranking(n);
    std::iota(ranking.begin(), ranking.end(), Alternative{0});
    std::vector<LinearOrder> out;
    out.reserve(factorial(n));
    do {
        out.emplace_back(ranking);
    } while (std::next_permutation(ranking.begin(), ranking.end()));
    return out;
}

/// Index of the unordered pair {a,b}, a<b, in lexicographic pair order
/// (0,1),(0,2),...,(0,n-1),(1,2),...
inline std::size_t pair_index(std::size_t n, Alternative a, Alternative b) {
    if (a > b) std::swap(a, b);
    if (a == b || b >= n) {
        throw InvalidArgumentError("invalid alternative pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Pairs (a,b), a<b, in pair_index order.
inline std::vector<std::pair<Alternative, Alternative>> all_pairs(std::size_t n) {
    std::vector<std::pair<Alternative, Alternative>> out;
    out.reserve(pair_count(n));
    for (Alternative a = 0; a < n; ++a) {
        for (Alternative b = a + 1; b < n; ++b) {
            out.emplace_back(a, b);
        }
    }
    return out;
}

}  // namespace arrowq
