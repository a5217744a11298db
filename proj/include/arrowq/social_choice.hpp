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
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "arrowq/errors.hpp"
#include "arrowq/guards.hpp"
#include "arrowq/linear_order.hpp"

namespace arrowq {

/// One ballot per voter; index = voter id.
struct Profile {
    std::vector<LinearOrder> ballots;

    [[nodiscard]] std::size_t voters() const { return ballots.size(); }
    [[nodiscard]] std::size_t alternatives() const { return ballots.empty() ? 0 : ballots.front().size(); }

    void validate() const {
        if (ballots.empty()) {
            throw InvalidArgumentError("a profile needs at least one voter");
        }
        for (const auto& b : ballots) {
            if (b.size() != ballots.front().size()) {
                throw InvalidArgumentError("profile ballots range over different alternative sets");
            }
        }
    }

    [[nodiscard]] std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < ballots.size(); ++i) {
            if (i) s += ",";
            s += ballots[i].str();
        }
        return s + ")";
    }

    friend bool operator==(const Profile&, const Profile&) = default;
};

/// All (n!)^m profiles under a mixed-radix index: digit i is the rank of
/// voter i's ballot, voter 0 most significant. This is the same ordering the
/// voting circuit uses for its voter registers.
class ProfileSpace {
  public:
    ProfileSpace(std::size_t voters, std::size_t alternatives, const Guards& guards = {})
        : voters_(voters), alternatives_(alternatives), orders_(enumerate_orders(alternatives, guards)) {
        if (voters == 0) {
            throw InvalidArgumentError("at least one voter is required");
        }
        size_ = checked_pow(orders_.size(), voters, guards.max_profiles);
    }

    [[nodiscard]] std::size_t voters() const { return voters_; }
    [[nodiscard]] std::size_t alternatives() const { return alternatives_; }
    [[nodiscard]] std::uint64_t ballot_count() const { return orders_.size(); }
    [[nodiscard]] std::uint64_t size() const { return size_; }
    [[nodiscard]] const LinearOrder& order(std::uint64_t rank) const { return orders_.at(rank); }
    [[nodiscard]] const std::vector<LinearOrder>& orders() const { return orders_; }

    /// Ballot ranks of profile `index`, voter 0 first.
    void digits(std::uint64_t index, std::span<std::uint32_t> out) const {
        const std::uint64_t d = orders_.size();
        for (std::size_t i = voters_; i > 0; --i) {
            out[i - 1] = static_cast<std::uint32_t>(index % d);
            index /= d;
        }
    }

    [[nodiscard]] std::vector<std::uint32_t> digits(std::uint64_t index) const {
        std::vector<std::uint32_t> out(voters_);
        digits(index, out);
        return out;
    }

    [[nodiscard]] Profile at(std::uint64_t index) const {
        if (index >= size_) {
            throw InvalidArgumentError("profile index " + std::to_string(index) + " out of range");
        }
        Profile p;
        p.ballots.reserve(voters_);
        for (auto r : digits(index)) {
            p.ballots.push_back(orders_[r]);
        }
        return p;
    }

    [[nodiscard]] std::uint64_t index_of(const Profile& p) const {
        p.validate();
        if (p.voters() != voters_ || p.alternatives() != alternatives_) {
            throw InvalidArgumentError("profile shape " + std::to_string(p.voters()) + "x" +
                                       std::to_string(p.alternatives()) + " does not match space " +
                                       std::to_string(voters_) + "x" + std::to_string(alternatives_));
        }
        std::uint64_t idx = 0;
        for (const auto& b : p.ballots) {
            idx = idx * orders_.size() + b.rank();
        }
        return idx;
    }

  private:
    std::size_t voters_;
    std::size_t alternatives_;
    std::vector<LinearOrder> orders_;
    std::uint64_t size_ = 0;
};

/// Input vector of the pair (a,b) at a profile: bit i set iff voter i prefers a to b.
inline std::uint64_t pair_input(std::span<const LinearOrder* const> ballots, Alternative a, Alternative b) {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < ballots.size(); ++i) {
        if (ballots[i]->prefers(a, b)) {
            x |= std::uint64_t{1} << i;
        }
    }
    return x;
}

/// An IIA rule in decomposed form: for every pair a<b, a Boolean function of
/// the voters' pairwise preference bits deciding whether society ranks a over b.
class PairwiseAggregator {
  public:
    PairwiseAggregator(std::size_t voters, std::size_t alternatives, std::vector<std::vector<std::uint8_t>> tables)
        : voters_(voters), alternatives_(alternatives), tables_(std::move(tables)) {
        if (voters == 0 || voters > 20) {
            throw InvalidArgumentError("pairwise aggregator voter count must be in 1..20");
        }
        if (alternatives == 0) {
            throw InvalidArgumentError("pairwise aggregator needs at least one alternative");
        }
        if (tables_.size() != pair_count(alternatives)) {
            throw ValidationError("pairwise aggregator needs " + std::to_string(pair_count(alternatives)) +
                                  " truth tables, got " + std::to_string(tables_.size()));
        }
        const std::size_t inputs = std::size_t{1} << voters;
        for (const auto& t : tables_) {
            if (t.size() != inputs) {
                throw ValidationError("truth table must have 2^m = " + std::to_string(inputs) + " entries");
            }
            for (auto bit : t) {
                if (bit > 1) {
                    throw ValidationError("truth table entries must be 0 or 1");
                }
            }
        }
    }

    [[nodiscard]] std::size_t voters() const { return voters_; }
    [[nodiscard]] std::size_t alternatives() const { return alternatives_; }
    [[nodiscard]] const std::vector<std::uint8_t>& table(std::size_t pair) const { return tables_.at(pair); }
    [[nodiscard]] const std::vector<std::vector<std::uint8_t>>& tables() const { return tables_; }

    /// Social preference of a over b (a<b) given the voters' input vector.
    [[nodiscard]] bool decide(std::size_t pair, std::uint64_t input) const { return tables_[pair][input] != 0; }

    /// Outcome at a profile, or nullopt when the decided tournament has a cycle.
    [[nodiscard]] std::optional<LinearOrder> aggregate(std::span<const LinearOrder* const> ballots) const {
        std::vector<std::uint32_t> wins(alternatives_, 0);
        std::size_t pair = 0;
        for (Alternative a = 0; a < alternatives_; ++a) {
            for (Alternative b = a + 1; b < alternatives_; ++b, ++pair) {
                if (decide(pair, pair_input(ballots, a, b))) {
                    ++wins[a];
                } else {
                    ++wins[b];
                }
            }
        }
        // A tournament is transitive iff its win counts are exactly {0..n-1}.
        std::vector<Alternative> ranking(alternatives_, 0);
        std::vector<bool> seen(alternatives_, false);
        for (Alternative a = 0; a < alternatives_; ++a) {
            std::uint32_t pos = static_cast<std::uint32_t>(alternatives_ - 1 - wins[a]);
            if (seen[pos]) {
                return std::nullopt;
            }
            seen[pos] = true;
            ranking[pos] = a;
        }
        return LinearOrder(std::move(ranking));
    }

    /// Truth table packed as an integer, bit x = f(x). Only for 2^m <= 64.
    [[nodiscard]] std::uint64_t table_code(std::size_t pair) const {
        const auto& t = tables_.at(pair);
        if (t.size() > 64) {
            throw SizeLimitError("truth table too wide to pack");
        }
        std::uint64_t code = 0;
        for (std::size_t x = 0; x < t.size(); ++x) {
            code |= std::uint64_t{t[x]} << x;
        }
        return code;
    }

    friend bool operator==(const PairwiseAggregator&, const PairwiseAggregator&) = default;

  private:
    std::size_t voters_;
    std::size_t alternatives_;
    std::vector<std::vector<std::uint8_t>> tables_;
};

/// A voting rule r: profiles -> linear orders, stored either as an explicit
/// table over a (possibly partial) domain or as a pairwise aggregator.
class VotingRule {
  public:
    using Table = std::vector<std::optional<std::uint32_t>>;

    /// `outcomes[k]` is the outcome rank at profile index k, or nullopt if
    /// profile k is outside the rule's domain.
    static VotingRule from_table(std::size_t voters, std::size_t alternatives, Table outcomes,
                                 const Guards& guards = {}) {
        auto space = std::make_shared<const ProfileSpace>(voters, alternatives, guards);
        if (outcomes.size() != space->size()) {
            throw ValidationError("rule table has " + std::to_string(outcomes.size()) + " rows, expected " +
                                  std::to_string(space->size()));
        }
        for (const auto& o : outcomes) {
            if (o && *o >= space->ballot_count()) {
                throw ValidationError("rule table outcome rank " + std::to_string(*o) + " out of range");
            }
        }
        return VotingRule(std::move(space), std::move(outcomes));
    }

    static VotingRule from_pairwise(PairwiseAggregator aggregator, const Guards& guards = {}) {
        auto space = std::make_shared<const ProfileSpace>(aggregator.voters(), aggregator.alternatives(), guards);
        return VotingRule(std::move(space), std::move(aggregator));
    }

    /// Tabulates `fn` over every profile.
    static VotingRule tabulate(std::size_t voters, std::size_t alternatives,
                               const std::function<LinearOrder(const Profile&)>& fn, const Guards& guards = {}) {
        auto space = std::make_shared<const ProfileSpace>(voters, alternatives, guards);
        Table outcomes(space->size());
        for (std::uint64_t k = 0; k < space->size(); ++k) {
            LinearOrder o = fn(space->at(k));
            if (o.size() != alternatives) {
                throw InvalidArgumentError("rule function returned an order over the wrong alternatives");
            }
            outcomes[k] = static_cast<std::uint32_t>(o.rank());
        }
        return VotingRule(std::move(space), std::move(outcomes));
    }

    [[nodiscard]] std::size_t voters() const { return space_->voters(); }
    [[nodiscard]] std::size_t alternatives() const { return space_->alternatives(); }
    [[nodiscard]] const ProfileSpace& space() const { return *space_; }
    [[nodiscard]] bool is_pairwise() const { return std::holds_alternative<PairwiseAggregator>(repr_); }

    [[nodiscard]] const PairwiseAggregator& aggregator() const {
        if (!is_pairwise()) {
            throw PreconditionError("rule is not in pairwise form");
        }
        return std::get<PairwiseAggregator>(repr_);
    }

    [[nodiscard]] bool in_domain(std::uint64_t profile) const {
        if (profile >= space_->size()) return false;
        if (is_pairwise()) return true;
        return std::get<Table>(repr_)[profile].has_value();
    }

    [[nodiscard]] std::uint64_t domain_size() const {
        if (is_pairwise()) return space_->size();
        std::uint64_t count = 0;
        for (const auto& o : std::get<Table>(repr_)) count += o.has_value();
        return count;
    }

    /// Outcome rank at a profile index; nullopt outside the domain. Throws
    /// ValidationError if a pairwise rule produces a cyclic outcome there.
    [[nodiscard]] std::optional<std::uint32_t> outcome_rank(std::uint64_t profile) const {
        if (profile >= space_->size()) {
            return std::nullopt;
        }
        if (!is_pairwise()) {
            return std::get<Table>(repr_)[profile];
        }
        std::vector<std::uint32_t> digits = space_->digits(profile);
        std::vector<const LinearOrder*> ballots(digits.size());
        for (std::size_t i = 0; i < digits.size(); ++i) ballots[i] = &space_->order(digits[i]);
        auto out = std::get<PairwiseAggregator>(repr_).aggregate(ballots);
        if (!out) {
            throw ValidationError("pairwise rule yields an intransitive outcome at profile " +
                                  space_->at(profile).str());
        }
        return static_cast<std::uint32_t>(out->rank());
    }

    [[nodiscard]] LinearOrder apply(const Profile& p) const {
        auto r = outcome_rank(space_->index_of(p));
        if (!r) {
            throw PreconditionError("profile " + p.str() + " is outside the rule's domain");
        }
        return space_->order(*r);
    }

    /// The rule as an explicit table (pairwise rules are evaluated everywhere).
    [[nodiscard]] VotingRule to_table() const {
        if (!is_pairwise()) return *this;
        Table outcomes(space_->size());
        for (std::uint64_t k = 0; k < space_->size(); ++k) outcomes[k] = outcome_rank(k);
        return VotingRule(space_, std::move(outcomes));
    }

    [[nodiscard]] const Table& table() const {
        if (is_pairwise()) {
            throw PreconditionError("rule is in pairwise form; call to_table() first");
        }
        return std::get<Table>(repr_);
    }

  private:
    VotingRule(std::shared_ptr<const ProfileSpace> space, std::variant<Table, PairwiseAggregator> repr)
        : space_(std::move(space)), repr_(std::move(repr)) {}

    std::shared_ptr<const ProfileSpace> space_;
    std::variant<Table, PairwiseAggregator> repr_;
};

// ---------------------------------------------------------------------------
// Arrow predicates.

struct ParetoWitness {
    Profile profile;
    Alternative preferred;  // unanimously preferred by voters...
    Alternative other;      // ...but ranked below `other` by the rule
};

struct ParetoResult {
    bool holds = true;
    std::optional<ParetoWitness> witness;
};

/// Pareto: whenever every voter prefers a to b, so does the outcome.
inline ParetoResult check_pareto(const VotingRule& rule) {
    const auto& space = rule.space();
    const std::size_t n = rule.alternatives();
    std::vector<std::uint32_t> digits(rule.voters());
    for (std::uint64_t k = 0; k < space.size(); ++k) {
        auto out = rule.outcome_rank(k);
        if (!out) continue;
        const LinearOrder& outcome = space.order(*out);
        space.digits(k, digits);
        for (Alternative a = 0; a < n; ++a) {
            for (Alternative b = 0; b < n; ++b) {
                if (a == b) continue;
                bool unanimous = true;
                for (auto r : digits) {
                    if (!space.order(r).prefers(a, b)) {
                        unanimous = false;
                        break;
                    }
                }
                if (unanimous && !outcome.prefers(a, b)) {
                    return {false, ParetoWitness{space.at(k), a, b}};
                }
            }
        }
    }
    return {};
}

struct IiaWitness {
    Profile first;
    Profile second;
    Alternative a;
    Alternative b;
};

struct IiaResult {
    bool holds = true;
    std::optional<IiaWitness> witness;
};

/// IIA: profiles that agree on {a,b} for every voter yield outcomes that agree on {a,b}.
///
/// Profiles agreeing on {a,b} are exactly those with the same pair input
/// vector, so it suffices to check that the social bit is a function of it.
inline IiaResult check_iia(const VotingRule& rule) {
    if (rule.is_pairwise()) {
        return {};
    }
    const auto& space = rule.space();
    const auto pairs = all_pairs(rule.alternatives());
    // first_seen[pair][input] = (profile index, social bit)
    std::vector<std::unordered_map<std::uint64_t, std::pair<std::uint64_t, bool>>> first_seen(pairs.size());
    std::vector<std::uint32_t> digits(rule.voters());
    std::vector<const LinearOrder*> ballots(rule.voters());
    for (std::uint64_t k = 0; k < space.size(); ++k) {
        auto out = rule.outcome_rank(k);
        if (!out) continue;
        const LinearOrder& outcome = space.order(*out);
        space.digits(k, digits);
        for (std::size_t i = 0; i < digits.size(); ++i) ballots[i] = &space.order(digits[i]);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto [a, b] = pairs[p];
            const std::uint64_t input = pair_input(ballots, a, b);
            const bool social = outcome.prefers(a, b);
            auto [it, inserted] = first_seen[p].try_emplace(input, k, social);
            if (!inserted && it->second.second != social) {
                return {false, IiaWitness{space.at(it->second.first), space.at(k), a, b}};
            }
        }
    }
    return {};
}

/// Full-domain UD: the rule is defined on all (n!)^m profiles.
inline bool check_ud(const VotingRule& rule) { return rule.domain_size() == rule.space().size(); }

/// Triple-restricted UD: for every set of (up to) three alternatives, every
/// assignment of orders on that set to the voters is realized by some profile
/// in the domain.
inline bool check_ud_triples(const VotingRule& rule, const Guards& guards = {}) {
    const auto& space = rule.space();
    const std::size_t n = rule.alternatives();
    const std::size_t m = rule.voters();
    std::vector<std::vector<Alternative>> subsets;
    if (n < 3) {
        std::vector<Alternative> all(n);
        std::iota(all.begin(), all.end(), Alternative{0});
        subsets.push_back(all);
    } else {
        for (Alternative a = 0; a < n; ++a)
            for (Alternative b = a + 1; b < n; ++b)
                for (Alternative c = b + 1; c < n; ++c) subsets.push_back({a, b, c});
    }
    std::vector<std::uint32_t> digits(m);
    for (const auto& subset : subsets) {
        const std::uint64_t local = factorial(subset.size());
        const std::uint64_t needed = checked_pow(local, m, guards.max_profiles);
        std::set<std::uint64_t> seen;
        for (std::uint64_t k = 0; k < space.size() && seen.size() < needed; ++k) {
            if (!rule.in_domain(k)) continue;
            space.digits(k, digits);
            std::uint64_t key = 0;
            for (auto r : digits) {
                // Restrict the ballot to `subset`, then rank among the local orders.
                std::vector<Alternative> restricted;
                for (Alternative x : space.order(r).ranking()) {
                    auto it = std::find(subset.begin(), subset.end(), x);
                    if (it != subset.end()) restricted.push_back(static_cast<Alternative>(it - subset.begin()));
                }
                key = key * local + LinearOrder(std::move(restricted)).rank();
            }
            seen.insert(key);
        }
        if (seen.size() < needed) return false;
    }
    return true;
}

struct DictatorResult {
    std::optional<std::size_t> dictator;  // least dictatorial voter
    std::vector<bool> verdicts;           // verdicts[i]: voter i is a dictator
};

/// Voters whose ballot equals the outcome at every profile in the domain.
inline DictatorResult dictator_verdicts(const VotingRule& rule) {
    const auto& space = rule.space();
    DictatorResult res;
    res.verdicts.assign(rule.voters(), true);
    std::vector<std::uint32_t> digits(rule.voters());
    for (std::uint64_t k = 0; k < space.size(); ++k) {
        auto out = rule.outcome_rank(k);
        if (!out) continue;
        space.digits(k, digits);
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] != *out) res.verdicts[i] = false;
        }
    }
    for (std::size_t i = 0; i < res.verdicts.size(); ++i) {
        if (res.verdicts[i]) {
            res.dictator = i;
            break;
        }
    }
    return res;
}

inline std::optional<std::size_t> find_dictator(const VotingRule& rule) { return dictator_verdicts(rule).dictator; }

struct ArrowReport {
    ParetoResult pareto;
    IiaResult iia;
    bool ud = false;
    DictatorResult dictator;
};

inline ArrowReport arrow_report(const VotingRule& rule) {
    return {check_pareto(rule), check_iia(rule), check_ud(rule), dictator_verdicts(rule)};
}

// ---------------------------------------------------------------------------
// Exhaustive search for fair (UD + Pareto + IIA) rules.

namespace detail {

/// Enumerates pairwise aggregators whose outcome is a linear order on every
/// profile and which satisfy Pareto. Truth-table bits are the variables;
/// transitivity is a set of 3-literal clauses per alternative triple, and a
/// depth-first search with unit propagation visits assignments in
/// lexicographic order of the (pair-major) truth-table codes.
class FairRuleSearch {
  public:
    FairRuleSearch(std::size_t voters, std::size_t alternatives)
        : m_(voters), n_(alternatives), inputs_(std::size_t{1} << voters), pairs_(pair_count(alternatives)) {
        value_.assign(pairs_ * inputs_, kFree);
        occurs_.resize(value_.size());
        build_clauses();
    }

    std::vector<PairwiseAggregator> run() {
        for (std::size_t p = 0; p < pairs_; ++p) {
            // Unanimity forces the social bit (the Pareto condition).
            if (!assign(var(p, 0), 0) || !assign(var(p, inputs_ - 1), 1)) {
                return {};
            }
        }
        // Decision order: pair-major, truth-table bits from the highest input
        // down, 0 before 1. This yields solutions in ascending table-code order.
        for (std::size_t p = 0; p < pairs_; ++p)
            for (std::size_t x = inputs_; x > 0; --x) order_.push_back(var(p, x - 1));
        descend(0);
        return std::move(found_);
    }

  private:
    static constexpr std::int8_t kFree = -1;

    struct Literal {
        std::uint32_t var;
        std::uint8_t value;  // literal is true iff var == value
    };
    using Clause = std::array<Literal, 3>;

    [[nodiscard]] std::uint32_t var(std::size_t pair, std::size_t input) const {
        return static_cast<std::uint32_t>(pair * inputs_ + input);
    }

    void add_clause(Clause c) {
        const auto id = static_cast<std::uint32_t>(clauses_.size());
        clauses_.push_back(c);
        for (const auto& lit : c) occurs_[lit.var].push_back(id);
    }

    void build_clauses() {
        // Per-voter restriction of a ballot to a<b<c, as bits (a>b, b>c, a>c).
        // The two intransitive patterns (1,1,0) and (0,0,1) never occur.
        static constexpr std::array<std::array<std::uint8_t, 3>, 6> kPatterns{{
            {1, 1, 1}, {1, 0, 1}, {0, 1, 1}, {0, 1, 0}, {1, 0, 0}, {0, 0, 0},
        }};
        for (Alternative a = 0; a < n_; ++a) {
            for (Alternative b = a + 1; b < n_; ++b) {
                for (Alternative c = b + 1; c < n_; ++c) {
                    const std::size_t ab = pair_index(n_, a, b);
                    const std::size_t bc = pair_index(n_, b, c);
                    const std::size_t ac = pair_index(n_, a, c);
                    std::vector<std::size_t> choice(m_, 0);
                    while (true) {
                        std::uint64_t x_ab = 0, x_bc = 0, x_ac = 0;
                        for (std::size_t i = 0; i < m_; ++i) {
                            const auto& pat = kPatterns[choice[i]];
                            x_ab |= std::uint64_t{pat[0]} << i;
                            x_bc |= std::uint64_t{pat[1]} << i;
                            x_ac |= std::uint64_t{pat[2]} << i;
                        }
                        const auto u = var(ab, x_ab), v = var(bc, x_bc), w = var(ac, x_ac);
                        add_clause({Literal{u, 0}, Literal{v, 0}, Literal{w, 1}});  // forbid (1,1,0)
                        add_clause({Literal{u, 1}, Literal{v, 1}, Literal{w, 0}});  // forbid (0,0,1)
                        std::size_t i = 0;
                        while (i < m_ && ++choice[i] == kPatterns.size()) choice[i++] = 0;
                        if (i == m_) break;
                    }
                }
            }
        }
    }

    bool assign(std::uint32_t v, std::uint8_t val) {
        if (value_[v] != kFree) return value_[v] == val;
        value_[v] = static_cast<std::int8_t>(val);
        trail_.push_back(v);
        std::size_t head = trail_.size() - 1;
        while (head < trail_.size()) {
            const std::uint32_t cur = trail_[head++];
            for (std::uint32_t cid : occurs_[cur]) {
                const Clause& c = clauses_[cid];
                int free_count = 0;
                const Literal* free_lit = nullptr;
                bool satisfied = false;
                for (const auto& lit : c) {
                    const auto s = value_[lit.var];
                    if (s == kFree) {
                        ++free_count;
                        free_lit = &lit;
                    } else if (s == lit.value) {
                        satisfied = true;
                        break;
                    }
                }
                if (satisfied) continue;
                if (free_count == 0) return false;
                if (free_count == 1) {
                    value_[free_lit->var] = static_cast<std::int8_t>(free_lit->value);
                    trail_.push_back(free_lit->var);
                }
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            value_[trail_.back()] = kFree;
            trail_.pop_back();
        }
    }

    void descend(std::size_t pos) {
        while (pos < order_.size() && value_[order_[pos]] != kFree) ++pos;
        if (pos == order_.size()) {
            emit();
            return;
        }
        for (std::uint8_t val : {std::uint8_t{0}, std::uint8_t{1}}) {
            const std::size_t mark = trail_.size();
            if (assign(order_[pos], val)) descend(pos + 1);
            undo(mark);
        }
    }

    void emit() {
        std::vector<std::vector<std::uint8_t>> tables(pairs_, std::vector<std::uint8_t>(inputs_));
        for (std::size_t p = 0; p < pairs_; ++p)
            for (std::size_t x = 0; x < inputs_; ++x) tables[p][x] = static_cast<std::uint8_t>(value_[var(p, x)]);
        found_.emplace_back(m_, n_, std::move(tables));
    }

    std::size_t m_;
    std::size_t n_;
    std::size_t inputs_;
    std::size_t pairs_;
    std::vector<std::int8_t> value_;
    std::vector<Clause> clauses_;
    std::vector<std::vector<std::uint32_t>> occurs_;
    std::vector<std::uint32_t> trail_;
    std::vector<std::uint32_t> order_;
    std::vector<PairwiseAggregator> found_;
};

inline void check_fair_search_guards(std::size_t m, std::size_t n, const Guards& guards) {
    if (m < 1 || n < 1) {
        throw InvalidArgumentError("need at least one voter and one alternative");
    }
    if (m >= 63 || (std::uint64_t{1} << m) > guards.max_pair_inputs) {
        throw SizeLimitError("fair-rule search: 2^m with m=" + std::to_string(m) + " exceeds guard " +
                             std::to_string(guards.max_pair_inputs));
    }
    if (n > guards.max_pairwise_alternatives) {
        throw SizeLimitError("fair-rule search: n=" + std::to_string(n) + " exceeds guard " +
                             std::to_string(guards.max_pairwise_alternatives));
    }
}

}  // namespace detail

/// Every rule satisfying UD, Pareto and IIA for m voters and n alternatives,
/// in lexicographic order of their pairwise truth tables.
inline std::vector<VotingRule> enumerate_fair_rules(std::size_t m, std::size_t n, const Guards& guards = {}) {
    detail::check_fair_search_guards(m, n, guards);
    std::vector<VotingRule> rules;
    for (auto& agg : detail::FairRuleSearch(m, n).run()) {
        rules.push_back(VotingRule::from_pairwise(std::move(agg), guards));
    }
    return rules;
}

struct ArrowVerification {
    std::size_t voters = 0;
    std::size_t alternatives = 0;
    std::size_t fair_rule_count = 0;
    bool all_dictatorial = false;
    std::vector<std::optional<std::size_t>> dictators;  // one entry per fair rule
    std::vector<VotingRule> rules;
};

inline ArrowVerification verify_arrow(std::size_t m, std::size_t n, const Guards& guards = {}) {
    ArrowVerification v;
    v.voters = m;
    v.alternatives = n;
    v.rules = enumerate_fair_rules(m, n, guards);
    v.fair_rule_count = v.rules.size();
    v.all_dictatorial = true;
    for (const auto& r : v.rules) {
        v.dictators.push_back(find_dictator(r));
        v.all_dictatorial = v.all_dictatorial && v.dictators.back().has_value();
    }
    return v;
}

// ---------------------------------------------------------------------------
// Reversible circuit form.

/// Basis permutation of the voting circuit on (ancilla, voter 1..m), each
/// register of dimension `dimension`, ancilla most significant.
struct CircuitTable {
    std::uint64_t dimension = 0;
    std::size_t registers = 0;
    std::vector<std::uint64_t> image;  // image[input basis index] = output basis index
};

/// (a, p^1..p^m) -> ((a + rank r(p)) mod d, p^1..p^m). At a = 0 the ancilla
/// receives the outcome. Voter register values >= n! carry no ballot and pass
/// through unchanged.
inline CircuitTable classical_circuit_table(const VotingRule& rule, std::uint64_t dimension = 0,
                                            const Guards& guards = {}) {
    const auto& space = rule.space();
    if (dimension == 0) dimension = space.ballot_count();
    if (dimension < space.ballot_count()) {
        throw InvalidArgumentError("register dimension " + std::to_string(dimension) + " is below n! = " +
                                   std::to_string(space.ballot_count()));
    }
    const std::size_t m = rule.voters();
    const std::uint64_t voter_states = checked_pow(dimension, m, guards.max_profiles);
    const std::uint64_t total = checked_pow(dimension, m + 1, guards.max_profiles);
    CircuitTable t{dimension, m + 1, std::vector<std::uint64_t>(total)};
    const std::uint64_t nb = space.ballot_count();
    for (std::uint64_t v = 0; v < voter_states; ++v) {
        // Decode voter registers; ballot-valued iff every digit < n!.
        std::uint64_t rest = v;
        std::uint64_t profile = 0;
        std::uint64_t scale = 1;
        bool ballots_only = true;
        for (std::size_t i = 0; i < m; ++i) {
            const std::uint64_t digit = rest % dimension;
            rest /= dimension;
            ballots_only = ballots_only && digit < nb;
            profile += digit * scale;
            scale *= nb;
        }
        std::uint64_t shift = 0;
        if (ballots_only) {
            auto out = rule.outcome_rank(profile);
            if (!out) {
                throw PreconditionError("circuit needs a total rule; profile " + space.at(profile).str() +
                                        " is undefined");
            }
            shift = *out;
        }
        for (std::uint64_t a = 0; a < dimension; ++a) {
            t.image[a * voter_states + v] = ((a + shift) % dimension) * voter_states + v;
        }
    }
    return t;
}

inline bool is_bijection(const CircuitTable& t) {
    std::vector<bool> hit(t.image.size(), false);
    for (auto out : t.image) {
        if (out >= hit.size() || hit[out]) return false;
        hit[out] = true;
    }
    return true;
}

}  // namespace arrowq
