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
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "arrowq/ballot_hilbert.hpp"
#include "arrowq/errors.hpp"
#include "arrowq/guards.hpp"
#include "arrowq/social_choice.hpp"

namespace arrowq::bell {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Unit measurement direction on the Bloch sphere.
class BlochAxis {
  public:
    static constexpr double kTolerance = 1e-12;

    explicit BlochAxis(const Vec3& v) : v_(v) {
        if (std::abs(std::sqrt(dot(v, v)) - 1.0) > kTolerance) {
            throw InvalidArgumentError("Bloch axis must have unit norm");
        }
    }

    static BlochAxis normalized(const Vec3& v) {
        const double n = std::sqrt(dot(v, v));
        if (!(n > 1e-300)) throw InvalidArgumentError("cannot normalize a zero axis");
        return BlochAxis(Vec3{v[0] / n, v[1] / n, v[2] / n});
    }

    /// Polar angle from +z, azimuth from +x.
    static BlochAxis spherical(double theta, double phi) {
        return normalized(Vec3{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
    }

    /// Axis in the x-z plane at angle `alpha` from +z toward +x.
    static BlochAxis in_xz_plane(double alpha) { return spherical(alpha, 0.0); }

    [[nodiscard]] const Vec3& vec() const { return v_; }
    [[nodiscard]] double polar() const { return std::acos(std::clamp(v_[2], -1.0, 1.0)); }
    [[nodiscard]] double azimuth() const { return std::atan2(v_[1], v_[0]); }

    friend bool operator==(const BlochAxis&, const BlochAxis&) = default;

  private:
    Vec3 v_;
};

using Matrix2 = std::array<Complex, 4>;  // row-major

/// sigma . n
inline Matrix2 spin_observable(const BlochAxis& axis) {
    const auto& n = axis.vec();
    return {Complex{n[2], 0}, Complex{n[0], -n[1]}, Complex{n[0], n[1]}, Complex{-n[2], 0}};
}

/// Projector on the +1 outcome: (I + sigma . n) / 2.
inline Matrix2 plus_projector(const BlochAxis& axis) {
    Matrix2 s = spin_observable(axis);
    return {(1.0 + s[0]) / 2.0, s[1] / 2.0, s[2] / 2.0, (1.0 + s[3]) / 2.0};
}

inline constexpr Matrix2 kIdentity2{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0}};

inline void check_two_qubit(const PureState& state) {
    if (state.local_dimension() != 2 || state.registers() != 2) {
        throw InvalidArgumentError("expected a two-qubit state");
    }
}

/// <psi| A (x) B |psi>, real part (A, B Hermitian).
inline double expectation(const PureState& state, const Matrix2& alice, const Matrix2& bob) {
    check_two_qubit(state);
    Complex s = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    s += std::conj(state[2 * i + j]) * alice[2 * i + k] * bob[2 * j + l] * state[2 * k + l];
    return s.real();
}

/// (|01> - |10>) / sqrt 2
inline PureState singlet() {
    const double h = 1.0 / std::numbers::sqrt2;
    return PureState(2, 2, {0.0, h, -h, 0.0});
}

/// E(a,b): expected product of the +-1 spin outcomes along a and b.
inline double measurement_correlation(const PureState& state, const BlochAxis& a, const BlochAxis& b) {
    return expectation(state, spin_observable(a), spin_observable(b));
}

// ---------------------------------------------------------------------------
// Bell expressions.

/// A linear functional over correlators E(i,j), joint probabilities
/// P(+,+|i,j) and marginals P_A(+|i), P_B(+|j).
struct BellExpression {
    struct Pair {
        std::size_t alice;
        std::size_t bob;
        double coefficient;
    };
    struct Single {
        std::size_t setting;
        double coefficient;
    };

    std::string name;
    std::size_t alice_settings = 0;
    std::size_t bob_settings = 0;
    std::vector<Pair> correlators;
    std::vector<Pair> joint_plus;
    std::vector<Single> alice_plus;
    std::vector<Single> bob_plus;
    double constant = 0.0;
    // Quantum (Tsirelson) range, used only as a sanity ceiling.
    double quantum_lower = 0.0;
    double quantum_upper = 0.0;

    /// S = E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2)
    static BellExpression chsh() {
        BellExpression e;
        e.name = "CHSH";
        e.alice_settings = e.bob_settings = 2;
        e.correlators = {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, -1}};
        e.quantum_lower = -2 * std::numbers::sqrt2;
        e.quantum_upper = 2 * std::numbers::sqrt2;
        return e;
    }

    /// CH = P(a1,b1) + P(a2,b1) + P(a2,b2) - P(a1,b2) - P(a2) - P(b1)
    static BellExpression ch() {
        BellExpression e;
        e.name = "CH";
        e.alice_settings = e.bob_settings = 2;
        e.joint_plus = {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, -1}};
        e.alice_plus = {{1, -1}};
        e.bob_plus = {{0, -1}};
        e.quantum_lower = (-2 * std::numbers::sqrt2 - 2) / 4;
        e.quantum_upper = (2 * std::numbers::sqrt2 - 2) / 4;
        return e;
    }

    /// Bare correlator E(a1,b1).
    static BellExpression correlator() {
        BellExpression e;
        e.name = "E";
        e.alice_settings = e.bob_settings = 1;
        e.correlators = {{0, 0, 1}};
        e.quantum_lower = -1;
        e.quantum_upper = 1;
        return e;
    }

    /// Value on a local deterministic strategy: outcome (+1/-1) per setting.
    [[nodiscard]] double evaluate_deterministic(std::span<const int> alice, std::span<const int> bob) const {
        check_shape(alice.size(), bob.size());
        auto plus = [](int o) { return o > 0 ? 1.0 : 0.0; };
        double v = constant;
        for (const auto& t : correlators) v += t.coefficient * alice[t.alice] * bob[t.bob];
        for (const auto& t : joint_plus) v += t.coefficient * plus(alice[t.alice]) * plus(bob[t.bob]);
        for (const auto& t : alice_plus) v += t.coefficient * plus(alice[t.setting]);
        for (const auto& t : bob_plus) v += t.coefficient * plus(bob[t.setting]);
        return v;
    }

    [[nodiscard]] double evaluate_quantum(const PureState& state, std::span<const BlochAxis> alice,
                                          std::span<const BlochAxis> bob) const {
        check_shape(alice.size(), bob.size());
        double v = constant;
        for (const auto& t : correlators)
            v += t.coefficient * measurement_correlation(state, alice[t.alice], bob[t.bob]);
        for (const auto& t : joint_plus)
            v += t.coefficient * expectation(state, plus_projector(alice[t.alice]), plus_projector(bob[t.bob]));
        for (const auto& t : alice_plus)
            v += t.coefficient * expectation(state, plus_projector(alice[t.setting]), kIdentity2);
        for (const auto& t : bob_plus)
            v += t.coefficient * expectation(state, kIdentity2, plus_projector(bob[t.setting]));
        return v;
    }

  private:
    void check_shape(std::size_t na, std::size_t nb) const {
        if (na != alice_settings || nb != bob_settings) {
            throw InvalidArgumentError(name + " needs " + std::to_string(alice_settings) + "+" +
                                       std::to_string(bob_settings) + " settings, got " + std::to_string(na) + "+" +
                                       std::to_string(nb));
        }
    }
};

struct Bounds {
    double lower = 0;
    double upper = 0;
};

/// Exact extrema of `expr` over all 2^(sA+sB) local deterministic strategies.
inline Bounds classical_bound(const BellExpression& expr, const Guards& guards = {}) {
    if (expr.alice_settings > guards.max_bell_settings || expr.bob_settings > guards.max_bell_settings) {
        throw SizeLimitError("classical bound enumeration is limited to " +
                             std::to_string(guards.max_bell_settings) + " settings per party");
    }
    const std::size_t sa = expr.alice_settings, sb = expr.bob_settings;
    std::vector<int> a(sa), b(sb);
    Bounds out{INFINITY, -INFINITY};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (sa + sb)); ++mask) {
        for (std::size_t i = 0; i < sa; ++i) a[i] = (mask >> i) & 1 ? 1 : -1;
        for (std::size_t j = 0; j < sb; ++j) b[j] = (mask >> (sa + j)) & 1 ? 1 : -1;
        const double v = expr.evaluate_deterministic(a, b);
        out.lower = std::min(out.lower, v);
        out.upper = std::max(out.upper, v);
    }
    return out;
}

struct InequalityResult {
    std::string name;
    Bounds classical;
    double value = 0;
    bool violated = false;
    std::vector<BlochAxis> alice;
    std::vector<BlochAxis> bob;
};

inline constexpr double kViolationTolerance = 1e-9;

inline InequalityResult evaluate(const BellExpression& expr, const PureState& state, std::span<const BlochAxis> alice,
                                 std::span<const BlochAxis> bob, const Guards& guards = {}) {
    InequalityResult r;
    r.name = expr.name;
    r.classical = classical_bound(expr, guards);
    r.value = expr.evaluate_quantum(state, alice, bob);
    r.violated = r.value > r.classical.upper + kViolationTolerance || r.value < r.classical.lower - kViolationTolerance;
    r.alice.assign(alice.begin(), alice.end());
    r.bob.assign(bob.begin(), bob.end());
    return r;
}

inline InequalityResult chsh_value(const PureState& state, const BlochAxis& a1, const BlochAxis& a2,
                                   const BlochAxis& b1, const BlochAxis& b2) {
    const std::array<BlochAxis, 2> alice{a1, a2};
    const std::array<BlochAxis, 2> bob{b1, b2};
    return evaluate(BellExpression::chsh(), state, alice, bob);
}

/// CH with +1-outcome probabilities. On the same state and axes,
/// CH(a1,a2,b1,b2) = (S(a2,a1,b1,b2) - 2) / 4: the CHSH combination with the
/// same sign pattern has Alice's settings in the opposite order.
inline InequalityResult ch_value(const PureState& state, const BlochAxis& a1, const BlochAxis& a2,
                                 const BlochAxis& b1, const BlochAxis& b2) {
    const std::array<BlochAxis, 2> alice{a1, a2};
    const std::array<BlochAxis, 2> bob{b1, b2};
    return evaluate(BellExpression::ch(), state, alice, bob);
}

struct AxisSet {
    std::vector<BlochAxis> alice;
    std::vector<BlochAxis> bob;
};

/// Coplanar settings at which the singlet reaches S = +2 sqrt 2.
inline AxisSet chsh_optimal_singlet_axes() {
    const double q = std::numbers::pi / 4;
    return {{BlochAxis::in_xz_plane(0), BlochAxis::in_xz_plane(2 * q)},
            {BlochAxis::in_xz_plane(5 * q), BlochAxis::in_xz_plane(3 * q)}};
}

/// Uniform random axes from a seeded mt19937_64.
inline std::vector<BlochAxis> random_axes(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<BlochAxis> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double z = 2 * unit() - 1;
        const double phi = 2 * std::numbers::pi * unit();
        const double r = std::sqrt(std::max(0.0, 1 - z * z));
        out.push_back(BlochAxis::normalized(Vec3{r * std::cos(phi), r * std::sin(phi), z}));
    }
    return out;
}

struct OptimizationResult {
    AxisSet axes;
    double value = 0;
    double initial_value = 0;
    std::size_t evaluations = 0;
};

/// Derivative-free ascent on the axes' spherical angles: coordinate steps of
/// +-h, first improvement accepted, h halved after a sweep with no gain.
/// Stops when `budget` evaluations are spent or h underflows.
inline OptimizationResult maximize_violation(const BellExpression& expr, const PureState& state,
                                             const AxisSet& initial, std::size_t budget) {
    if (budget < 1) throw InvalidArgumentError("optimization budget must be at least 1");
    const std::size_t na = initial.alice.size(), nb = initial.bob.size();
    if (na != expr.alice_settings || nb != expr.bob_settings) {
        throw InvalidArgumentError("initial axes do not match the expression's settings");
    }
    std::vector<double> params;
    for (const auto* side : {&initial.alice, &initial.bob}) {
        for (const auto& ax : *side) {
            params.push_back(ax.polar());
            params.push_back(ax.azimuth());
        }
    }
    auto decode = [&](const std::vector<double>& p) {
        AxisSet s;
        for (std::size_t k = 0; k < na; ++k) s.alice.push_back(BlochAxis::spherical(p[2 * k], p[2 * k + 1]));
        for (std::size_t k = 0; k < nb; ++k)
            s.bob.push_back(BlochAxis::spherical(p[2 * (na + k)], p[2 * (na + k) + 1]));
        return s;
    };

    OptimizationResult res;
    res.axes = initial;
    res.value = res.initial_value = expr.evaluate_quantum(state, initial.alice, initial.bob);
    res.evaluations = 1;
    double step = 0.5;
    while (res.evaluations < budget && step > 1e-15) {
        bool improved = false;
        for (std::size_t c = 0; c < params.size() && res.evaluations < budget; ++c) {
            for (double dir : {1.0, -1.0}) {
                if (res.evaluations >= budget) break;
                auto trial = params;
                trial[c] += dir * step;
                AxisSet axes = decode(trial);
                const double v = expr.evaluate_quantum(state, axes.alice, axes.bob);
                ++res.evaluations;
                if (v > res.value) {
                    params = std::move(trial);
                    res.value = v;
                    res.axes = std::move(axes);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Ballot embedding and the classical Arrow-scenario correlations.

/// A ballot's place on the embedding: spin axis 1..3 and sign +1/-1.
struct AxisSign {
    int axis = 0;
    int sign = 0;
    friend bool operator==(const AxisSign&, const AxisSign&) = default;
};

/// The six ballots of three alternatives as +-r_k spin states. Reversing a
/// ballot keeps its axis and flips its sign.
class BallotEmbedding {
  public:
    BallotEmbedding(std::array<AxisSign, 6> by_rank, std::array<BlochAxis, 3> axes)
        : by_rank_(by_rank), axes_(axes) {
        std::array<bool, 6> hit{};
        for (std::uint64_t r = 0; r < 6; ++r) {
            const auto& e = by_rank_[r];
            if (e.axis < 1 || e.axis > 3 || (e.sign != 1 && e.sign != -1)) {
                throw ValidationError("embedding entries must be (axis 1..3, sign +-1)");
            }
            const std::size_t slot = static_cast<std::size_t>(2 * (e.axis - 1) + (e.sign > 0 ? 0 : 1));
            if (hit[slot]) throw ValidationError("embedding is not a bijection onto {1,2,3}x{+,-}");
            hit[slot] = true;
            const auto rev = by_rank_[LinearOrder::from_rank(3, r).reversed().rank()];
            if (rev.axis != e.axis || rev.sign != -e.sign) {
                throw ValidationError("embedding must map reversed ballots to the opposite sign of the same axis");
            }
        }
    }

    /// a1a2a3 -> r2+, a3a2a1 -> r2-, a3a1a2 -> r1+, a2a1a3 -> r1-,
    /// a2a3a1 -> r3+, a1a3a2 -> r3-, with r1..r3 the coordinate axes x, y, z.
    static BallotEmbedding default_embedding() {
        std::array<AxisSign, 6> by_rank{};
        auto put = [&](std::vector<Alternative> ranking, int axis, int sign) {
            by_rank[LinearOrder(std::move(ranking)).rank()] = AxisSign{axis, sign};
        };
        put({0, 1, 2}, 2, +1);
        put({2, 1, 0}, 2, -1);
        put({2, 0, 1}, 1, +1);
        put({1, 0, 2}, 1, -1);
        put({1, 2, 0}, 3, +1);
        put({0, 2, 1}, 3, -1);
        return BallotEmbedding(by_rank, {BlochAxis(Vec3{1, 0, 0}), BlochAxis(Vec3{0, 1, 0}), BlochAxis(Vec3{0, 0, 1})});
    }

    [[nodiscard]] AxisSign of(const LinearOrder& ballot) const {
        if (ballot.size() != 3) throw InvalidArgumentError("the embedding covers ballots of three alternatives");
        return by_rank_[ballot.rank()];
    }

    [[nodiscard]] LinearOrder ballot_for(AxisSign s) const {
        for (std::uint64_t r = 0; r < 6; ++r)
            if (by_rank_[r] == s) return LinearOrder::from_rank(3, r);
        throw InvalidArgumentError("no ballot is embedded at axis " + std::to_string(s.axis) + " sign " +
                                   std::to_string(s.sign));
    }

    [[nodiscard]] const BlochAxis& axis(int k) const {
        if (k < 1 || k > 3) throw InvalidArgumentError("axis index must be 1..3");
        return axes_[static_cast<std::size_t>(k - 1)];
    }

    /// Bloch vector sign * r_axis of a ballot.
    [[nodiscard]] Vec3 spin_direction(const LinearOrder& ballot) const {
        const auto s = of(ballot);
        const auto& v = axis(s.axis).vec();
        return {s.sign * v[0], s.sign * v[1], s.sign * v[2]};
    }

  private:
    std::array<AxisSign, 6> by_rank_;
    std::array<BlochAxis, 3> axes_;
};

/// Alice reads the watched voter's ballot, Bob the rule's outcome, both as
/// (axis, sign) through the embedding. correlation[k][l] = E[sA sB | axes k,l];
/// entries for axis pairs of zero probability are absent.
struct CorrelationTable {
    std::array<std::array<std::optional<double>, 3>, 3> correlation;
    std::array<std::array<double, 3>, 3> weight{};  // P(axis pair)
    std::array<std::optional<double>, 3> alice_plus;  // P(sA = +1 | axis k)
    std::array<std::optional<double>, 3> bob_plus;
};

inline CorrelationTable arrow_scenario_table(const VotingRule& rule, std::span<const double> distribution,
                                             const BallotEmbedding& embedding, std::size_t watched_voter) {
    if (rule.alternatives() != 3) throw InvalidArgumentError("the Arrow scenario table needs n = 3");
    if (watched_voter >= rule.voters()) throw InvalidArgumentError("watched voter out of range");
    const auto& space = rule.space();
    if (distribution.size() != space.size()) {
        throw ValidationError("distribution has " + std::to_string(distribution.size()) + " weights for " +
                              std::to_string(space.size()) + " profiles");
    }
    double total = 0;
    for (double w : distribution) {
        if (!(w >= 0) || !std::isfinite(w)) throw ValidationError("distribution weights must be finite and >= 0");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ValidationError("distribution must sum to 1");

    std::array<std::array<double, 3>, 3> prod_sum{};
    std::array<double, 3> a_w{}, a_plus{}, b_w{}, b_plus{};
    CorrelationTable t;
    for (std::uint64_t k = 0; k < space.size(); ++k) {
        const double w = distribution[k];
        if (w == 0) continue;
        auto out = rule.outcome_rank(k);
        if (!out) throw PreconditionError("distribution puts weight on a profile outside the rule's domain");
        const auto digits = space.digits(k);
        const AxisSign sa = embedding.of(space.order(digits[watched_voter]));
        const AxisSign sb = embedding.of(space.order(*out));
        const auto i = static_cast<std::size_t>(sa.axis - 1), j = static_cast<std::size_t>(sb.axis - 1);
        t.weight[i][j] += w;
        prod_sum[i][j] += w * sa.sign * sb.sign;
        a_w[i] += w;
        b_w[j] += w;
        if (sa.sign > 0) a_plus[i] += w;
        if (sb.sign > 0) b_plus[j] += w;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j)
            if (t.weight[i][j] > 0) t.correlation[i][j] = prod_sum[i][j] / t.weight[i][j];
        if (a_w[i] > 0) t.alice_plus[i] = a_plus[i] / a_w[i];
        if (b_w[i] > 0) t.bob_plus[i] = b_plus[i] / b_w[i];
    }
    return t;
}

inline std::vector<double> uniform_distribution(const VotingRule& rule) {
    const auto n = rule.space().size();
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

}  // namespace arrowq::bell
