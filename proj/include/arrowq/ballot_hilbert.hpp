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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arrowq/errors.hpp"
#include "arrowq/guards.hpp"
#include "arrowq/linear_order.hpp"
#include "arrowq/social_choice.hpp"

namespace arrowq {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-10;

/// Ballot Hilbert space: dimension d >= n!, basis vector k < n! carries the
/// ballot of lexicographic rank k. Basis vectors k >= n! carry no ballot.
class BallotSpace {
  public:
    explicit BallotSpace(std::size_t alternatives, std::uint64_t dimension = 0, const Guards& guards = {})
        : n_(alternatives) {
        if (alternatives < 1 || alternatives > guards.max_alternatives) {
            throw SizeLimitError("ballot space: n=" + std::to_string(alternatives) + " outside 1.." +
                                 std::to_string(guards.max_alternatives));
        }
        ballots_ = factorial(alternatives);
        d_ = dimension == 0 ? ballots_ : dimension;
        if (d_ < ballots_) {
            throw InvalidArgumentError("ballot space dimension " + std::to_string(d_) + " is below n! = " +
                                       std::to_string(ballots_));
        }
    }

    [[nodiscard]] std::size_t alternatives() const { return n_; }
    [[nodiscard]] std::uint64_t dimension() const { return d_; }
    [[nodiscard]] std::uint64_t ballot_count() const { return ballots_; }
    [[nodiscard]] bool is_ballot_index(std::uint64_t k) const { return k < ballots_; }

    [[nodiscard]] std::uint64_t index_of(const LinearOrder& order) const {
        if (order.size() != n_) {
            throw InvalidArgumentError("ballot " + order.str() + " is not over " + std::to_string(n_) +
                                       " alternatives");
        }
        return order.rank();
    }

    [[nodiscard]] LinearOrder ballot_at(std::uint64_t k) const {
        if (!is_ballot_index(k)) {
            throw InvalidArgumentError("basis index " + std::to_string(k) + " carries no ballot");
        }
        return LinearOrder::from_rank(n_, k);
    }

  private:
    std::size_t n_;
    std::uint64_t ballots_ = 1;
    std::uint64_t d_ = 1;
};

/// Unit vector over `registers` copies of a `local_dimension`-dim space.
/// Register 0 is the most significant digit of the amplitude index.
class PureState {
  public:
    PureState(std::uint64_t local_dimension, std::size_t registers, std::vector<Complex> amplitudes)
        : local_dim_(local_dimension), registers_(registers), amps_(std::move(amplitudes)) {
        if (local_dim_ == 0 || registers_ == 0) {
            throw InvalidArgumentError("state needs a positive dimension and at least one register");
        }
        const std::uint64_t size = checked_pow(local_dim_, registers_, std::uint64_t{1} << 32);
        if (amps_.size() != size) {
            throw InvalidArgumentError("state has " + std::to_string(amps_.size()) + " amplitudes, expected " +
                                       std::to_string(size));
        }
        if (std::abs(norm() - 1.0) > kNormTolerance) {
            throw InvalidArgumentError("state is not normalized (norm " + std::to_string(norm()) + ")");
        }
    }

    static PureState basis(std::uint64_t local_dimension, std::size_t registers, std::uint64_t index) {
        const std::uint64_t size = checked_pow(local_dimension, registers, std::uint64_t{1} << 32);
        if (index >= size) {
            throw InvalidArgumentError("basis index " + std::to_string(index) + " out of range");
        }
        std::vector<Complex> amps(size);
        amps[index] = 1.0;
        return PureState(local_dimension, registers, std::move(amps));
    }

    /// Rescales `amplitudes` to unit norm; throws on the zero vector.
    static PureState normalized(std::uint64_t local_dimension, std::size_t registers, std::vector<Complex> amplitudes) {
        double n2 = 0;
        for (const auto& a : amplitudes) n2 += std::norm(a);
        if (!(n2 > 1e-24)) {
            throw InvalidArgumentError("cannot normalize the zero vector");
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : amplitudes) a *= inv;
        return PureState(local_dimension, registers, std::move(amplitudes));
    }

    [[nodiscard]] std::uint64_t local_dimension() const { return local_dim_; }
    [[nodiscard]] std::size_t registers() const { return registers_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] const Complex& operator[](std::size_t k) const { return amps_[k]; }

    [[nodiscard]] double norm() const {
        double n2 = 0;
        for (const auto& a : amps_) n2 += std::norm(a);
        return std::sqrt(n2);
    }

    /// <this|other>
    [[nodiscard]] Complex inner(const PureState& other) const {
        if (other.amps_.size() != amps_.size()) {
            throw InvalidArgumentError("inner product of states with different dimensions");
        }
        Complex s = 0;
        for (std::size_t k = 0; k < amps_.size(); ++k) s += std::conj(amps_[k]) * other.amps_[k];
        return s;
    }

    /// Equality up to a global phase e^{ic}.
    [[nodiscard]] bool equal_up_to_phase(const PureState& other, double tol = kNormTolerance) const {
        return amps_.size() == other.amps_.size() && std::abs(std::abs(inner(other)) - 1.0) <= tol;
    }

    /// Largest single-basis probability; 1 iff the state is a basis vector up to phase.
    [[nodiscard]] double max_probability() const {
        double best = 0;
        for (const auto& a : amps_) best = std::max(best, std::norm(a));
        return best;
    }

    friend PureState tensor(const PureState& x, const PureState& y) {
        if (x.local_dim_ != y.local_dim_) {
            throw InvalidArgumentError("tensor product of registers with different local dimensions");
        }
        std::vector<Complex> out;
        out.reserve(x.amps_.size() * y.amps_.size());
        for (const auto& a : x.amps_)
            for (const auto& b : y.amps_) out.push_back(a * b);
        return PureState(x.local_dim_, x.registers_ + y.registers_, std::move(out));
    }

  private:
    std::uint64_t local_dim_;
    std::size_t registers_;
    std::vector<Complex> amps_;
};

inline PureState ballot_state(const BallotSpace& space, const LinearOrder& order) {
    return PureState::basis(space.dimension(), 1, space.index_of(order));
}

/// Normalized linear combination sum_k amplitudes[k] * states[k].
inline PureState superpose(std::span<const PureState> states, std::span<const Complex> amplitudes) {
    if (states.empty() || states.size() != amplitudes.size()) {
        throw InvalidArgumentError("superpose needs one amplitude per state and at least one state");
    }
    std::vector<Complex> acc(states.front().size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].size() != acc.size() || states[k].registers() != states.front().registers()) {
            throw InvalidArgumentError("superpose: states have different dimensions");
        }
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += amplitudes[k] * states[k][j];
    }
    return PureState::normalized(states.front().local_dimension(), states.front().registers(), std::move(acc));
}

/// Unitary given by a basis permutation: |j> -> |image[j]>.
class UnitaryCircuit {
  public:
    UnitaryCircuit(std::uint64_t local_dimension, std::size_t registers, std::vector<std::uint64_t> image)
        : local_dim_(local_dimension), registers_(registers), image_(std::move(image)) {
        const std::uint64_t size = checked_pow(local_dim_, registers_, std::uint64_t{1} << 32);
        if (image_.size() != size) {
            throw InvalidArgumentError("circuit permutation has the wrong length");
        }
        if (!is_bijection(CircuitTable{local_dim_, registers_, image_})) {
            throw InvalidArgumentError("circuit basis map is not a bijection");
        }
    }

    [[nodiscard]] std::uint64_t local_dimension() const { return local_dim_; }
    [[nodiscard]] std::size_t registers() const { return registers_; }
    [[nodiscard]] std::uint64_t size() const { return image_.size(); }
    [[nodiscard]] std::uint64_t output_index(std::uint64_t input) const { return image_.at(input); }

    [[nodiscard]] PureState apply(const PureState& in) const {
        if (in.local_dimension() != local_dim_ || in.registers() != registers_) {
            throw InvalidArgumentError("state does not live on this circuit's registers");
        }
        std::vector<Complex> out(in.size());
        for (std::size_t j = 0; j < in.size(); ++j) out[image_[j]] += in[j];
        return PureState(local_dim_, registers_, std::move(out));
    }

    /// Dense row-major matrix; guarded since it is quadratic in the dimension.
    [[nodiscard]] std::vector<Complex> dense(const Guards& guards = {}) const {
        if (image_.size() > guards.max_dense_dimension) {
            throw SizeLimitError("dense circuit matrix of dimension " + std::to_string(image_.size()) +
                                 " exceeds guard " + std::to_string(guards.max_dense_dimension));
        }
        const std::size_t n = image_.size();
        std::vector<Complex> u(n * n);
        for (std::size_t col = 0; col < n; ++col) u[image_[col] * n + col] = 1.0;
        return u;
    }

    /// max_ij |(U^dagger U - I)_ij| from the dense matrix.
    [[nodiscard]] double unitarity_defect(const Guards& guards = {}) const {
        const auto u = dense(guards);
        const std::size_t n = image_.size();
        double worst = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Complex s = 0;
                for (std::size_t k = 0; k < n; ++k) s += std::conj(u[k * n + i]) * u[k * n + j];
                worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
            }
        }
        return worst;
    }

    /// Exactly one entry equal to 1 in every row and column, all others 0.
    [[nodiscard]] bool is_permutation_matrix(const Guards& guards = {}) const {
        const auto u = dense(guards);
        const std::size_t n = image_.size();
        std::vector<std::size_t> row_ones(n, 0), col_ones(n, 0);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const Complex v = u[r * n + c];
                if (v == Complex{1.0, 0.0}) {
                    ++row_ones[r];
                    ++col_ones[c];
                } else if (v != Complex{0.0, 0.0}) {
                    return false;
                }
            }
        }
        for (std::size_t k = 0; k < n; ++k)
            if (row_ones[k] != 1 || col_ones[k] != 1) return false;
        return true;
    }

    /// Nonzero entries as (row, col), ordered by column.
    [[nodiscard]] std::vector<std::pair<std::uint64_t, std::uint64_t>> sparse_entries() const {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
        out.reserve(image_.size());
        for (std::uint64_t col = 0; col < image_.size(); ++col) out.emplace_back(image_[col], col);
        return out;
    }

  private:
    std::uint64_t local_dim_;
    std::size_t registers_;
    std::vector<std::uint64_t> image_;
};

/// The voting circuit R^ on ancilla (register 0) and voters 1..m: on
/// |0>|p^1>...|p^m> the ancilla becomes |rank r(p)>, voters are untouched.
inline UnitaryCircuit lift_rule_to_unitary(const BallotSpace& space, const VotingRule& rule,
                                           const Guards& guards = {}) {
    if (rule.alternatives() != space.alternatives()) {
        throw InvalidArgumentError("rule and ballot space disagree on the number of alternatives");
    }
    checked_pow(space.dimension(), rule.voters() + 1, guards.max_circuit_dimension);
    CircuitTable t = classical_circuit_table(rule, space.dimension(), guards);
    return UnitaryCircuit(t.dimension, t.registers, std::move(t.image));
}

namespace detail {

inline void check_voter(const UnitaryCircuit& circuit, std::size_t voter) {
    if (circuit.registers() < 2 || voter >= circuit.registers() - 1) {
        throw InvalidArgumentError("voter " + std::to_string(voter) + " out of range for a circuit with " +
                                   std::to_string(circuit.registers() - 1) + " voters");
    }
}

}  // namespace detail

/// True iff, for every classical ballot profile with ancilla 0, the output
/// ancilla holds voter `voter`'s ballot.
inline bool is_dictatorial_circuit(const UnitaryCircuit& circuit, const BallotSpace& space, std::size_t voter) {
    detail::check_voter(circuit, voter);
    const std::size_t m = circuit.registers() - 1;
    const std::uint64_t d = circuit.local_dimension();
    if (d != space.dimension()) {
        throw InvalidArgumentError("circuit and ballot space disagree on the register dimension");
    }
    const std::uint64_t voter_states = circuit.size() / d;
    const std::uint64_t nb = space.ballot_count();
    std::vector<std::uint64_t> digit(m, 0);
    while (true) {
        std::uint64_t input = 0;
        for (std::size_t i = 0; i < m; ++i) input = input * d + digit[i];
        const std::uint64_t ancilla_out = circuit.output_index(input) / voter_states;
        if (ancilla_out != digit[voter]) return false;
        std::size_t i = m;
        while (i > 0 && ++digit[i - 1] == nb) digit[--i] = 0;
        if (i == 0) break;
    }
    return true;
}

namespace detail {

/// |0>_ancilla (x) registers, with `payload` in register `voter` and the
/// filler ballots (in voter order, skipping `voter`) elsewhere.
inline PureState circuit_input(const BallotSpace& space, std::size_t voters, std::size_t voter,
                               const PureState& payload, const PureState& ancilla,
                               std::span<const LinearOrder> fillers) {
    if (fillers.size() + 1 != voters) {
        throw InvalidArgumentError("need " + std::to_string(voters - 1) + " filler ballots, got " +
                                   std::to_string(fillers.size()));
    }
    PureState state = ancilla;
    std::size_t f = 0;
    for (std::size_t i = 0; i < voters; ++i) {
        state = tensor(state, i == voter ? payload : ballot_state(space, fillers[f++]));
    }
    return state;
}

}  // namespace detail

/// |<ideal|actual>|^2 where actual = R^ |0>|..psi..> and ideal puts psi on
/// both the ancilla and the dictator register, fillers unchanged.
inline double cloning_fidelity(const UnitaryCircuit& circuit, const BallotSpace& space, std::size_t voter,
                               const PureState& psi, std::span<const LinearOrder> fillers) {
    detail::check_voter(circuit, voter);
    if (psi.registers() != 1 || psi.local_dimension() != space.dimension()) {
        throw InvalidArgumentError("cloned state must be a single ballot-space register");
    }
    if (!is_dictatorial_circuit(circuit, space, voter)) {
        throw PreconditionError("circuit is not dictatorial for voter " + std::to_string(voter));
    }
    const std::size_t m = circuit.registers() - 1;
    const PureState blank = PureState::basis(space.dimension(), 1, 0);
    const PureState actual = circuit.apply(detail::circuit_input(space, m, voter, psi, blank, fillers));
    const PureState ideal = detail::circuit_input(space, m, voter, psi, psi, fillers);
    return std::norm(ideal.inner(actual));
}

/// Real superpositions cos(t) e_a + sin(t) e_b with t uniform on [0, pi/2],
/// drawn from a seeded mt19937_64. Returns (t, state) pairs.
inline std::vector<std::pair<double, PureState>> sample_two_ballot_superpositions(const BallotSpace& space,
                                                                                  std::size_t count,
                                                                                  std::uint64_t seed,
                                                                                  std::uint64_t ballot_a = 0,
                                                                                  std::uint64_t ballot_b = 1) {
    if (ballot_a == ballot_b || !space.is_ballot_index(ballot_a) || !space.is_ballot_index(ballot_b)) {
        throw InvalidArgumentError("two distinct ballot indices are required");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::pair<double, PureState>> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        // 53 random bits mapped to [0,1]; avoids distribution implementation drift.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double theta = u * std::numbers::pi / 2;
        std::vector<Complex> amps(space.dimension());
        amps[ballot_a] = std::cos(theta);
        amps[ballot_b] = std::sin(theta);
        out.emplace_back(theta, PureState::normalized(space.dimension(), 1, std::move(amps)));
    }
    return out;
}

struct CloningScanReport {
    std::size_t samples = 0;
    double min_fidelity = 1.0;
    std::optional<std::size_t> argmin;  // index of the worst sample
    bool basis_samples_clone = true;     // every basis sample reaches fidelity 1
    bool superpositions_fail = true;     // every other sample stays at or below its top basis probability
};

/// Cloning fidelity of each sample. The overlap is sum_j |c_j|^2 conj(c_j), so
/// F <= max_j |c_j|^2: a sample with p_max < 1 cannot clone. A sample is a
/// basis state when p_max >= 1 - 1e-12.
inline CloningScanReport no_cloning_scan(const UnitaryCircuit& circuit, const BallotSpace& space, std::size_t voter,
                                         std::span<const PureState> samples, std::span<const LinearOrder> fillers) {
    constexpr double kBasis = 1e-12;
    CloningScanReport rep;
    rep.samples = samples.size();
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double f = cloning_fidelity(circuit, space, voter, samples[k], fillers);
        if (!rep.argmin || f < rep.min_fidelity) {
            rep.argmin = k;
            rep.min_fidelity = f;
        }
        const double pmax = samples[k].max_probability();
        if (pmax >= 1.0 - kBasis) {
            rep.basis_samples_clone = rep.basis_samples_clone && std::abs(f - 1.0) <= kNormTolerance;
        } else {
            rep.superpositions_fail = rep.superpositions_fail && f <= pmax + kBasis;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Kochen-Specker colorings.

struct KSInstance {
    std::uint64_t dimension = 0;
    std::vector<std::vector<Complex>> vectors;
    std::vector<std::vector<std::size_t>> bases;  // indices into `vectors`
    std::vector<std::uint8_t> coloring;           // one bit per vector
};

struct KSVerification {
    bool valid = true;
    std::vector<std::size_t> violated_bases;  // indices into instance.bases
};

/// Throws ValidationError unless every vector is a unit vector of the declared
/// dimension, every declared basis has d distinct pairwise-orthogonal members,
/// and the coloring assigns 0/1 to every vector.
inline void validate_ks_instance(const KSInstance& inst, double tol = kNormTolerance) {
    if (inst.dimension == 0) throw ValidationError("KS instance dimension must be positive");
    for (std::size_t v = 0; v < inst.vectors.size(); ++v) {
        if (inst.vectors[v].size() != inst.dimension) {
            throw ValidationError("vector " + std::to_string(v) + " has dimension " +
                                  std::to_string(inst.vectors[v].size()));
        }
        double n2 = 0;
        for (const auto& a : inst.vectors[v]) n2 += std::norm(a);
        if (std::abs(std::sqrt(n2) - 1.0) > tol) {
            throw ValidationError("vector " + std::to_string(v) + " is not a unit vector");
        }
    }
    if (inst.coloring.size() != inst.vectors.size()) {
        throw ValidationError("coloring has " + std::to_string(inst.coloring.size()) + " entries for " +
                              std::to_string(inst.vectors.size()) + " vectors");
    }
    for (auto bit : inst.coloring) {
        if (bit > 1) throw ValidationError("coloring entries must be 0 or 1");
    }
    for (std::size_t b = 0; b < inst.bases.size(); ++b) {
        const auto& basis = inst.bases[b];
        if (basis.size() != inst.dimension) {
            throw ValidationError("basis " + std::to_string(b) + " has " + std::to_string(basis.size()) +
                                  " vectors, dimension is " + std::to_string(inst.dimension));
        }
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (basis[i] >= inst.vectors.size()) {
                throw ValidationError("basis " + std::to_string(b) + " references missing vector " +
                                      std::to_string(basis[i]));
            }
            for (std::size_t j = i + 1; j < basis.size(); ++j) {
                if (basis[j] >= inst.vectors.size()) continue;  // reported on its own turn
                Complex s = 0;
                const auto& u = inst.vectors[basis[i]];
                const auto& w = inst.vectors[basis[j]];
                for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * w[k];
                if (basis[i] == basis[j] || std::abs(s) > tol) {
                    throw ValidationError("basis " + std::to_string(b) + " is not orthonormal: vectors " +
                                          std::to_string(basis[i]) + " and " + std::to_string(basis[j]));
                }
            }
        }
    }
}

/// Every declared basis must have exactly one vector colored 1.
inline KSVerification verify_ks_coloring(const KSInstance& inst, double tol = kNormTolerance) {
    validate_ks_instance(inst, tol);
    KSVerification res;
    for (std::size_t b = 0; b < inst.bases.size(); ++b) {
        std::size_t sum = 0;
        for (auto v : inst.bases[b]) sum += inst.coloring[v];
        if (sum != 1) {
            res.valid = false;
            res.violated_bases.push_back(b);
        }
    }
    return res;
}

/// All orthonormal bases contained in `vectors` (d-cliques of the
/// orthogonality graph), each as ascending indices, in lexicographic order.
inline std::vector<std::vector<std::size_t>> discover_bases(const std::vector<std::vector<Complex>>& vectors,
                                                            std::uint64_t dimension, double tol = kNormTolerance) {
    constexpr std::size_t kMaxVectors = 512;
    if (vectors.size() > kMaxVectors) {
        throw SizeLimitError("basis discovery is limited to " + std::to_string(kMaxVectors) + " vectors");
    }
    const std::size_t n = vectors.size();
    std::vector<std::vector<bool>> orth(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Complex s = 0;
            for (std::size_t k = 0; k < dimension; ++k) s += std::conj(vectors[i][k]) * vectors[j][k];
            orth[i][j] = orth[j][i] = std::abs(s) <= tol;
        }
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> clique;
    auto grow = [&](auto&& self, std::size_t from) -> void {
        if (clique.size() == dimension) {
            out.push_back(clique);
            return;
        }
        for (std::size_t v = from; v < n; ++v) {
            bool ok = true;
            for (auto c : clique) ok = ok && orth[c][v];
            if (!ok) continue;
            clique.push_back(v);
            self(self, v + 1);
            clique.pop_back();
        }
    };
    grow(grow, 0);
    return out;
}

/// The single-basis instance induced by a rule at one profile: the n! ballot
/// basis states, colored 1 exactly on the outcome ballot.
inline KSInstance ks_instance_from_outcome(const VotingRule& rule, const Profile& profile) {
    const BallotSpace space(rule.alternatives());
    const std::uint64_t outcome = rule.apply(profile).rank();
    KSInstance inst;
    inst.dimension = space.dimension();
    std::vector<std::size_t> basis;
    for (std::uint64_t k = 0; k < space.dimension(); ++k) {
        std::vector<Complex> v(space.dimension());
        v[k] = 1.0;
        inst.vectors.push_back(std::move(v));
        inst.coloring.push_back(k == outcome ? 1 : 0);
        basis.push_back(k);
    }
    inst.bases.push_back(std::move(basis));
    return inst;
}

/// Pairwise preference bits of a ballot, one per pair a<b in pair_index
/// order: bit = 1 iff a is ranked above b.
inline std::vector<std::uint8_t> decompose_ballot_pairwise(const LinearOrder& order) {
    std::vector<std::uint8_t> bits;
    bits.reserve(pair_count(order.size()));
    for (auto [a, b] : all_pairs(order.size())) bits.push_back(order.prefers(a, b) ? 1 : 0);
    return bits;
}

}  // namespace arrowq
