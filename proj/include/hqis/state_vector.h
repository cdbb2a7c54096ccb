// Copyright 2026 The HQIS Authors
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

#ifndef HQIS_STATE_VECTOR_H
#define HQIS_STATE_VECTOR_H

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hqis/rng.h"
#include "hqis/secret_state.h"

namespace hqis {

/// Raised when a register or enumeration would exceed a configured size limit.
struct resource_limit_error : std::length_error {
    using std::length_error::length_error;
};

constexpr std::size_t kDefaultMaxQubits = 24;
constexpr std::size_t kHardMaxQubits = 30;
constexpr double kNormTolerance = 1e-10;
constexpr double kUnitaryTolerance = 1e-12;
/// Branches with probability below this are treated as impossible.
constexpr double kZeroProbability = 1e-14;

/// Largest register any operation may build. HQIS_MAX_QUBITS overrides the default.
inline std::size_t max_qubits() {
    const char *env = std::getenv("HQIS_MAX_QUBITS");
    if (env == nullptr || *env == '\0') {
        return kDefaultMaxQubits;
    }
    char *end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
        return kDefaultMaxQubits;
    }
    return std::min<std::size_t>(v, kHardMaxQubits);
}

inline void check_register_size(std::size_t num_qubits) {
    std::size_t cap = max_qubits();
    if (num_qubits > cap) {
        throw resource_limit_error(
            "register of " + std::to_string(num_qubits) + " qubits exceeds the cap of " + std::to_string(cap) +
            " (raise HQIS_MAX_QUBITS or use smaller party sizes)");
    }
}

/// Position of a qubit in register order. Qubit 0 is the most significant bit
/// of an amplitude index.
struct QubitId {
    std::size_t index;
    bool operator==(const QubitId &) const = default;
};

enum class MeasBasis { Computational, PlusMinus };

inline std::string_view to_string(MeasBasis b) {
    return b == MeasBasis::Computational ? "Z" : "X";
}

enum class BellOutcome { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus, BellOutcome::PsiMinus};

inline std::string_view to_string(BellOutcome b) {
    switch (b) {
        case BellOutcome::PhiPlus:
            return "Phi+";
        case BellOutcome::PhiMinus:
            return "Phi-";
        case BellOutcome::PsiPlus:
            return "Psi+";
        case BellOutcome::PsiMinus:
            return "Psi-";
    }
    return "?";
}

/// Row-major 2x2 complex matrix.
struct Gate2 {
    std::array<Complex, 4> m;

    Complex operator()(std::size_t row, std::size_t col) const {
        return m[2 * row + col];
    }

    /// Matrix product; (a * b) applied to a ket applies b first.
    friend Gate2 operator*(const Gate2 &a, const Gate2 &b) {
        Gate2 r{};
        for (std::size_t i = 0; i < 2; i++) {
            for (std::size_t j = 0; j < 2; j++) {
                r.m[2 * i + j] = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
            }
        }
        return r;
    }

    Gate2 adjoint() const {
        return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }

    bool is_unitary(double tol = kUnitaryTolerance) const {
        Gate2 p = *this * adjoint();
        return std::abs(p.m[0] - 1.0) <= tol && std::abs(p.m[1]) <= tol && std::abs(p.m[2]) <= tol &&
               std::abs(p.m[3] - 1.0) <= tol;
    }
};

namespace gates {

inline const Gate2 I{{1.0, 0.0, 0.0, 1.0}};
inline const Gate2 X{{0.0, 1.0, 1.0, 0.0}};
inline const Gate2 Y{{0.0, Complex(0, -1), Complex(0, 1), 0.0}};
// i * sigma_y, kept real.
inline const Gate2 iY{{0.0, 1.0, -1.0, 0.0}};
inline const Gate2 Z{{1.0, 0.0, 0.0, -1.0}};
inline const Gate2 H{{M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2}};

}  // namespace gates

/// Single-qubit density matrix, row-major.
struct DensityMatrix2 {
    std::array<Complex, 4> m;

    Complex operator()(std::size_t row, std::size_t col) const {
        return m[2 * row + col];
    }
    double trace() const {
        return (m[0] + m[3]).real();
    }
    /// Tr(rho^2).
    double purity() const {
        return (m[0] * m[0] + 2.0 * m[1] * m[2] + m[3] * m[3]).real();
    }
    /// Ascending eigenvalues of the Hermitian part.
    std::array<double, 2> eigenvalues() const {
        double half_tr = 0.5 * trace();
        double diff = 0.5 * (m[0].real() - m[3].real());
        double r = std::sqrt(diff * diff + std::norm(m[1]));
        return {half_tr - r, half_tr + r};
    }
    /// Largest entrywise deviation from `other`.
    double distance(const DensityMatrix2 &other) const {
        double d = 0;
        for (std::size_t k = 0; k < 4; k++) {
            d = std::max(d, std::abs(m[k] - other.m[k]));
        }
        return d;
    }

    static DensityMatrix2 diagonal(double p0, double p1) {
        return {{p0, 0.0, 0.0, p1}};
    }
};

/// Dense state over an ordered register of qubits.
///
/// Immutable once built: every operation below returns a new state. Always
/// normalized to within kNormTolerance. A zero-qubit state (a single
/// amplitude) is only produced by removing the last two qubits in a Bell
/// projection.
class StateVector {
   public:
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
        check_register_size(num_qubits_);
        if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
            throw std::invalid_argument(
                "amplitude count " + std::to_string(amplitudes_.size()) + " does not match 2^" +
                std::to_string(num_qubits_));
        }
        if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
            throw std::invalid_argument("state is not normalized: norm^2 = " + std::to_string(norm_squared()));
        }
    }

    /// Divides by the norm first. Rejects the zero vector.
    static StateVector renormalized(std::size_t num_qubits, std::vector<Complex> amplitudes) {
        double n2 = 0;
        for (const auto &a : amplitudes) {
            n2 += std::norm(a);
        }
        if (!(n2 > 0)) {
            throw std::invalid_argument("cannot normalize the zero vector");
        }
        double inv = 1.0 / std::sqrt(n2);
        for (auto &a : amplitudes) {
            a *= inv;
        }
        return StateVector(num_qubits, std::move(amplitudes));
    }

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t size() const {
        return amplitudes_.size();
    }
    const std::vector<Complex> &amplitudes() const {
        return amplitudes_;
    }
    Complex operator[](std::size_t index) const {
        return amplitudes_[index];
    }

    double norm_squared() const {
        double n2 = 0;
        for (const auto &a : amplitudes_) {
            n2 += std::norm(a);
        }
        return n2;
    }

    /// Bit mask selecting qubit q within an amplitude index.
    std::size_t mask(QubitId q) const {
        check_qubit(q);
        return std::size_t{1} << (num_qubits_ - 1 - q.index);
    }

    void check_qubit(QubitId q) const {
        if (q.index >= num_qubits_) {
            throw std::out_of_range(
                "qubit " + std::to_string(q.index) + " out of range for a " + std::to_string(num_qubits_) +
                "-qubit register");
        }
    }

   private:
    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Result of projecting onto one outcome. `state` is empty when the branch
/// has probability below kZeroProbability.
struct Branch {
    double probability;
    std::optional<StateVector> state;

    bool valid() const {
        return state.has_value();
    }
};

struct Measured {
    int outcome;
    /// Probability of `outcome` given the input state.
    double probability;
    StateVector state;
};

struct BellMeasured {
    BellOutcome outcome;
    double probability;
    StateVector state;
};

inline StateVector basis_state(std::size_t num_qubits, std::string_view bits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("basis state needs at least one qubit");
    }
    if (bits.size() != num_qubits) {
        throw std::invalid_argument(
            "bit string of length " + std::to_string(bits.size()) + " for " + std::to_string(num_qubits) + " qubits");
    }
    check_register_size(num_qubits);
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
        index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    amps[index] = 1.0;
    return StateVector(num_qubits, std::move(amps));
}

inline StateVector apply_gate(const StateVector &state, QubitId q, const Gate2 &g) {
    std::size_t bit = state.mask(q);
    if (!g.is_unitary()) {
        throw std::invalid_argument("gate is not unitary");
    }
    std::vector<Complex> out = state.amplitudes();
    for (std::size_t i = 0; i < out.size(); i++) {
        if (i & bit) {
            continue;
        }
        Complex a0 = out[i];
        Complex a1 = out[i | bit];
        out[i] = g.m[0] * a0 + g.m[1] * a1;
        out[i | bit] = g.m[2] * a0 + g.m[3] * a1;
    }
    return StateVector::renormalized(state.num_qubits(), std::move(out));
}

/// Kronecker product; a's qubits come first in the result.
inline StateVector tensor(const StateVector &a, const StateVector &b) {
    std::size_t n = a.num_qubits() + b.num_qubits();
    check_register_size(n);
    std::vector<Complex> out(std::size_t{1} << n);
    for (std::size_t i = 0; i < a.size(); i++) {
        for (std::size_t j = 0; j < b.size(); j++) {
            out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return StateVector(n, std::move(out));
}

inline StateVector swap_qubits(const StateVector &state, QubitId q1, QubitId q2) {
    std::size_t m1 = state.mask(q1);
    std::size_t m2 = state.mask(q2);
    std::vector<Complex> out(state.size());
    for (std::size_t i = 0; i < state.size(); i++) {
        std::size_t j = i & ~(m1 | m2);
        if (i & m1) {
            j |= m2;
        }
        if (i & m2) {
            j |= m1;
        }
        out[j] = state[i];
    }
    return StateVector(state.num_qubits(), std::move(out));
}

/// Largest amplitude-wise difference. Registers must match in size.
inline double max_abs_diff(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("register sizes differ");
    }
    double d = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

/// Projects qubit q onto an eigenstate of `basis`. Outcome 1 is |1> or |->.
/// The collapsed state keeps the measured qubit in place.
inline Branch project(const StateVector &state, QubitId q, MeasBasis basis, int outcome) {
    std::size_t bit = state.mask(q);
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("measurement outcome must be 0 or 1");
    }
    std::vector<Complex> out(state.size());
    double p = 0;
    if (basis == MeasBasis::Computational) {
        for (std::size_t i = 0; i < state.size(); i++) {
            if (((i & bit) != 0) == (outcome == 1)) {
                out[i] = state[i];
                p += std::norm(state[i]);
            }
        }
    } else {
        double sign = outcome == 0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < state.size(); i++) {
            if (i & bit) {
                continue;
            }
            Complex c = (state[i] + sign * state[i | bit]) * M_SQRT1_2;
            p += std::norm(c);
            out[i] = c * M_SQRT1_2;
            out[i | bit] = sign * c * M_SQRT1_2;
        }
    }
    if (p < kZeroProbability) {
        return {p, std::nullopt};
    }
    return {p, StateVector::renormalized(state.num_qubits(), std::move(out))};
}

inline Measured measure(const StateVector &state, QubitId q, MeasBasis basis, RandomSource &rng) {
    Branch zero = project(state, q, basis, 0);
    double u = uniform01(rng);
    if (zero.valid() && (u < zero.probability || zero.probability > 1.0 - kZeroProbability)) {
        return {0, zero.probability, std::move(*zero.state)};
    }
    Branch one = project(state, q, basis, 1);
    if (!one.valid()) {
        return {0, zero.probability, std::move(*zero.state)};
    }
    return {1, one.probability, std::move(*one.state)};
}

namespace detail {

// Drops bit position `pos` (0 = least significant) from an index.
inline std::size_t remove_bit(std::size_t x, std::size_t pos) {
    std::size_t low = x & ((std::size_t{1} << pos) - 1);
    return ((x >> (pos + 1)) << pos) | low;
}

// Coefficients of a Bell state on (first, second) in the order |00>,|01>,|10>,|11>.
inline std::array<double, 4> bell_coefficients(BellOutcome b) {
    constexpr double r = M_SQRT1_2;
    switch (b) {
        case BellOutcome::PhiPlus:
            return {r, 0, 0, r};
        case BellOutcome::PhiMinus:
            return {r, 0, 0, -r};
        case BellOutcome::PsiPlus:
            return {0, r, r, 0};
        case BellOutcome::PsiMinus:
            return {0, r, -r, 0};
    }
    return {};
}

}  // namespace detail

/// Projects (q1, q2) onto a Bell state, q1 playing the role of the first
/// qubit in |0 1> +- |1 0>. Both qubits are removed from the collapsed state.
inline Branch bell_project(const StateVector &state, QubitId q1, QubitId q2, BellOutcome outcome) {
    std::size_t m1 = state.mask(q1);
    std::size_t m2 = state.mask(q2);
    if (q1 == q2) {
        throw std::invalid_argument("Bell projection needs two distinct qubits");
    }
    std::size_t n = state.num_qubits();
    std::size_t p1 = n - 1 - q1.index;
    std::size_t p2 = n - 1 - q2.index;
    std::size_t hi = std::max(p1, p2);
    std::size_t lo = std::min(p1, p2);
    auto coeff = detail::bell_coefficients(outcome);

    std::vector<Complex> out(std::size_t{1} << (n - 2));
    for (std::size_t i = 0; i < state.size(); i++) {
        std::size_t ab = ((i & m1) ? 2 : 0) | ((i & m2) ? 1 : 0);
        if (coeff[ab] == 0) {
            continue;
        }
        std::size_t r = detail::remove_bit(detail::remove_bit(i, hi), lo);
        out[r] += coeff[ab] * state[i];
    }
    double p = 0;
    for (const auto &a : out) {
        p += std::norm(a);
    }
    if (p < kZeroProbability) {
        return {p, std::nullopt};
    }
    return {p, StateVector::renormalized(n - 2, std::move(out))};
}

inline BellMeasured bell_measure(const StateVector &state, QubitId q1, QubitId q2, RandomSource &rng) {
    double u = uniform01(rng);
    double acc = 0;
    std::optional<BellMeasured> last;
    for (BellOutcome b : kBellOutcomes) {
        Branch br = bell_project(state, q1, q2, b);
        if (!br.valid()) {
            continue;
        }
        acc += br.probability;
        last.emplace(BellMeasured{b, br.probability, std::move(*br.state)});
        if (u < acc) {
            break;
        }
    }
    return std::move(*last);
}

/// Partial trace over every qubit except q.
inline DensityMatrix2 reduced_density(const StateVector &state, QubitId q) {
    std::size_t bit = state.mask(q);
    Complex r00 = 0, r01 = 0, r11 = 0;
    for (std::size_t i = 0; i < state.size(); i++) {
        if (i & bit) {
            continue;
        }
        Complex a0 = state[i];
        Complex a1 = state[i | bit];
        r00 += std::norm(a0);
        r11 += std::norm(a1);
        r01 += a0 * std::conj(a1);
    }
    return {{r00, r01, std::conj(r01), r11}};
}

/// Returns qubit q as a standalone single-qubit state if it is unentangled
/// from the rest of the register (purity within kNormTolerance of 1).
inline std::optional<StateVector> factor_out_qubit(const StateVector &state, QubitId q) {
    DensityMatrix2 rho = reduced_density(state, q);
    if (rho.purity() < 1.0 - kNormTolerance) {
        return std::nullopt;
    }
    // rho = |v><v|, so the larger column is v scaled by a phase.
    std::size_t col = std::norm(rho(0, 0)) >= std::norm(rho(1, 1)) ? 0 : 1;
    return StateVector::renormalized(1, {rho(0, col), rho(1, col)});
}

/// |<secret|state>|^2 for a single-qubit state.
inline double fidelity_with_secret(const StateVector &state, const SecretState &secret) {
    if (state.num_qubits() != 1) {
        throw std::invalid_argument("fidelity needs a single-qubit state, got " + std::to_string(state.num_qubits()));
    }
    Complex overlap = std::conj(secret.alpha()) * state[0] + std::conj(secret.beta()) * state[1];
    return std::min(1.0, std::norm(overlap));
}

/// <secret|rho|secret>; equals fidelity_with_secret when rho is pure.
inline double fidelity_with_secret(const DensityMatrix2 &rho, const SecretState &secret) {
    Complex a = secret.alpha();
    Complex b = secret.beta();
    Complex v = std::conj(a) * (rho(0, 0) * a + rho(0, 1) * b) + std::conj(b) * (rho(1, 0) * a + rho(1, 1) * b);
    return std::clamp(v.real(), 0.0, 1.0);
}

}  // namespace hqis

#endif
