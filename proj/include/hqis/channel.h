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

#ifndef HQIS_CHANNEL_H
#define HQIS_CHANNEL_H

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqis/secret_state.h"
#include "hqis/state_vector.h"

namespace hqis {

/// Number of agents in each grade: m Bobs (upper grade) and n Charlies.
struct PartySizes {
    std::size_t m;
    std::size_t n;

    bool operator==(const PartySizes &) const = default;

    /// Qubits in the channel held by Alice, the Bobs and the Charlies.
    std::size_t channel_qubits() const {
        return 1 + m + n;
    }

    void validate() const {
        if (m < 1 || n < 1) {
            throw std::invalid_argument(
                "need at least one Bob and one Charlie (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
        }
        // The channel plus the secret qubit must fit.
        check_register_size(channel_qubits() + 1);
    }
};

// Channel register order: A, B_1..B_m, C_1..C_n. Agent indices are 1-based.
inline QubitId channel_alice() {
    return {0};
}
inline QubitId channel_bob(const PartySizes &s, std::size_t i) {
    if (i < 1 || i > s.m) {
        throw std::out_of_range("Bob index " + std::to_string(i) + " out of range 1.." + std::to_string(s.m));
    }
    return {i};
}
inline QubitId channel_charlie(const PartySizes &s, std::size_t j) {
    if (j < 1 || j > s.n) {
        throw std::out_of_range("Charlie index " + std::to_string(j) + " out of range 1.." + std::to_string(s.n));
    }
    return {s.m + j};
}

namespace detail {

// 1/2 (|0..0,0..0> + |0..0,1..1> + |1..1,0..0> - |1..1,1..1>) over two
// blocks of `first` and `second` qubits.
inline StateVector two_block_graph_state(std::size_t first, std::size_t second) {
    std::size_t n = first + second;
    check_register_size(n);
    std::size_t first_ones = ((std::size_t{1} << first) - 1) << second;
    std::size_t second_ones = (std::size_t{1} << second) - 1;
    std::vector<Complex> amps(std::size_t{1} << n);
    amps[0] = 0.5;
    amps[second_ones] = 0.5;
    amps[first_ones] = 0.5;
    amps[first_ones | second_ones] = -0.5;
    return StateVector(n, std::move(amps));
}

}  // namespace detail

/// The honest (1+m+n)-qubit channel shared by Alice and the agents.
inline StateVector make_channel(const PartySizes &sizes) {
    sizes.validate();
    return detail::two_block_graph_state(1 + sizes.m, sizes.n);
}

/// Eve's (m+n)-qubit substitute for the agents' part of the channel.
inline StateVector make_fake_channel(const PartySizes &sizes) {
    sizes.validate();
    return detail::two_block_graph_state(sizes.m, sizes.n);
}

/// The channel after a Hadamard on every qubit except B_1 and C_1, built
/// directly from its product form
///
///     (|0>_A + |1>_A Z_B1) (|0>_B1 + |1>_B1 Z_B2..Z_Bm Z_C1) (|0>_B2 + |1>_B2)..
///     (|0>_C1 + |1>_C1 Z_C2..Z_Cn) (|0>_C2 + |1>_C2).. / 2^((1+m+n)/2)
///
/// where each Z acts on a later factor's ket.
inline StateVector make_standard_form(const PartySizes &sizes) {
    sizes.validate();
    std::size_t n = sizes.channel_qubits();
    struct Factor {
        QubitId control;
        std::vector<QubitId> z_targets;
    };
    std::vector<Factor> factors;
    factors.push_back({channel_alice(), {channel_bob(sizes, 1)}});
    Factor b1{channel_bob(sizes, 1), {}};
    for (std::size_t i = 2; i <= sizes.m; i++) {
        b1.z_targets.push_back(channel_bob(sizes, i));
    }
    b1.z_targets.push_back(channel_charlie(sizes, 1));
    factors.push_back(b1);
    Factor c1{channel_charlie(sizes, 1), {}};
    for (std::size_t j = 2; j <= sizes.n; j++) {
        c1.z_targets.push_back(channel_charlie(sizes, j));
    }
    factors.push_back(c1);

    auto bit = [n](std::size_t index, QubitId q) { return (index >> (n - 1 - q.index)) & 1; };
    double scale = std::pow(2.0, -0.5 * static_cast<double>(n));
    std::vector<Complex> amps(std::size_t{1} << n);
    for (std::size_t x = 0; x < amps.size(); x++) {
        double sign = 1.0;
        for (const auto &f : factors) {
            if (!bit(x, f.control)) {
                continue;
            }
            for (QubitId t : f.z_targets) {
                if (bit(x, t)) {
                    sign = -sign;
                }
            }
        }
        amps[x] = sign * scale;
    }
    return StateVector(n, std::move(amps));
}

/// Prepends the secret qubit S to a channel: |secret>_S (x) channel.
inline StateVector compose_with_secret(const SecretState &secret, const StateVector &channel) {
    if (channel.num_qubits() < 3) {
        throw std::invalid_argument("a channel has at least 3 qubits (Alice, one Bob, one Charlie)");
    }
    return tensor(StateVector(1, {secret.alpha(), secret.beta()}), channel);
}

}  // namespace hqis

#endif
