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

#ifndef HQIS_ADVERSARY_H
#define HQIS_ADVERSARY_H

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hqis/channel.h"
#include "hqis/rng.h"
#include "hqis/state_vector.h"

namespace hqis {

enum class Scenario { Honest, InterceptResend };

inline std::string_view to_string(Scenario s) {
    return s == Scenario::Honest ? "honest" : "intercept-resend";
}

constexpr double kDefaultDetectionThreshold = 0.99;
constexpr std::size_t kDefaultCheckRounds = 64;

/// Outcome of sacrificing `rounds` channel instances to a computational-basis
/// correlation check.
struct CheckStats {
    std::size_t rounds;
    /// Fraction of rounds in which Bob_i's bit equals Alice's, indexed by i-1.
    std::vector<double> alice_bob_match_rate;
    /// Fraction of rounds in which every delivered Charlie qubit gave the same bit.
    double charlie_group_consistent_rate;
    double threshold;
    bool detected;
    std::string detection_rule;
};

/// Honest: the channel itself. InterceptResend: the intercepted channel
/// (Alice keeps qubit 0, Eve holds the rest) followed by Eve's fake channel,
/// whose m+n qubits are the ones the agents receive.
inline StateVector build_scenario_state(const PartySizes &sizes, Scenario scenario) {
    sizes.validate();
    if (scenario == Scenario::Honest) {
        return make_channel(sizes);
    }
    std::size_t total = sizes.channel_qubits() + sizes.m + sizes.n;
    if (total > max_qubits()) {
        throw resource_limit_error(
            "intercept-resend register needs " + std::to_string(total) + " qubits, above the cap of " +
            std::to_string(max_qubits()) + "; use outcome_distribution for the factored exact path");
    }
    return tensor(make_channel(sizes), make_fake_channel(sizes));
}

/// Where Alice's qubit and the delivered agent qubits sit in a scenario register.
struct ScenarioLayout {
    QubitId alice;
    std::vector<QubitId> bobs;
    std::vector<QubitId> charlies;
};

inline ScenarioLayout scenario_layout(const PartySizes &sizes, Scenario scenario) {
    std::size_t offset = scenario == Scenario::Honest ? 1 : sizes.channel_qubits();
    ScenarioLayout l{QubitId{0}, {}, {}};
    for (std::size_t i = 0; i < sizes.m; i++) {
        l.bobs.push_back({offset + i});
    }
    for (std::size_t j = 0; j < sizes.n; j++) {
        l.charlies.push_back({offset + sizes.m + j});
    }
    return l;
}

/// One joint computational-basis outcome of Alice and the agents.
struct JointOutcome {
    int alice;
    std::vector<int> bobs;
    std::vector<int> charlies;
    double probability;
};

namespace detail {

struct BitsBranch {
    std::vector<int> bits;
    double probability;
};

// Every nonzero-probability outcome of measuring `qubits` in order; all
// other qubits are traced out.
inline std::vector<BitsBranch> computational_branches(const StateVector &state, const std::vector<QubitId> &qubits) {
    std::vector<BitsBranch> out;
    std::vector<int> bits;
    auto walk = [&](auto &self, const StateVector &s, double p) -> void {
        if (bits.size() == qubits.size()) {
            out.push_back({bits, p});
            return;
        }
        for (int o : {0, 1}) {
            Branch b = project(s, qubits[bits.size()], MeasBasis::Computational, o);
            if (!b.valid()) {
                continue;
            }
            bits.push_back(o);
            self(self, *b.state, p * b.probability);
            bits.pop_back();
        }
    };
    walk(walk, state, 1.0);
    return out;
}

inline JointOutcome split_bits(const PartySizes &sizes, int alice, const std::vector<int> &agents, double p) {
    JointOutcome j{alice, {}, {}, p};
    j.bobs.assign(agents.begin(), agents.begin() + static_cast<std::ptrdiff_t>(sizes.m));
    j.charlies.assign(agents.begin() + static_cast<std::ptrdiff_t>(sizes.m), agents.end());
    return j;
}

}  // namespace detail

/// Exact joint distribution from the full scenario register. Limited by the
/// register cap; the factored `outcome_distribution` is not.
inline std::vector<JointOutcome> outcome_distribution_full_register(const PartySizes &sizes, Scenario scenario) {
    StateVector state = build_scenario_state(sizes, scenario);
    ScenarioLayout l = scenario_layout(sizes, scenario);
    std::vector<QubitId> qubits{l.alice};
    qubits.insert(qubits.end(), l.bobs.begin(), l.bobs.end());
    qubits.insert(qubits.end(), l.charlies.begin(), l.charlies.end());
    std::vector<JointOutcome> out;
    for (const auto &b : detail::computational_branches(state, qubits)) {
        std::vector<int> agents(b.bits.begin() + 1, b.bits.end());
        out.push_back(detail::split_bits(sizes, b.bits[0], agents, b.probability));
    }
    return out;
}

/// Exact joint distribution of Alice's and the agents' computational-basis
/// outcomes. Under attack the register is a product of the intercepted
/// channel and the fake one, so the two factors are measured separately.
inline std::vector<JointOutcome> outcome_distribution(const PartySizes &sizes, Scenario scenario) {
    if (scenario == Scenario::Honest) {
        return outcome_distribution_full_register(sizes, scenario);
    }
    sizes.validate();
    StateVector fake = make_fake_channel(sizes);
    std::vector<QubitId> agent_qubits;
    for (std::size_t k = 0; k < fake.num_qubits(); k++) {
        agent_qubits.push_back({k});
    }
    auto alice = detail::computational_branches(make_channel(sizes), {channel_alice()});
    auto agents = detail::computational_branches(fake, agent_qubits);
    std::vector<JointOutcome> out;
    for (const auto &a : alice) {
        for (const auto &g : agents) {
            out.push_back(detail::split_bits(sizes, a.bits[0], g.bits, a.probability * g.probability));
        }
    }
    return out;
}

inline bool any_bob_mismatch(const JointOutcome &j) {
    return std::any_of(j.bobs.begin(), j.bobs.end(), [&](int b) { return b != j.alice; });
}

inline bool charlies_consistent(const JointOutcome &j) {
    return std::all_of(j.charlies.begin(), j.charlies.end(), [&](int c) { return c == j.charlies.front(); });
}

/// Per-round probability that some Bob's bit differs from Alice's.
inline double exact_mismatch_probability(const PartySizes &sizes, Scenario scenario) {
    double p = 0;
    for (const auto &j : outcome_distribution(sizes, scenario)) {
        if (any_bob_mismatch(j)) {
            p += j.probability;
        }
    }
    return p;
}

/// Per-round probability that a single check round exposes intercept-resend.
inline double exact_detection_probability(const PartySizes &sizes) {
    return exact_mismatch_probability(sizes, Scenario::InterceptResend);
}

/// Probability that at least one of `rounds` independent rounds mismatches.
inline double detection_probability_after(const PartySizes &sizes, std::size_t rounds) {
    return 1.0 - std::pow(1.0 - exact_detection_probability(sizes), static_cast<double>(rounds));
}

/// Samples `rounds` check rounds from the exact joint distribution.
inline CheckStats correlation_check(const PartySizes &sizes, Scenario scenario, std::size_t rounds,
                                    RandomSource &rng, double threshold = kDefaultDetectionThreshold) {
    if (rounds < 1) {
        throw std::invalid_argument("correlation check needs at least one round");
    }
    std::vector<JointOutcome> dist = outcome_distribution(sizes, scenario);
    std::vector<double> cumulative;
    double acc = 0;
    for (const auto &j : dist) {
        acc += j.probability;
        cumulative.push_back(acc);
    }

    std::vector<std::size_t> matches(sizes.m, 0);
    std::size_t consistent = 0;
    for (std::size_t r = 0; r < rounds; r++) {
        double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), dist.size() - 1);
        const JointOutcome &j = dist[k];
        for (std::size_t i = 0; i < sizes.m; i++) {
            if (j.bobs[i] == j.alice) {
                matches[i]++;
            }
        }
        if (charlies_consistent(j)) {
            consistent++;
        }
    }

    CheckStats stats{rounds, {}, 0.0, threshold, false, ""};
    double n = static_cast<double>(rounds);
    for (std::size_t c : matches) {
        stats.alice_bob_match_rate.push_back(static_cast<double>(c) / n);
    }
    stats.charlie_group_consistent_rate = static_cast<double>(consistent) / n;
    double worst = *std::min_element(stats.alice_bob_match_rate.begin(), stats.alice_bob_match_rate.end());
    stats.detected = worst < threshold;
    std::ostringstream rule;
    rule << "min alice_bob_match_rate < " << threshold;
    stats.detection_rule = rule.str();
    return stats;
}

}  // namespace hqis

#endif
