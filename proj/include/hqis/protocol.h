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

#ifndef HQIS_PROTOCOL_H
#define HQIS_PROTOCOL_H

#include <array>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hqis/channel.h"
#include "hqis/secret_state.h"
#include "hqis/state_vector.h"

namespace hqis {

/// A protocol participant. Agent indices are 1-based; Alice's index is 0.
struct Role {
    enum class Kind { Alice, Bob, Charlie };

    Kind kind;
    std::size_t index;

    auto operator<=>(const Role &) const = default;

    static Role alice() {
        return {Kind::Alice, 0};
    }
    static Role bob(std::size_t i) {
        return {Kind::Bob, i};
    }
    static Role charlie(std::size_t j) {
        return {Kind::Charlie, j};
    }

    bool is_bob() const {
        return kind == Kind::Bob;
    }
    bool is_charlie() const {
        return kind == Kind::Charlie;
    }

    /// "alice", "bob:i" or "charlie:j".
    std::string label() const {
        switch (kind) {
            case Kind::Alice:
                return "alice";
            case Kind::Bob:
                return "bob:" + std::to_string(index);
            case Kind::Charlie:
                return "charlie:" + std::to_string(index);
        }
        return "?";
    }

    void validate(const PartySizes &sizes) const {
        if (kind == Kind::Bob && (index < 1 || index > sizes.m)) {
            throw std::out_of_range("Bob index " + std::to_string(index) + " out of range 1.." + std::to_string(sizes.m));
        }
        if (kind == Kind::Charlie && (index < 1 || index > sizes.n)) {
            throw std::out_of_range(
                "Charlie index " + std::to_string(index) + " out of range 1.." + std::to_string(sizes.n));
        }
    }
};

/// The agent who ends up holding the secret. A Bob designee needs one
/// assisting Charlie (Charlie*); a Charlie designee needs none.
struct Designee {
    Role role;
    std::optional<std::size_t> charlie_star;

    static Designee bob(std::size_t i, std::size_t charlie_star) {
        return {Role::bob(i), charlie_star};
    }
    static Designee charlie(std::size_t j) {
        return {Role::charlie(j), std::nullopt};
    }

    void validate(const PartySizes &sizes) const {
        if (role.kind == Role::Kind::Alice) {
            throw std::invalid_argument("Alice cannot be the designee");
        }
        role.validate(sizes);
        if (role.is_bob()) {
            if (!charlie_star) {
                throw std::invalid_argument("a Bob designee needs a Charlie* index");
            }
            Role::charlie(*charlie_star).validate(sizes);
        } else if (charlie_star) {
            throw std::invalid_argument("Charlie* only applies to a Bob designee");
        }
    }
};

/// Local fix-up applied by the designee. Composite forms apply H first.
enum class CorrectionOp { I, X, iY, Z, H, XH, iYH, ZH };

inline std::string_view to_string(CorrectionOp op) {
    switch (op) {
        case CorrectionOp::I:
            return "I";
        case CorrectionOp::X:
            return "X";
        case CorrectionOp::iY:
            return "iY";
        case CorrectionOp::Z:
            return "Z";
        case CorrectionOp::H:
            return "H";
        case CorrectionOp::XH:
            return "XH";
        case CorrectionOp::iYH:
            return "iYH";
        case CorrectionOp::ZH:
            return "ZH";
    }
    return "?";
}

inline Gate2 gate_of(CorrectionOp op) {
    switch (op) {
        case CorrectionOp::I:
            return gates::I;
        case CorrectionOp::X:
            return gates::X;
        case CorrectionOp::iY:
            return gates::iY;
        case CorrectionOp::Z:
            return gates::Z;
        case CorrectionOp::H:
            return gates::H;
        case CorrectionOp::XH:
            return gates::X * gates::H;
        case CorrectionOp::iYH:
            return gates::iY * gates::H;
        case CorrectionOp::ZH:
            return gates::Z * gates::H;
    }
    return gates::I;
}

/// Classical value of a single-qubit outcome: |0>, |+> -> 0 and |1>, |-> -> 1.
inline int encode_outcome(MeasBasis basis, int outcome) {
    (void)basis;
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("measurement outcome must be 0 or 1");
    }
    return outcome;
}

/// Modulo-2 sum. The empty sum is 0.
inline int parity(std::span<const int> bits) {
    int p = 0;
    for (int b : bits) {
        p ^= b & 1;
    }
    return p;
}

inline int parity(std::initializer_list<int> bits) {
    return parity(std::span<const int>(bits.begin(), bits.size()));
}

// Correction tables. Each row pairs a "+" Bell outcome with its "-" partner,
// whose parity column is flipped.

struct BobTableRow {
    BellOutcome plus;
    int v_sum_plus;
    BellOutcome minus;
    int v_sum_minus;
    CorrectionOp op;
};

struct CharlieTableRow {
    BellOutcome plus;
    int v_g1_plus;
    BellOutcome minus;
    int v_g1_minus;
    int v_g2;
    CorrectionOp op;
};

inline constexpr std::array<BobTableRow, 4> kBobTable = {{
    {BellOutcome::PhiPlus, 0, BellOutcome::PhiMinus, 1, CorrectionOp::I},
    {BellOutcome::PhiPlus, 1, BellOutcome::PhiMinus, 0, CorrectionOp::Z},
    {BellOutcome::PsiPlus, 0, BellOutcome::PsiMinus, 1, CorrectionOp::X},
    {BellOutcome::PsiPlus, 1, BellOutcome::PsiMinus, 0, CorrectionOp::iY},
}};

inline constexpr std::array<CharlieTableRow, 8> kCharlieTable = {{
    {BellOutcome::PhiPlus, 0, BellOutcome::PhiMinus, 1, 0, CorrectionOp::H},
    {BellOutcome::PhiPlus, 1, BellOutcome::PhiMinus, 0, 0, CorrectionOp::ZH},
    {BellOutcome::PhiPlus, 0, BellOutcome::PhiMinus, 1, 1, CorrectionOp::XH},
    {BellOutcome::PhiPlus, 1, BellOutcome::PhiMinus, 0, 1, CorrectionOp::iYH},
    {BellOutcome::PsiPlus, 0, BellOutcome::PsiMinus, 1, 1, CorrectionOp::H},
    {BellOutcome::PsiPlus, 1, BellOutcome::PsiMinus, 0, 1, CorrectionOp::ZH},
    {BellOutcome::PsiPlus, 0, BellOutcome::PsiMinus, 1, 0, CorrectionOp::XH},
    {BellOutcome::PsiPlus, 1, BellOutcome::PsiMinus, 0, 0, CorrectionOp::iYH},
}};

inline CorrectionOp correction_for_bob(BellOutcome bell, int v_sum) {
    for (const auto &row : kBobTable) {
        if ((row.plus == bell && row.v_sum_plus == v_sum) || (row.minus == bell && row.v_sum_minus == v_sum)) {
            return row.op;
        }
    }
    throw std::invalid_argument("V_sum must be 0 or 1");
}

inline CorrectionOp correction_for_charlie(BellOutcome bell, int v_g1, int v_g2) {
    for (const auto &row : kCharlieTable) {
        if (row.v_g2 != v_g2) {
            continue;
        }
        if ((row.plus == bell && row.v_g1_plus == v_g1) || (row.minus == bell && row.v_g1_minus == v_g1)) {
            return row.op;
        }
    }
    throw std::invalid_argument("V_G1 and V_G2 must be 0 or 1");
}

/// Record of one protocol execution, sampled or enumerated.
struct TrialResult {
    BellOutcome bell;
    /// Encoded outcome of every agent who measured.
    std::map<Role, int> classical_bits;
    int v_g1;
    /// Charlie*'s bit for a Bob designee; parity of the other Charlies otherwise.
    int v_g2_or_charlie_star;
    CorrectionOp correction;
    double branch_probability;
    double fidelity;
    /// Tr(rho^2) of the designee's qubit after correction.
    double designee_purity;
};

constexpr std::size_t kDefaultBranchLimit = std::size_t{1} << 20;

/// After Alice's Bell measurement the register holds B_1..B_m, C_1..C_n.
inline QubitId agent_qubit(const PartySizes &sizes, const Role &role) {
    role.validate(sizes);
    switch (role.kind) {
        case Role::Kind::Bob:
            return {role.index - 1};
        case Role::Kind::Charlie:
            return {sizes.m + role.index - 1};
        case Role::Kind::Alice:
            break;
    }
    throw std::invalid_argument("Alice holds no qubit after her Bell measurement");
}

/// Who measures what, in which order, for a given designee.
struct RecoveryPlan {
    struct Step {
        Role role;
        QubitId qubit;
        MeasBasis basis;
    };

    PartySizes sizes;
    Designee designee;
    QubitId target;
    std::vector<Step> steps;
};

/// A Bob designee is helped by the other Bobs (|+>/|-> basis) and Charlie*
/// (computational basis); the remaining Charlies stay idle. A Charlie
/// designee is helped by every Bob and every other Charlie, all in the
/// |+>/|-> basis.
inline RecoveryPlan plan_recovery(const PartySizes &sizes, const Designee &designee) {
    sizes.validate();
    designee.validate(sizes);
    RecoveryPlan plan{sizes, designee, agent_qubit(sizes, designee.role), {}};
    auto add = [&](Role r, MeasBasis b) { plan.steps.push_back({r, agent_qubit(sizes, r), b}); };
    for (std::size_t i = 1; i <= sizes.m; i++) {
        if (designee.role != Role::bob(i)) {
            add(Role::bob(i), MeasBasis::PlusMinus);
        }
    }
    if (designee.role.is_bob()) {
        add(Role::charlie(*designee.charlie_star), MeasBasis::Computational);
    } else {
        for (std::size_t j = 1; j <= sizes.n; j++) {
            if (designee.role != Role::charlie(j)) {
                add(Role::charlie(j), MeasBasis::PlusMinus);
            }
        }
    }
    return plan;
}

/// 4 * 2^(number of assisting agents).
inline std::size_t branch_count(const RecoveryPlan &plan) {
    if (plan.steps.size() >= 8 * sizeof(std::size_t) - 3) {
        return static_cast<std::size_t>(-1);
    }
    return std::size_t{4} << plan.steps.size();
}

namespace detail {

struct FinishedBranch {
    TrialResult result;
    StateVector agents;
};

// Classical post-processing and the designee's correction, given every
// assisting agent's raw outcome (aligned with plan.steps).
inline FinishedBranch finish_branch(const RecoveryPlan &plan, const SecretState &secret, BellOutcome bell,
                                    std::span<const int> outcomes, double probability, const StateVector &agents) {
    TrialResult r{bell, {}, 0, 0, CorrectionOp::I, probability, 0.0, 0.0};
    std::vector<int> bob_bits;
    std::vector<int> charlie_bits;
    for (std::size_t k = 0; k < plan.steps.size(); k++) {
        const auto &step = plan.steps[k];
        int bit = encode_outcome(step.basis, outcomes[k]);
        r.classical_bits[step.role] = bit;
        (step.role.is_bob() ? bob_bits : charlie_bits).push_back(bit);
    }
    r.v_g1 = parity(bob_bits);
    r.v_g2_or_charlie_star = parity(charlie_bits);
    if (plan.designee.role.is_bob()) {
        r.correction = correction_for_bob(bell, r.v_g1 ^ r.v_g2_or_charlie_star);
    } else {
        r.correction = correction_for_charlie(bell, r.v_g1, r.v_g2_or_charlie_star);
    }
    StateVector fixed = apply_gate(agents, plan.target, gate_of(r.correction));
    DensityMatrix2 rho = reduced_density(fixed, plan.target);
    r.designee_purity = rho.purity();
    if (auto q = factor_out_qubit(fixed, plan.target)) {
        r.fidelity = fidelity_with_secret(*q, secret);
    } else {
        r.fidelity = fidelity_with_secret(rho, secret);
    }
    return {std::move(r), std::move(fixed)};
}

template <class Visitor>
void walk_agents(const RecoveryPlan &plan, const SecretState &secret, BellOutcome bell, const StateVector &state,
                 double probability, std::vector<int> &outcomes, Visitor &visit) {
    std::size_t k = outcomes.size();
    if (k == plan.steps.size()) {
        FinishedBranch done = finish_branch(plan, secret, bell, outcomes, probability, state);
        visit(done.result, done.agents);
        return;
    }
    for (int o : {0, 1}) {
        Branch b = project(state, plan.steps[k].qubit, plan.steps[k].basis, o);
        if (!b.valid()) {
            continue;
        }
        outcomes.push_back(o);
        walk_agents(plan, secret, bell, *b.state, probability * b.probability, outcomes, visit);
        outcomes.pop_back();
    }
}

}  // namespace detail

/// Visits every nonzero-probability branch in a fixed order: Bell outcome
/// first, then each assisting agent's outcome (0 before 1) in plan order.
/// The visitor receives the result and the corrected agent register.
template <class Visitor>
void for_each_branch(const PartySizes &sizes, const Designee &designee, const SecretState &secret, Visitor &&visit,
                     std::size_t branch_limit = kDefaultBranchLimit) {
    RecoveryPlan plan = plan_recovery(sizes, designee);
    if (branch_count(plan) > branch_limit) {
        throw resource_limit_error(
            "enumeration needs " + std::to_string(branch_count(plan)) + " branches, above the limit of " +
            std::to_string(branch_limit) + " (use smaller party sizes or sample instead)");
    }
    StateVector whole = compose_with_secret(secret, make_channel(sizes));
    std::vector<int> outcomes;
    for (BellOutcome bell : kBellOutcomes) {
        Branch b = bell_project(whole, QubitId{0}, QubitId{1}, bell);
        if (!b.valid()) {
            continue;
        }
        detail::walk_agents(plan, secret, bell, *b.state, b.probability, outcomes, visit);
    }
}

inline std::vector<TrialResult> enumerate_branches(const PartySizes &sizes, const Designee &designee,
                                                   const SecretState &secret,
                                                   std::size_t branch_limit = kDefaultBranchLimit) {
    std::vector<TrialResult> out;
    for_each_branch(
        sizes, designee, secret, [&](const TrialResult &r, const StateVector &) { out.push_back(r); }, branch_limit);
    return out;
}

/// One sampled protocol execution for any designee.
inline TrialResult run_recovery(const PartySizes &sizes, const Designee &designee, const SecretState &secret,
                                RandomSource &rng) {
    RecoveryPlan plan = plan_recovery(sizes, designee);
    StateVector whole = compose_with_secret(secret, make_channel(sizes));
    BellMeasured alice = bell_measure(whole, QubitId{0}, QubitId{1}, rng);
    StateVector state = std::move(alice.state);
    double probability = alice.probability;
    std::vector<int> outcomes;
    for (const auto &step : plan.steps) {
        Measured m = measure(state, step.qubit, step.basis, rng);
        outcomes.push_back(m.outcome);
        probability *= m.probability;
        state = std::move(m.state);
    }
    return detail::finish_branch(plan, secret, alice.outcome, outcomes, probability, state).result;
}

inline TrialResult run_bob_recovery(const PartySizes &sizes, const Designee &designee, const SecretState &secret,
                                    RandomSource &rng) {
    if (!designee.role.is_bob()) {
        throw std::invalid_argument("Bob recovery needs a Bob designee, got " + designee.role.label());
    }
    return run_recovery(sizes, designee, secret, rng);
}

inline TrialResult run_charlie_recovery(const PartySizes &sizes, const Designee &designee, const SecretState &secret,
                                        RandomSource &rng) {
    if (!designee.role.is_charlie()) {
        throw std::invalid_argument("Charlie recovery needs a Charlie designee, got " + designee.role.label());
    }
    return run_recovery(sizes, designee, secret, rng);
}

/// Reduced state of one agent's qubit right after Alice announces `bell`.
inline DensityMatrix2 agent_marginal(const PartySizes &sizes, const SecretState &secret, BellOutcome bell,
                                     const Role &agent) {
    sizes.validate();
    if (agent.kind == Role::Kind::Alice) {
        throw std::invalid_argument("agent_marginal is defined for Bobs and Charlies only");
    }
    QubitId q = agent_qubit(sizes, agent);
    Branch b = bell_project(compose_with_secret(secret, make_channel(sizes)), QubitId{0}, QubitId{1}, bell);
    if (!b.valid()) {
        throw std::logic_error("Bell outcome has zero probability");
    }
    return reduced_density(*b.state, q);
}

}  // namespace hqis

#endif
