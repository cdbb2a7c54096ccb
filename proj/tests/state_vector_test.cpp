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


#include "hqis/state_vector.h"

#include <cmath>
#include <array>
#include <map>
#include <random>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace hqis;
using namespace hqis::testing;

TEST(state_vector, basis_state) {
    StateVector s = basis_state(1, "0");
    ASSERT_EQ(s.size(), 2u);
    ASSERT_EQ(s[0], Complex(1));
    ASSERT_EQ(s[1], Complex(0));

    StateVector t = basis_state(2, "10");
    for (std::size_t i = 0; i < 4; i++) {
        ASSERT_EQ(t[i], Complex(i == 2 ? 1 : 0));
    }

    StateVector u = basis_state(3, "111");
    ASSERT_NEAR(u.norm_squared(), 1.0, 1e-15);
    int nonzero = 0;
    for (const auto &a : u.amplitudes()) {
        nonzero += a != Complex(0);
    }
    ASSERT_EQ(nonzero, 1);
}

TEST(state_vector, basis_state_errors) {
    ASSERT_THROW(basis_state(2, "0"), std::invalid_argument);
    ASSERT_THROW(basis_state(0, ""), std::invalid_argument);
    ASSERT_THROW(basis_state(2, "0x"), std::invalid_argument);
    ASSERT_THROW(basis_state(25, std::string(25, '0')), resource_limit_error);
    {
        ScopedEnv env("HQIS_MAX_QUBITS", "3");
        ASSERT_EQ(max_qubits(), 3u);
        ASSERT_THROW(basis_state(4, "0000"), resource_limit_error);
        ASSERT_NO_THROW(basis_state(3, "000"));
    }
    ASSERT_EQ(max_qubits(), kDefaultMaxQubits);
}

TEST(state_vector, constructor_checks) {
    ASSERT_THROW(StateVector(2, {1.0, 0.0}), std::invalid_argument);
    ASSERT_THROW(StateVector(1, {1.0, 1.0}), std::invalid_argument);
    ASSERT_THROW(StateVector::renormalized(1, {0.0, 0.0}), std::invalid_argument);
}

TEST(state_vector, gates_are_unitary) {
    for (const Gate2 &g : {gates::I, gates::X, gates::Y, gates::iY, gates::Z, gates::H}) {
        ASSERT_TRUE(g.is_unitary());
    }
    Gate2 hh = gates::H * gates::H;
    for (std::size_t k = 0; k < 4; k++) {
        ASSERT_NEAR(std::abs(hh.m[k] - gates::I.m[k]), 0.0, 1e-15);
    }
    // iY is i times sigma_y.
    for (std::size_t k = 0; k < 4; k++) {
        ASSERT_NEAR(std::abs(gates::iY.m[k] - Complex(0, 1) * gates::Y.m[k]), 0.0, 1e-15);
    }
    ASSERT_FALSE((Gate2{{1.0, 1.0, 0.0, 1.0}}).is_unitary());
}

TEST(state_vector, apply_gate_examples) {
    StateVector plus = apply_gate(basis_state(1, "0"), QubitId{0}, gates::H);
    ASSERT_NEAR(std::abs(plus[0] - M_SQRT1_2), 0, 1e-15);
    ASSERT_NEAR(std::abs(plus[1] - M_SQRT1_2), 0, 1e-15);

    StateVector minus = apply_gate(plus, QubitId{0}, gates::Z);
    ASSERT_NEAR(std::abs(minus[0] - M_SQRT1_2), 0, 1e-15);
    ASSERT_NEAR(std::abs(minus[1] + M_SQRT1_2), 0, 1e-15);

    ASSERT_THROW(apply_gate(plus, QubitId{1}, gates::H), std::out_of_range);
    ASSERT_THROW(apply_gate(plus, QubitId{0}, Gate2{{1.0, 1.0, 0.0, 1.0}}), std::invalid_argument);
}

TEST(state_vector, hadamard_twice_is_identity) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; trial++) {
        StateVector s = random_state(3, rng);
        for (std::size_t q = 0; q < 3; q++) {
            StateVector t = apply_gate(apply_gate(s, QubitId{q}, gates::H), QubitId{q}, gates::H);
            ASSERT_LT(max_abs_diff(s, t), 1e-12);
        }
    }
}

TEST(state_vector, apply_gate_matches_dense_operator) {
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 4; n++) {
        StateVector s = random_state(n, rng);
        for (std::size_t q = 0; q < n; q++) {
            for (const Gate2 &g : {gates::X, gates::Y, gates::Z, gates::H, gates::iY * gates::H}) {
                auto expected = mat_vec(embed(g, q, n), s.amplitudes());
                StateVector got = apply_gate(s, QubitId{q}, g);
                ASSERT_LT(max_diff(expected, got.amplitudes()), 1e-12);
                ASSERT_NEAR(got.norm_squared(), 1.0, 1e-12);
            }
        }
    }
}

TEST(state_vector, tensor) {
    StateVector t = tensor(basis_state(1, "0"), basis_state(1, "1"));
    ASSERT_LT(max_abs_diff(t, basis_state(2, "01")), 1e-15);

    std::mt19937_64 rng(5);
    StateVector a = random_state(2, rng);
    StateVector b = random_state(3, rng);
    StateVector ab = tensor(a, b);
    ASSERT_EQ(ab.num_qubits(), 5u);
    ASSERT_NEAR(ab.norm_squared(), a.norm_squared() * b.norm_squared(), 1e-12);
    ASSERT_LT(max_diff(ab.amplitudes(), kron_vec(a.amplitudes(), b.amplitudes())), 1e-15);

    StateVector secret(1, {0.6, Complex(0, 0.8)});
    StateVector sz = tensor(secret, basis_state(1, "0"));
    ASSERT_LT(max_diff(sz.amplitudes(), {0.6, 0.0, Complex(0, 0.8), 0.0}), 1e-15);

    ScopedEnv env("HQIS_MAX_QUBITS", "4");
    ASSERT_THROW(tensor(basis_state(2, "00"), basis_state(3, "000")), resource_limit_error);
}

TEST(state_vector, project_examples) {
    Branch b = project(basis_state(1, "0"), QubitId{0}, MeasBasis::Computational, 0);
    ASSERT_TRUE(b.valid());
    ASSERT_NEAR(b.probability, 1.0, 1e-15);
    ASSERT_LT(max_abs_diff(*b.state, basis_state(1, "0")), 1e-15);

    Branch impossible = project(basis_state(1, "0"), QubitId{0}, MeasBasis::Computational, 1);
    ASSERT_FALSE(impossible.valid());
    ASSERT_NEAR(impossible.probability, 0.0, 1e-15);

    StateVector bell(2, {M_SQRT1_2, 0.0, 0.0, M_SQRT1_2});
    Branch one = project(bell, QubitId{0}, MeasBasis::Computational, 1);
    ASSERT_NEAR(one.probability, 0.5, 1e-15);
    ASSERT_LT(max_abs_diff(*one.state, basis_state(2, "11")), 1e-15);

    ASSERT_THROW(project(bell, QubitId{2}, MeasBasis::Computational, 0), std::out_of_range);
    ASSERT_THROW(project(bell, QubitId{0}, MeasBasis::Computational, 2), std::invalid_argument);
}

TEST(state_vector, project_plus_minus_leaves_eigenstate) {
    StateVector plus = apply_gate(basis_state(1, "0"), QubitId{0}, gates::H);
    Branch p = project(plus, QubitId{0}, MeasBasis::PlusMinus, 0);
    ASSERT_NEAR(p.probability, 1.0, 1e-15);
    ASSERT_FALSE(project(plus, QubitId{0}, MeasBasis::PlusMinus, 1).valid());

    Branch m = project(basis_state(1, "0"), QubitId{0}, MeasBasis::PlusMinus, 1);
    ASSERT_NEAR(m.probability, 0.5, 1e-15);
    ASSERT_NEAR(std::abs((*m.state)[0] + (*m.state)[1]), 0.0, 1e-15);
}

TEST(state_vector, measure_deterministic_cases) {
    RandomSource rng(1);
    for (int k = 0; k < 100; k++) {
        ASSERT_EQ(measure(basis_state(1, "1"), QubitId{0}, MeasBasis::Computational, rng).outcome, 1);
        StateVector plus = apply_gate(basis_state(1, "0"), QubitId{0}, gates::H);
        ASSERT_EQ(measure(plus, QubitId{0}, MeasBasis::PlusMinus, rng).outcome, 0);
    }
}

TEST(state_vector, measure_born_rule_frequency) {
    StateVector plus = apply_gate(basis_state(1, "0"), QubitId{0}, gates::H);
    RandomSource rng(2024);
    int zeros = 0;
    const int samples = 100000;
    for (int k = 0; k < samples; k++) {
        Measured m = measure(plus, QubitId{0}, MeasBasis::Computational, rng);
        zeros += m.outcome == 0;
        ASSERT_NEAR(m.probability, 0.5, 1e-15);
    }
    ASSERT_NEAR(zeros / double(samples), 0.5, 0.01);
}

TEST(state_vector, measure_is_seed_deterministic) {
    std::mt19937_64 g(9);
    StateVector s = random_state(4, g);
    RandomSource a(77), b(77);
    for (int k = 0; k < 50; k++) {
        auto ma = measure(s, QubitId{static_cast<std::size_t>(k % 4)}, MeasBasis::PlusMinus, a);
        auto mb = measure(s, QubitId{static_cast<std::size_t>(k % 4)}, MeasBasis::PlusMinus, b);
        ASSERT_EQ(ma.outcome, mb.outcome);
        ASSERT_EQ(max_abs_diff(ma.state, mb.state), 0.0);
    }
}

TEST(state_vector, bell_project_eigenstate) {
    StateVector phi_plus(2, {M_SQRT1_2, 0.0, 0.0, M_SQRT1_2});
    Branch b = bell_project(phi_plus, QubitId{0}, QubitId{1}, BellOutcome::PhiPlus);
    ASSERT_TRUE(b.valid());
    ASSERT_NEAR(b.probability, 1.0, 1e-15);
    ASSERT_EQ(b.state->num_qubits(), 0u);
    for (BellOutcome o : {BellOutcome::PhiMinus, BellOutcome::PsiPlus, BellOutcome::PsiMinus}) {
        ASSERT_FALSE(bell_project(phi_plus, QubitId{0}, QubitId{1}, o).valid());
    }
    ASSERT_THROW(bell_project(phi_plus, QubitId{0}, QubitId{0}, BellOutcome::PhiPlus), std::invalid_argument);
    ASSERT_THROW(bell_project(phi_plus, QubitId{0}, QubitId{2}, BellOutcome::PhiPlus), std::out_of_range);
}

// Oracle: <Bell|_{q1 q2} (x) I applied by explicit index bookkeeping over
// bit strings, for arbitrary (possibly non-adjacent, reversed) qubit pairs.
TEST(state_vector, bell_project_matches_explicit_inner_products) {
    std::mt19937_64 rng(42);
    const double r = M_SQRT1_2;
    std::map<BellOutcome, std::array<double, 4>> coeff = {
        {BellOutcome::PhiPlus, {r, 0, 0, r}},
        {BellOutcome::PhiMinus, {r, 0, 0, -r}},
        {BellOutcome::PsiPlus, {0, r, r, 0}},
        {BellOutcome::PsiMinus, {0, r, -r, 0}},
    };
    for (int trial = 0; trial < 10; trial++) {
        std::size_t n = 4;
        StateVector s = random_state(n, rng);
        for (std::size_t q1 = 0; q1 < n; q1++) {
            for (std::size_t q2 = 0; q2 < n; q2++) {
                if (q1 == q2) continue;
                double total = 0;
                for (BellOutcome o : kBellOutcomes) {
                    std::vector<Complex> expected(4);
                    for (std::size_t i = 0; i < s.size(); i++) {
                        int a = bit_at(i, q1, n), b = bit_at(i, q2, n);
                        std::size_t rest = 0;
                        for (std::size_t k = 0; k < n; k++) {
                            if (k != q1 && k != q2) rest = rest * 2 + bit_at(i, k, n);
                        }
                        expected[rest] += coeff[o][2 * a + b] * s[i];
                    }
                    double p = std::real(inner(expected, expected));
                    Branch got = bell_project(s, QubitId{q1}, QubitId{q2}, o);
                    ASSERT_NEAR(got.probability, p, 1e-12);
                    ASSERT_LT(max_diff((1.0 / std::sqrt(p)) * expected, got.state->amplitudes()), 1e-12);
                    total += got.probability;
                }
                ASSERT_NEAR(total, 1.0, 1e-12);
            }
        }
    }
}

TEST(state_vector, bell_measure_samples_valid_outcomes) {
    std::mt19937_64 g(8);
    StateVector s = random_state(3, g);
    RandomSource rng(3);
    std::map<BellOutcome, int> counts;
    const int samples = 40000;
    for (int k = 0; k < samples; k++) {
        BellMeasured m = bell_measure(s, QubitId{0}, QubitId{2}, rng);
        counts[m.outcome]++;
        ASSERT_EQ(m.state.num_qubits(), 1u);
    }
    for (BellOutcome o : kBellOutcomes) {
        double p = bell_project(s, QubitId{0}, QubitId{2}, o).probability;
        double se = std::sqrt(p * (1 - p) / samples);
        ASSERT_NEAR(counts[o] / double(samples), p, 4 * se + 1e-12);
    }
}

TEST(state_vector, reduced_density_examples) {
    DensityMatrix2 r = reduced_density(basis_state(2, "01"), QubitId{0});
    ASSERT_LT(r.distance(DensityMatrix2::diagonal(1, 0)), 1e-15);
    r = reduced_density(basis_state(2, "01"), QubitId{1});
    ASSERT_LT(r.distance(DensityMatrix2::diagonal(0, 1)), 1e-15);

    StateVector bell(2, {M_SQRT1_2, 0.0, 0.0, M_SQRT1_2});
    for (std::size_t q : {0u, 1u}) {
        ASSERT_LT(reduced_density(bell, QubitId{q}).distance(DensityMatrix2::diagonal(0.5, 0.5)), 1e-15);
    }
}

TEST(state_vector, reduced_density_matches_full_partial_trace) {
    std::mt19937_64 rng(17);
    for (std::size_t n = 1; n <= 4; n++) {
        StateVector s = random_state(n, rng);
        for (std::size_t q = 0; q < n; q++) {
            DensityMatrix2 got = reduced_density(s, QubitId{q});
            ASSERT_LT(got.distance(partial_trace_oracle(s, q)), 1e-12);
            ASSERT_NEAR(got.trace(), 1.0, 1e-12);
            ASSERT_NEAR(std::abs(got(0, 1) - std::conj(got(1, 0))), 0.0, 1e-12);
            ASSERT_GE(got.eigenvalues()[0], -1e-12);
        }
    }
}

TEST(state_vector, fidelity) {
    SecretState zero = secrets::zero();
    ASSERT_NEAR(fidelity_with_secret(basis_state(1, "0"), zero), 1.0, 1e-15);
    ASSERT_NEAR(fidelity_with_secret(basis_state(1, "1"), zero), 0.0, 1e-15);
    ASSERT_THROW(fidelity_with_secret(basis_state(2, "00"), zero), std::invalid_argument);

    SecretState xi(0.6, Complex(0, 0.8));
    for (double theta : {0.0, 0.3, 1.7, 3.1, -2.2}) {
        Complex phase = std::polar(1.0, theta);
        StateVector s(1, {phase * xi.alpha(), phase * xi.beta()});
        ASSERT_NEAR(fidelity_with_secret(s, xi), 1.0, 1e-12);
        SecretState rotated(phase * xi.alpha(), phase * xi.beta());
        ASSERT_NEAR(fidelity_with_secret(StateVector(1, {xi.alpha(), xi.beta()}), rotated), 1.0, 1e-12);
    }
}

TEST(state_vector, factor_out_qubit) {
    StateVector s = tensor(StateVector(1, {0.6, Complex(0, 0.8)}), basis_state(1, "1"));
    auto q = factor_out_qubit(s, QubitId{0});
    ASSERT_TRUE(q.has_value());
    ASSERT_NEAR(fidelity_with_secret(*q, SecretState(0.6, Complex(0, 0.8))), 1.0, 1e-12);

    StateVector bell(2, {M_SQRT1_2, 0.0, 0.0, M_SQRT1_2});
    ASSERT_FALSE(factor_out_qubit(bell, QubitId{0}).has_value());
}

TEST(state_vector_properties, norm_and_completeness) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 25; trial++) {
        std::size_t n = 1 + trial % 5;
        StateVector s = random_state(n, rng);
        for (std::size_t q = 0; q < n; q++) {
            for (MeasBasis basis : {MeasBasis::Computational, MeasBasis::PlusMinus}) {
                Branch b0 = project(s, QubitId{q}, basis, 0);
                Branch b1 = project(s, QubitId{q}, basis, 1);
                ASSERT_NEAR(b0.probability + b1.probability, 1.0, 1e-12);
                ASSERT_NEAR(b0.state->norm_squared(), 1.0, 1e-10);
                ASSERT_NEAR(b1.state->norm_squared(), 1.0, 1e-10);
            }
        }
    }
}

TEST(state_vector_properties, plus_minus_equals_hadamard_then_computational) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; trial++) {
        std::size_t n = 1 + trial % 4;
        StateVector s = random_state(n, rng);
        for (std::size_t q = 0; q < n; q++) {
            StateVector h = apply_gate(s, QubitId{q}, gates::H);
            for (int o : {0, 1}) {
                ASSERT_NEAR(project(s, QubitId{q}, MeasBasis::PlusMinus, o).probability,
                            project(h, QubitId{q}, MeasBasis::Computational, o).probability, 1e-12);
            }
        }
    }
}

TEST(state_vector_properties, product_state_marginals_are_pure) {
    std::mt19937_64 rng(66);
    for (int trial = 0; trial < 20; trial++) {
        StateVector s = tensor(tensor(random_state(1, rng), random_state(1, rng)), random_state(1, rng));
        for (std::size_t q = 0; q < 3; q++) {
            ASSERT_NEAR(reduced_density(s, QubitId{q}).purity(), 1.0, 1e-10);
        }
    }
}

TEST(state_vector_properties, permutation_equivariance) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; trial++) {
        StateVector s = random_state(4, rng);
        QubitId a{static_cast<std::size_t>(trial % 4)}, b{static_cast<std::size_t>((trial + 1) % 4)};
        // Relabel then act on b == act on a then relabel.
        StateVector lhs = apply_gate(swap_qubits(s, a, b), b, gates::H);
        StateVector rhs = swap_qubits(apply_gate(s, a, gates::H), a, b);
        ASSERT_LT(max_abs_diff(lhs, rhs), 1e-12);

        Branch pl = project(swap_qubits(s, a, b), b, MeasBasis::PlusMinus, 1);
        Branch pr = project(s, a, MeasBasis::PlusMinus, 1);
        ASSERT_NEAR(pl.probability, pr.probability, 1e-12);
        ASSERT_LT(max_abs_diff(*pl.state, swap_qubits(*pr.state, a, b)), 1e-12);

        ASSERT_LT(reduced_density(swap_qubits(s, a, b), b).distance(reduced_density(s, a)), 1e-12);
    }
}
