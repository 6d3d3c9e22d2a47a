// Copyright 2026 The cvtele Authors
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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cvtele/errors.hpp"
#include "cvtele/metrics.hpp"
#include "cvtele/teleporter.hpp"

using namespace cvtele;
using namespace cvtele::metrics;

namespace {

constexpr Quadratures kCoherent{1.0, 1.0};
constexpr Quadratures kUnity{1.0, 1.0};

}  // namespace

TEST(fidelity, reference_cases) {
    const FidelityResult perfect = fidelity(kCoherent, kCoherent, {3, 4}, kUnity);
    EXPECT_DOUBLE_EQ(perfect.fidelity, 1.0);
    EXPECT_EQ(perfect.k_plus, 0.0);
    EXPECT_NEAR(fidelity(kCoherent, {3, 3}, {2.9, 3.5}, kUnity).fidelity, 0.5, 1e-15);
    EXPECT_NEAR(fidelity(kCoherent, {1.88, 1.88}, {2.9, 3.5}, kUnity).fidelity, 2 / 2.88, 1e-15);
    EXPECT_NEAR(fidelity(kCoherent, {1.88, 1.88}, {0, 0}, kUnity).fidelity, 0.694, 5e-4);
    EXPECT_THROW(fidelity(kCoherent, {0, 1}, {0, 0}, kUnity), DomainError);
}

TEST(fidelity, gain_penalty_by_hand) {
    // alpha+ = 2, g+ = 0.5, V_out+ = 3: k+ = 4 * 0.25 / 4 = 0.25.
    const FidelityResult r = fidelity(kCoherent, {3, 1}, {2, 0}, {0.5, 1});
    EXPECT_NEAR(r.k_plus, 0.25, 1e-15);
    EXPECT_EQ(r.k_minus, 0.0);
    EXPECT_NEAR(r.fidelity, std::exp(-0.25) / std::sqrt(2.0), 1e-15);
    // A squeezed input enters through the prefactor only.
    EXPECT_NEAR(fidelity({0.5, 2}, {0.5, 2}, {0, 0}, kUnity).fidelity, 1.0, 1e-15);
}

TEST(fidelity_property, symmetry_and_monotonicity) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double s = 0.3 + u(rng);
        const Quadratures vin{s, 1 / s};
        const Quadratures vo{1 + 3 * u(rng), 1 + 3 * u(rng)};
        const Quadratures a{5 * u(rng), 5 * u(rng)};
        const Quadratures g{2 * u(rng), 2 * u(rng)};
        const double f = fidelity(vin, vo, a, g).fidelity;
        const double swapped =
            fidelity({vin.minus, vin.plus}, {vo.minus, vo.plus}, {a.minus, a.plus}, {g.minus, g.plus}).fidelity;
        ASSERT_NEAR(f, swapped, 1e-14);
        ASSERT_GT(f, 0.0);
        ASSERT_LE(f, 1.0);
        // At unity gain k vanishes and the variances act alone.
        const double f1 = fidelity(vin, vo, a, kUnity).fidelity;
        ASSERT_LT(fidelity(vin, {vo.plus + 0.1, vo.minus}, a, kUnity).fidelity, f1);
        ASSERT_LT(fidelity(vin, {vo.plus, vo.minus + 0.1}, a, kUnity).fidelity, f1);
        ASSERT_GE(f1, f);
        if (a.plus > 0.0 && std::abs(1 - g.plus) > 1e-3) {
            const double away = g.plus > 1 ? g.plus + 0.1 : g.plus - 0.1;
            ASSERT_LT(fidelity(vin, vo, a, {away, g.minus}).fidelity, f);
        }
    }
}

TEST(transfer, reference_cases) {
    const TransferResult classical = transfer(kCoherent, {3, 3}, {2.9, 3.5}, kUnity);
    EXPECT_NEAR(classical.t_plus, 1.0 / 3, 1e-15);
    EXPECT_NEAR(classical.t_q, 2.0 / 3, 1e-15);
    const TransferResult perfect = transfer(kCoherent, {1 + 2e-6, 1 + 2e-6}, {1, 1}, kUnity);
    EXPECT_NEAR(perfect.t_q, 2.0, 1e-5);
    EXPECT_THROW(transfer(kCoherent, {3, 3}, {0, 1}, kUnity), UndefinedTransferError);
}

TEST(transfer, power_convention_depends_on_gain_squared) {
    const TransferResult r = transfer(kCoherent, {2, 2}, {1, 1}, {0.5, 1.5});
    EXPECT_NEAR(r.t_plus, 0.25 / 2, 1e-15);
    EXPECT_NEAR(r.t_minus, 2.25 / 2, 1e-15);
}

TEST(transfer_property, minimum_uncertainty_input_sums) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double s = u(rng);
        const TransferResult r = transfer({s, 1 / s}, {u(rng) + 1, u(rng) + 1}, {u(rng), u(rng)}, {u(rng), u(rng)});
        ASSERT_NEAR(r.t_q, r.t_plus + r.t_minus, 1e-12);
    }
}

TEST(conditional, reference_cases) {
    const ConditionalResult c = conditional(kCoherent, {3, 3}, kUnity);
    EXPECT_NEAR(c.v_plus, 2.0, 1e-15);
    EXPECT_NEAR(c.v_q, 4.0, 1e-15);
    EXPECT_NEAR(c.v_sum, 4.0, 1e-15);
    EXPECT_NEAR(conditional(kCoherent, {1 + 2e-6, 1 + 2e-6}, kUnity).v_q, 4e-12, 1e-15);
    EXPECT_THROW(conditional(kCoherent, {0.5, 1}, kUnity), ModelViolationError);
}

TEST(conditional_property, equals_covariance_definition_for_teleport_outcomes) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        TeleporterConfig c;
        const double s1 = 0.05 + 0.95 * u(rng);
        const double s2 = 0.05 + 0.95 * u(rng);
        c.opa1 = {s1, (1 + u(rng)) / s1, optics::Orientation::amplitude_squeezed};
        c.opa2 = {s2, (1 + u(rng)) / s2, optics::Orientation::amplitude_squeezed};
        c.eta_entanglement = u(rng);
        c.eta_alice = 0.2 + 0.8 * u(rng);
        c.dark_noise_alice = 0.3 * u(rng);
        c.gain_plus = 2.5 * u(rng);
        c.gain_minus = 2.5 * u(rng);
        c.bob_coupling = u(rng) < 0.5 ? BobCoupling::ideal_displacement : BobCoupling::tapped_98_2;
        const double vin = 0.5 + u(rng);
        c.input = {vin, 1 / vin, 1.0, 1.0};

        const TeleportOutcome out = teleport(c);
        const Quadratures v_in = input_variances(out);
        const Quadratures v_out = output_variances(out);
        const ConditionalResult r = conditional(v_in, v_out, c.gains());
        const double cov_p = covariance(out.input.x_plus, out.output.x_plus, out.basis);
        const double cov_m = covariance(out.input.x_minus, out.output.x_minus, out.basis);
        ASSERT_NEAR(r.v_plus, conditional_from_covariance(v_in.plus, v_out.plus, cov_p), 1e-9);
        ASSERT_NEAR(r.v_minus, conditional_from_covariance(v_in.minus, v_out.minus, cov_m), 1e-9);
    }
}

TEST(db_helpers, reference_cases) {
    EXPECT_DOUBLE_EQ(db_to_linear(0.0), 1.0);
    EXPECT_NEAR(squeezing_db_to_variance(4.8), 0.3311, 1e-4);
    EXPECT_NEAR(db_to_linear(3.01), 2.0, 1e-3);
    EXPECT_NEAR(variance_to_squeezing_db(0.3311), 4.8, 1e-3);
    EXPECT_THROW(linear_to_db(0.0), DomainError);
    EXPECT_THROW(linear_to_db(-1.0), DomainError);
}

TEST(reference_limits, values) {
    const ReferenceLimits& l = reference_limits();
    EXPECT_EQ(l.classical_fidelity, 0.5);
    EXPECT_DOUBLE_EQ(l.no_cloning_fidelity, 2.0 / 3);
    EXPECT_NEAR(l.classical_noise_db, 4.77, 0.005);
    EXPECT_NEAR(l.no_cloning_noise_db, 3.01, 0.005);
    // Both lines are the unity-gain output noise at the corresponding fidelity.
    EXPECT_NEAR(fidelity(kCoherent, {db_to_linear(l.no_cloning_noise_db), db_to_linear(l.no_cloning_noise_db)},
                         {0, 0}, kUnity)
                    .fidelity,
                2.0 / 3, 1e-12);
    EXPECT_NEAR(fidelity(kCoherent, {db_to_linear(l.classical_noise_db), db_to_linear(l.classical_noise_db)},
                         {0, 0}, kUnity)
                    .fidelity,
                0.5, 1e-12);
}

TEST(victor_correct, reference_cases) {
    EXPECT_DOUBLE_EQ(victor_correct(1.88, 1.0), 1.88);
    EXPECT_NEAR(victor_correct(0.496, 0.9), 0.44, 1e-12);
    EXPECT_NEAR(victor_correct(0.9 * 0.37 + 0.1, 0.9), 0.37, 1e-12);
    EXPECT_THROW(victor_correct(0.05, 0.9), DomainError);
    EXPECT_THROW(victor_correct(1.0, 0.0), DomainError);
}

TEST(make_report, flags_follow_values) {
    const MetricsReport classical = make_report(kCoherent, {3, 3}, {2.9, 3.5}, kUnity);
    EXPECT_FALSE(classical.beats_classical);
    EXPECT_NEAR(classical.fidelity, 0.5, 1e-12);
    const MetricsReport ent = make_report(kCoherent, {1.88, 1.88}, {2.9, 3.5}, kUnity, 0.44);
    EXPECT_TRUE(ent.beats_classical);
    EXPECT_TRUE(ent.beats_no_cloning);
    EXPECT_EQ(ent.duan, 0.44);
    EXPECT_TRUE(ent.fidelity_valid);
    EXPECT_FALSE(make_report({2, 2}, {3, 3}, {1, 1}, kUnity).fidelity_valid);
}

TEST(gain_optimum_property, fidelity_peaks_below_unity_gain) {
    TeleporterConfig c;
    c.opa1 = optics::SqueezerSpec::pure(0.44);
    c.opa2 = c.opa1;
    c.input = {1, 1, 2.9, 3.5};
    double best_g = 0;
    double best_f = -1;
    for (int i = 0; i <= 700; ++i) {
        c.gain_plus = c.gain_minus = 0.5 + 0.001 * i;
        const double f = evaluate(c).fidelity;
        if (f > best_f) {
            best_f = f;
            best_g = c.gain_plus;
        }
    }
    EXPECT_LT(best_g, 1.0);
    EXPECT_GT(best_f, evaluate([&] {
                          TeleporterConfig u = c;
                          u.gain_plus = u.gain_minus = 1.0;
                          return u;
                      }())
                          .fidelity);
}
