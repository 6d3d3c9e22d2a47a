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
using optics::SqueezerSpec;

namespace {

TeleporterConfig resources(double v_sq, double gain = 1.0) {
    TeleporterConfig c;
    c.opa1 = SqueezerSpec::pure(v_sq);
    c.opa2 = SqueezerSpec::pure(v_sq);
    c.gain_plus = gain;
    c.gain_minus = gain;
    return c;
}

// One quadrature of the ideal-displacement output, written out term by term
// for independent squeezed/antisqueezed sources and loss vacua.
double expected_output(double g, double v_in, double v_sq_post, double v_anti_post) {
    return g * g * v_in + (1 + g) * (1 + g) / 2 * v_sq_post + (1 - g) * (1 - g) / 2 * v_anti_post;
}

double after_loss(double v, double eta) { return eta * v + (1 - eta); }

TeleporterConfig random_in_scope(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    TeleporterConfig c;
    const double s1 = 0.02 + 0.98 * u(rng);
    const double s2 = 0.02 + 0.98 * u(rng);
    c.opa1 = {s1, (1.0 + 2.0 * u(rng)) / s1, optics::Orientation::amplitude_squeezed};
    c.opa2 = {s2, (1.0 + 2.0 * u(rng)) / s2, optics::Orientation::amplitude_squeezed};
    c.eta_entanglement = u(rng);
    if (u(rng) < 0.5) {
        c.eta_entanglement_a = u(rng);
        c.eta_entanglement_b = u(rng);
    }
    c.gain_plus = 3.0 * u(rng);
    c.gain_minus = 3.0 * u(rng);
    const double vin = 0.3 + 2.0 * u(rng);
    c.input = {vin, 1.0 / vin, 10.0 * (u(rng) - 0.5), 10.0 * (u(rng) - 0.5)};
    return c;
}

}  // namespace

TEST(alice_measure, reference_cases) {
    {
        NoiseBasis basis;
        const FieldMode in = optics::displace(optics::vacuum_mode(basis), 1.0, 2.0);
        const Photocurrents m = alice_measure(in, optics::vacuum_mode(basis), 1.0, 0.0, basis);
        EXPECT_NEAR(variance(m.plus, basis), 1.0 + 1.0, 1e-12);
        EXPECT_NEAR(variance(m.minus, basis), 1.0 + 1.0, 1e-12);
        EXPECT_DOUBLE_EQ(m.plus.offset(), 2.0);
    }
    {
        NoiseBasis basis;
        const FieldMode in = optics::vacuum_mode(basis);
        const SqueezerSpec s{0.3311, 3.020, optics::Orientation::amplitude_squeezed};
        const optics::EprPair p = optics::epr_pair(basis, s, s);
        const Photocurrents m = alice_measure(in, p.beam_a, 1.0, 0.0, basis);
        EXPECT_NEAR(variance(m.plus, basis), 1.0 + (0.3311 + 3.020) / 2, 1e-12);
    }
    {
        NoiseBasis basis;
        const Photocurrents m =
            alice_measure(optics::vacuum_mode(basis), optics::vacuum_mode(basis), 1.0, 0.1, basis);
        EXPECT_NEAR(variance(m.plus, basis), 2.1, 1e-12);
        EXPECT_NEAR(variance(m.minus, basis), 2.1, 1e-12);
    }
}

TEST(alice_measure, detector_inefficiency_scales_signal_and_adds_vacuum) {
    NoiseBasis basis;
    const Photocurrents m =
        alice_measure(optics::vacuum_mode(basis), optics::vacuum_mode(basis), 0.81, 0.0, basis);
    // 0.81 * (1 + 1) from the signal paths plus 0.19 * 2 from two detector vacua.
    EXPECT_NEAR(variance(m.plus, basis), 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(m.detection_efficiency, 0.81);
}

TEST(alice_measure, rejects_measured_modes) {
    NoiseBasis basis;
    FieldMode measured = optics::vacuum_mode(basis);
    measured.classical = true;
    EXPECT_THROW(alice_measure(measured, optics::vacuum_mode(basis), 1.0, 0.0, basis), UsageError);
}

TEST(measurement_penalties, reference_cases) {
    TeleporterConfig classical = resources(1.0);
    const Quadratures vac = measurement_penalties(classical);
    EXPECT_NEAR(vac.plus, 1.0, 1e-12);
    EXPECT_NEAR(vac.plus * vac.minus, 1.0, 1e-12);

    const TeleporterConfig epr = resources(std::pow(10.0, -0.48));
    const Quadratures e = measurement_penalties(epr);
    EXPECT_NEAR(e.plus, (0.33113 + 3.01995) / 2, 1e-4);
    EXPECT_NEAR(e.plus * e.minus, 2.81, 0.005);

    classical.dark_noise_alice = 0.1;
    const Quadratures d = measurement_penalties(classical);
    EXPECT_NEAR(d.plus, 1.1, 1e-12);
    EXPECT_NEAR(d.minus, 1.1, 1e-12);
}

TEST(measurement_penalties_property, product_never_below_one) {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        TeleporterConfig c = random_in_scope(rng);
        c.eta_alice = 0.05 + 0.95 * u(rng);
        c.dark_noise_alice = 0.5 * u(rng);
        const Quadratures p = measurement_penalties(c);
        ASSERT_GE(p.plus * p.minus, 1.0 - 1e-12);
    }
}

TEST(bob_reconstruct, zero_gain_returns_beam_b) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        TeleporterConfig c = random_in_scope(rng);
        c.gain_plus = 0.0;
        c.gain_minus = 0.0;
        const TeleportOutcome out = teleport(c);
        const LinearForm dp = out.output.x_plus - out.resources.beam_b.x_plus;
        const LinearForm dm = out.output.x_minus - out.resources.beam_b.x_minus;
        ASSERT_EQ(variance(dp, out.basis), 0.0);
        ASSERT_EQ(variance(dm, out.basis), 0.0);
        ASSERT_EQ(dp.offset(), 0.0);
        ASSERT_EQ(dm.offset(), 0.0);
    }
}

TEST(bob_reconstruct, unity_gain_reference_values) {
    TeleporterConfig classical = resources(1.0);
    classical.input.alpha_plus = 2.9;
    const Quadratures v = output_variances(teleport(classical));
    EXPECT_NEAR(v.plus, 3.0, 1e-12);
    EXPECT_NEAR(v.minus, 3.0, 1e-12);

    const Quadratures w = output_variances(teleport(resources(0.44)));
    EXPECT_NEAR(w.plus, 1.88, 1e-12);
    EXPECT_NEAR(w.minus, 1.88, 1e-12);
}

TEST(bob_reconstruct, tapped_coupling_costs_beam_b_two_percent) {
    TeleporterConfig c = resources(0.44, 0.0);
    c.bob_coupling = BobCoupling::tapped_98_2;
    const Quadratures v = output_variances(teleport(c));
    const double beam_b = (0.44 + 1.0 / 0.44) / 2;
    EXPECT_NEAR(v.plus, 0.98 * beam_b + 0.02, 1e-12);
}

TEST(teleport, reference_cases) {
    {
        const TeleporterConfig c = resources(1e-6);
        const Quadratures v = output_variances(teleport(c));
        EXPECT_NEAR(v.plus, 1.0 + 2e-6, 1e-12);
        EXPECT_GT(metrics::fidelity({1, 1}, v, {0, 0}, {1, 1}).fidelity, 0.999999);
    }
    {
        TeleporterConfig c = resources(1.0);
        c.input = {1.0, 1.0, 2.9, 3.5};
        EXPECT_NEAR(evaluate(c).fidelity, 0.5, 1e-12);
    }
}

TEST(teleport, operating_point_beats_both_boundaries) {
    TeleporterConfig c = resources(0.44);
    c.gain_plus = 0.92;
    c.gain_minus = 1.12;
    c.input = {1.0, 1.0, 2.9, 3.5};
    const metrics::MetricsReport r = evaluate(c);
    EXPECT_TRUE(r.t_q_above_one);
    EXPECT_TRUE(r.v_q_below_one);
    EXPECT_LT(r.v_q, 0.96);
    EXPECT_NEAR(r.t_q, 1.06, 0.01);
}

TEST(closed_form_output_variances, reference_cases) {
    EXPECT_NEAR(closed_form_output_variances(resources(1.0)).plus, 3.0, 1e-12);

    TeleporterConfig zero = resources(0.3, 0.0);
    zero.eta_entanglement = 0.7;
    const Quadratures z = closed_form_output_variances(zero);
    EXPECT_NEAR(z.plus, (after_loss(0.3, 0.7) + after_loss(1 / 0.3, 0.7)) / 2, 1e-12);

    TeleporterConfig pt = resources(0.44);
    pt.gain_plus = 0.92;
    pt.opa2.v_antisqueezed = 2.273;
    const double expected = 0.92 * 0.92 + 1.92 * 1.92 / 2 * 0.44 + 0.08 * 0.08 / 2 * 2.273;
    EXPECT_NEAR(closed_form_output_variances(pt).plus, expected, 1e-12);
    EXPECT_NEAR(closed_form_output_variances(pt).plus, 1.664, 1e-3);
}

TEST(closed_form_output_variances, scope_is_enforced) {
    TeleporterConfig c = resources(0.44);
    c.bob_coupling = BobCoupling::tapped_98_2;
    EXPECT_THROW(closed_form_output_variances(c), OracleScopeError);
    c = resources(0.44);
    c.dark_noise_alice = 0.1;
    EXPECT_THROW(closed_form_output_variances(c), OracleScopeError);
    c = resources(0.44);
    c.eta_alice = 0.9;
    EXPECT_THROW(closed_form_output_variances(c), UsageError);
}

TEST(teleporter_property, matches_closed_form_oracle) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const TeleporterConfig c = random_in_scope(rng);
        const Quadratures sim = output_variances(teleport(c));
        const Quadratures oracle = closed_form_output_variances(c);
        ASSERT_NEAR(sim.plus, oracle.plus, 1e-9 * std::max(1.0, oracle.plus));
        ASSERT_NEAR(sim.minus, oracle.minus, 1e-9 * std::max(1.0, oracle.minus));
        if (!c.eta_entanglement_a) {
            // Symmetric loss reduces to the per-quadrature textbook form.
            const double e = c.eta_entanglement;
            ASSERT_NEAR(sim.plus,
                        expected_output(c.gain_plus, c.input.v_plus, after_loss(c.opa1.v_squeezed, e),
                                        after_loss(c.opa2.v_antisqueezed, e)),
                        1e-9 * std::max(1.0, sim.plus));
            ASSERT_NEAR(sim.minus,
                        expected_output(c.gain_minus, c.input.v_minus, after_loss(c.opa2.v_squeezed, e),
                                        after_loss(c.opa1.v_antisqueezed, e)),
                        1e-9 * std::max(1.0, sim.minus));
        }
    }
}

TEST(teleporter_property, unity_gain_noise_is_the_epr_combination) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        TeleporterConfig c = random_in_scope(rng);
        c.gain_plus = 1.0;
        c.gain_minus = 1.0;
        c.eta_entanglement_a.reset();
        c.eta_entanglement_b.reset();
        const TeleportOutcome out = teleport(c);
        const LinearForm noise_p = out.output.x_plus - out.input.x_plus;
        const LinearForm noise_m = out.output.x_minus - out.input.x_minus;
        const LinearForm epr_p = out.resources.beam_b.x_plus - out.resources.beam_a.x_plus;
        const LinearForm epr_m = out.resources.beam_b.x_minus + out.resources.beam_a.x_minus;
        ASSERT_NEAR(variance(noise_p - epr_p, out.basis), 0.0, 1e-12);
        ASSERT_NEAR(variance(noise_m - epr_m, out.basis), 0.0, 1e-12);
        const double e = c.eta_entanglement;
        ASSERT_NEAR(variance(noise_p, out.basis), 2 * after_loss(c.opa1.v_squeezed, e), 1e-12);
        ASSERT_NEAR(variance(noise_m, out.basis), 2 * after_loss(c.opa2.v_squeezed, e), 1e-12);
    }
}

TEST(teleporter_property, output_amplitude_ratio_equals_gain) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        TeleporterConfig c = random_in_scope(rng);
        c.eta_alice = 0.3 + 0.7 * std::uniform_real_distribution<double>(0, 1)(rng);
        c.dark_noise_alice = 0.2;
        const TeleportOutcome out = teleport(c);
        ASSERT_NEAR(out.output.alpha_plus(), c.gain_plus * c.input.alpha_plus, 1e-12);
        ASSERT_NEAR(out.output.alpha_minus(), c.gain_minus * c.input.alpha_minus, 1e-12);
        ASSERT_FALSE(out.output.classical);
        ASSERT_NEAR(symplectic_pairing(out.output, out.basis), 1.0, 1e-9);
    }
}

TEST(teleporter_property, classical_resources_respect_tv_bounds) {
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            TeleporterConfig c = resources(1.0);
            c.gain_plus = 4.0 * i / 20;
            c.gain_minus = 4.0 * j / 20;
            c.input = {1.0, 1.0, 1.0, 1.0};
            const metrics::MetricsReport r = evaluate(c);
            ASSERT_LE(r.t_q, 1.0 + 1e-9);
            ASSERT_GE(r.v_q, 1.0 - 1e-9);
        }
    }
}

TEST(teleporter_config, validation_names_field) {
    TeleporterConfig c;
    c.eta_alice = 1.5;
    try {
        c.validate();
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("eta_alice"), std::string::npos);
    }
    c = TeleporterConfig{};
    c.input = {0.5, 0.5, 0, 0};
    EXPECT_THROW(c.validate(), DomainError);
    c = TeleporterConfig{};
    c.gain_plus = std::nan("");
    EXPECT_THROW(c.validate(), DomainError);
}
