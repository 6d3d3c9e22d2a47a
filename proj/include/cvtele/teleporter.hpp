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


#pragma once

#include <optional>

#include "cvtele/metrics.hpp"
#include "cvtele/noise_algebra.hpp"
#include "cvtele/optics.hpp"

namespace cvtele {

enum class BobCoupling {
    /// Bob's displacement is applied without disturbing the entangled beam.
    ideal_displacement,
    /// The displacement beam is combined with beam b on a 98% transmitting
    /// splitter, costing beam b 2% loss.
    tapped_98_2,
};

inline constexpr double kBobTapTransmittance = 0.98;

struct InputState {
    double v_plus = 1.0;
    double v_minus = 1.0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
};

struct TeleporterConfig {
    optics::SqueezerSpec opa1;
    optics::SqueezerSpec opa2;
    /// Post-entanglement efficiency applied to each beam, unless overridden.
    double eta_entanglement = 1.0;
    std::optional<double> eta_entanglement_a;
    std::optional<double> eta_entanglement_b;
    double eta_alice = 1.0;
    /// Electronic noise variance added to each of Alice's sum and difference
    /// photocurrents, in shot-noise units of the detected signal.
    double dark_noise_alice = 0.0;
    double gain_plus = 1.0;
    double gain_minus = 1.0;
    BobCoupling bob_coupling = BobCoupling::ideal_displacement;
    InputState input;
    double eta_victor = 1.0;

    [[nodiscard]] double eta_beam_a() const { return eta_entanglement_a.value_or(eta_entanglement); }
    [[nodiscard]] double eta_beam_b() const { return eta_entanglement_b.value_or(eta_entanglement); }
    [[nodiscard]] Quadratures gains() const { return {gain_plus, gain_minus}; }

    /// Throws DomainError naming the first offending field.
    void validate() const;
};

/// Alice's classical measurement record.
struct Photocurrents {
    LinearForm plus;   // sum photocurrent, tracks X+_in + X+_a
    LinearForm minus;  // difference photocurrent, tracks X-_in - X-_a
    double detection_efficiency = 1.0;
};

struct TeleportOutcome {
    NoiseBasis basis;
    FieldMode input;
    FieldMode output;
    /// Entangled beams after post-entanglement loss, as delivered to Alice and Bob.
    optics::EprPair resources;
    Photocurrents photocurrents;
};

Photocurrents alice_measure(const FieldMode& input, const FieldMode& beam_a, double eta_alice, double dark,
                            NoiseBasis& basis);

/// Noise Alice's measurement adds to each input quadrature, referred to the
/// input: beam a's variance plus detector vacuum and dark noise divided by the
/// detection efficiency. The product is never below one.
Quadratures measurement_penalties(const TeleporterConfig& config);

/// Displaces beam b by the photocurrents scaled so that the output coherent
/// amplitude is gain times the input amplitude.
FieldMode bob_reconstruct(const FieldMode& beam_b, const Photocurrents& record, Quadratures gain,
                          BobCoupling coupling, NoiseBasis& basis);

TeleportOutcome teleport(const TeleporterConfig& config);

Quadratures output_variances(const TeleportOutcome& outcome);
Quadratures input_variances(const TeleportOutcome& outcome);

/// Output variances from the analytic solution of the chain. Covers ideal
/// displacement with a perfect, noiseless Alice; throws OracleScopeError
/// otherwise.
Quadratures closed_form_output_variances(const TeleporterConfig& config);

/// Runs the teleporter and scores it. Output variances pass through Victor's
/// detector (efficiency eta_victor) and are corrected back, as in the lab.
metrics::MetricsReport evaluate(const TeleporterConfig& config);

}  // namespace cvtele
