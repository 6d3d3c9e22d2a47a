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


#include "cvtele/teleporter.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvtele/errors.hpp"

namespace cvtele {
namespace {

void require_efficiency(double eta, const char* field) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError(std::string(field) + ": efficiency must lie in [0, 1], got " + std::to_string(eta));
    }
}

void require_finite(double x, const char* field) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string(field) + ": must be finite");
    }
}

FieldMode prepare_input(NoiseBasis& basis, const InputState& in) {
    const bool coherent = in.v_plus == 1.0 && in.v_minus == 1.0;
    const auto [p, m] =
        basis.register_source(in.v_plus, in.v_minus, coherent ? SourceKind::vacuum : SourceKind::squeezed);
    const FieldMode mode{LinearForm::variable(basis, p), LinearForm::variable(basis, m), false};
    return optics::displace(mode, in.alpha_plus, in.alpha_minus);
}

}  // namespace

void TeleporterConfig::validate() const {
    opa1.validate();
    opa2.validate();
    require_efficiency(eta_entanglement, "eta_entanglement");
    require_efficiency(eta_beam_a(), "eta_entanglement_a");
    require_efficiency(eta_beam_b(), "eta_entanglement_b");
    require_efficiency(eta_alice, "eta_alice");
    if (eta_alice == 0.0) {
        throw DomainError("eta_alice: Alice needs a nonzero detection efficiency");
    }
    require_efficiency(eta_victor, "eta_victor");
    if (eta_victor == 0.0) {
        throw DomainError("eta_victor: Victor needs a nonzero detection efficiency");
    }
    if (!(dark_noise_alice >= 0.0) || !std::isfinite(dark_noise_alice)) {
        throw DomainError("dark_noise_alice: must be a non-negative variance");
    }
    require_finite(gain_plus, "gain_plus");
    require_finite(gain_minus, "gain_minus");
    require_finite(input.alpha_plus, "input.alpha_plus");
    require_finite(input.alpha_minus, "input.alpha_minus");
    if (!(input.v_plus > 0.0) || !(input.v_minus > 0.0) ||
        input.v_plus * input.v_minus < 1.0 - kUncertaintyTolerance) {
        throw DomainError("input: variances must be positive with v_plus * v_minus >= 1");
    }
}

Photocurrents alice_measure(const FieldMode& input, const FieldMode& beam_a, double eta_alice, double dark,
                            NoiseBasis& basis) {
    if (input.classical || beam_a.classical) {
        throw UsageError("alice_measure needs optical input and resource beams");
    }
    require_efficiency(eta_alice, "eta_alice");
    const double root_eta = std::sqrt(eta_alice);
    Photocurrents rec;
    rec.detection_efficiency = eta_alice;
    rec.plus = combine(input.x_plus, root_eta, beam_a.x_plus, root_eta);
    rec.minus = combine(input.x_minus, root_eta, beam_a.x_minus, -root_eta);
    if (eta_alice < 1.0) {
        // Each of the two detectors mixes in its own vacuum.
        const double leak = std::sqrt(1.0 - eta_alice);
        const FieldMode vc = optics::vacuum_mode(basis);
        const FieldMode vd = optics::vacuum_mode(basis);
        rec.plus = combine(rec.plus, 1.0, vc.x_plus + vd.x_plus, leak);
        rec.minus = combine(rec.minus, 1.0, vc.x_minus - vd.x_minus, leak);
    }
    if (dark > 0.0) {
        rec.plus = rec.plus + LinearForm::variable(basis, basis.register_electronic(dark));
        rec.minus = rec.minus + LinearForm::variable(basis, basis.register_electronic(dark));
    } else if (dark < 0.0) {
        throw DomainError("dark noise variance must be non-negative");
    }
    return rec;
}

Quadratures measurement_penalties(const TeleporterConfig& config) {
    config.validate();
    NoiseBasis basis;
    const optics::EprPair pair = optics::epr_pair(basis, config.opa1, config.opa2);
    const FieldMode a = optics::loss(pair.beam_a, config.eta_beam_a(), basis);
    const double eta = config.eta_alice;
    const double detector = (2.0 * (1.0 - eta) + config.dark_noise_alice) / eta;
    return {variance(a.x_plus, basis) + detector, variance(a.x_minus, basis) + detector};
}

FieldMode bob_reconstruct(const FieldMode& beam_b, const Photocurrents& record, Quadratures gain,
                          BobCoupling coupling, NoiseBasis& basis) {
    if (beam_b.classical) {
        throw UsageError("bob_reconstruct needs an optical beam b");
    }
    if (!(record.detection_efficiency > 0.0)) {
        throw DomainError("photocurrents carry zero detection efficiency");
    }
    FieldMode carrier = beam_b;
    if (coupling == BobCoupling::tapped_98_2) {
        carrier = optics::beamsplitter(beam_b, optics::vacuum_mode(basis), kBobTapTransmittance).first;
    }
    const double scale = 1.0 / std::sqrt(record.detection_efficiency);
    return {combine(carrier.x_plus, 1.0, record.plus, gain.plus * scale),
            combine(carrier.x_minus, 1.0, record.minus, gain.minus * scale), false};
}

TeleportOutcome teleport(const TeleporterConfig& config) {
    config.validate();
    TeleportOutcome out;
    NoiseBasis& basis = out.basis;
    out.input = prepare_input(basis, config.input);
    const optics::EprPair pair = optics::epr_pair(basis, config.opa1, config.opa2);
    out.resources.beam_a = optics::loss(pair.beam_a, config.eta_beam_a(), basis);
    out.resources.beam_b = optics::loss(pair.beam_b, config.eta_beam_b(), basis);
    // Alice's port convention puts a pi phase on beam a, which makes the
    // unity-gain output noise the squeezed combinations X+_a - X+_b and X-_a + X-_b.
    const FieldMode a_at_alice = optics::phase_shift(out.resources.beam_a, std::numbers::pi);
    out.photocurrents =
        alice_measure(out.input, a_at_alice, config.eta_alice, config.dark_noise_alice, basis);
    out.output = bob_reconstruct(out.resources.beam_b, out.photocurrents, config.gains(), config.bob_coupling,
                                 basis);
    return out;
}

Quadratures output_variances(const TeleportOutcome& outcome) {
    return {variance(outcome.output.x_plus, outcome.basis), variance(outcome.output.x_minus, outcome.basis)};
}

Quadratures input_variances(const TeleportOutcome& outcome) {
    return {variance(outcome.input.x_plus, outcome.basis), variance(outcome.input.x_minus, outcome.basis)};
}

Quadratures closed_form_output_variances(const TeleporterConfig& config) {
    if (config.bob_coupling != BobCoupling::ideal_displacement) {
        throw OracleScopeError("closed-form oracle covers ideal displacement only");
    }
    if (config.dark_noise_alice != 0.0) {
        throw OracleScopeError("closed-form oracle assumes zero dark noise");
    }
    if (config.eta_alice != 1.0) {
        throw OracleScopeError("closed-form oracle assumes perfect detection at Alice");
    }
    config.validate();
    const double ra = std::sqrt(config.eta_beam_a());
    const double rb = std::sqrt(config.eta_beam_b());
    // Per quadrature the input-independent noise is g X_a -/+ X_b after loss:
    // the squeezed variance of one OPA enters with weight (g ra + rb)^2 / 2,
    // the antisqueezed variance of the other with (g ra - rb)^2 / 2, and the
    // loss vacua with g^2 (1 - eta_a) + (1 - eta_b).
    auto quadrature = [ra, rb](double g, double v_in, double v_sq, double v_anti) {
        const double squeezed_weight = (g * ra + rb) * (g * ra + rb) / 2.0;
        const double anti_weight = (g * ra - rb) * (g * ra - rb) / 2.0;
        const double vacuum = g * g * (1.0 - ra * ra) + (1.0 - rb * rb);
        return g * g * v_in + squeezed_weight * v_sq + anti_weight * v_anti + vacuum;
    };
    return {quadrature(config.gain_plus, config.input.v_plus, config.opa1.v_squeezed, config.opa2.v_antisqueezed),
            quadrature(config.gain_minus, config.input.v_minus, config.opa2.v_squeezed,
                       config.opa1.v_antisqueezed)};
}

metrics::MetricsReport evaluate(const TeleporterConfig& config) {
    const TeleportOutcome outcome = teleport(config);
    const Quadratures v_in = input_variances(outcome);
    const Quadratures v_true = output_variances(outcome);
    const double eta_v = config.eta_victor;
    auto through_victor = [eta_v](double v) { return metrics::victor_correct(eta_v * v + (1.0 - eta_v), eta_v); };
    const Quadratures v_out{through_victor(v_true.plus), through_victor(v_true.minus)};
    const double duan = optics::duan_inseparability(outcome.resources, outcome.basis);
    return metrics::make_report(v_in, v_out, {config.input.alpha_plus, config.input.alpha_minus},
                                config.gains(), duan);
}

}  // namespace cvtele
