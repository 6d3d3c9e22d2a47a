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


#include "cvtele/optics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvtele/errors.hpp"
#include "cvtele/metrics.hpp"

namespace cvtele::optics {
namespace {

void require_optical(const FieldMode& m, const char* op) {
    if (m.classical) {
        throw UsageError(std::string(op) + " needs an optical mode, got a measured one");
    }
}

void require_unit_interval(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
    }
}

FieldMode mix(const FieldMode& a, double ca, const FieldMode& b, double cb) {
    return {combine(a.x_plus, ca, b.x_plus, cb), combine(a.x_minus, ca, b.x_minus, cb), false};
}

}  // namespace

SqueezerSpec SqueezerSpec::pure(double v_squeezed, Orientation orientation) {
    if (!(v_squeezed > 0.0)) {
        throw DomainError("squeezed variance must be positive, got " + std::to_string(v_squeezed));
    }
    return {v_squeezed, 1.0 / v_squeezed, orientation};
}

SqueezerSpec SqueezerSpec::from_db(double db) { return pure(metrics::squeezing_db_to_variance(db)); }

void SqueezerSpec::validate() const {
    if (!(v_squeezed > 0.0) || !std::isfinite(v_antisqueezed)) {
        throw DomainError("squeezer variances must be positive and finite");
    }
    if (v_squeezed > 1.0 || v_antisqueezed < 1.0) {
        throw DomainError("squeezer needs v_squeezed <= 1 <= v_antisqueezed, got (" +
                          std::to_string(v_squeezed) + ", " + std::to_string(v_antisqueezed) + ")");
    }
    if (v_squeezed * v_antisqueezed < 1.0 - kUncertaintyTolerance) {
        throw DomainError("squeezer violates the uncertainty relation: product " +
                          std::to_string(v_squeezed * v_antisqueezed));
    }
}

FieldMode vacuum_mode(NoiseBasis& basis) {
    const auto [p, m] = basis.register_source(1.0, 1.0, SourceKind::vacuum);
    return {LinearForm::variable(basis, p), LinearForm::variable(basis, m), false};
}

FieldMode squeezed_mode(NoiseBasis& basis, const SqueezerSpec& spec) {
    spec.validate();
    const bool amp = spec.orientation == Orientation::amplitude_squeezed;
    const double v_plus = amp ? spec.v_squeezed : spec.v_antisqueezed;
    const double v_minus = amp ? spec.v_antisqueezed : spec.v_squeezed;
    const auto [p, m] = basis.register_source(v_plus, v_minus, SourceKind::squeezed);
    return {LinearForm::variable(basis, p), LinearForm::variable(basis, m), false};
}

std::pair<FieldMode, FieldMode> beamsplitter(const FieldMode& m1, const FieldMode& m2, double transmittance) {
    require_unit_interval(transmittance, "beamsplitter transmittance");
    require_optical(m1, "beamsplitter");
    require_optical(m2, "beamsplitter");
    const double t = std::sqrt(transmittance);
    const double r = std::sqrt(1.0 - transmittance);
    return {mix(m1, t, m2, r), mix(m1, -r, m2, t)};
}

FieldMode phase_shift(const FieldMode& m, double theta) {
    require_optical(m, "phase_shift");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {combine(m.x_plus, c, m.x_minus, -s), combine(m.x_plus, s, m.x_minus, c), false};
}

FieldMode loss(const FieldMode& m, double eta, NoiseBasis& basis) {
    require_unit_interval(eta, "efficiency");
    require_optical(m, "loss");
    if (eta == 1.0) return m;
    return mix(m, std::sqrt(eta), vacuum_mode(basis), std::sqrt(1.0 - eta));
}

EprPair epr_pair(NoiseBasis& basis, const SqueezerSpec& opa1, const SqueezerSpec& opa2) {
    if (opa1.orientation != Orientation::amplitude_squeezed ||
        opa2.orientation != Orientation::amplitude_squeezed) {
        throw UsageError("the EPR source combines two amplitude-squeezed beams");
    }
    const FieldMode s1 = squeezed_mode(basis, opa1);
    const FieldMode s2 = phase_shift(squeezed_mode(basis, opa2), std::numbers::pi / 2.0);
    auto [a, b] = beamsplitter(s1, s2, 0.5);
    return {std::move(a), std::move(b)};
}

double duan_inseparability(const EprPair& pair, const NoiseBasis& basis) {
    const double diff_plus = variance(pair.beam_a.x_plus - pair.beam_b.x_plus, basis);
    const double sum_minus = variance(pair.beam_a.x_minus + pair.beam_b.x_minus, basis);
    return (diff_plus + sum_minus) / 4.0;
}

FieldMode displace(const FieldMode& m, double alpha_plus, double alpha_minus) {
    return {m.x_plus.with_offset(m.x_plus.offset() + 2.0 * alpha_plus),
            m.x_minus.with_offset(m.x_minus.offset() + 2.0 * alpha_minus), m.classical};
}

}  // namespace cvtele::optics
