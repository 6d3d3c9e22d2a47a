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

#include <utility>

#include "cvtele/noise_algebra.hpp"

namespace cvtele::optics {

enum class Orientation { amplitude_squeezed, phase_squeezed };

/// Output of one parametric amplifier, described only by its quadrature
/// variances in shot-noise units.
struct SqueezerSpec {
    double v_squeezed = 1.0;
    double v_antisqueezed = 1.0;
    Orientation orientation = Orientation::amplitude_squeezed;

    /// Minimum-uncertainty squeezer: v_antisqueezed = 1 / v_squeezed.
    static SqueezerSpec pure(double v_squeezed, Orientation orientation = Orientation::amplitude_squeezed);
    /// Pure squeezer with `db` of squeezing below the shot-noise limit.
    static SqueezerSpec from_db(double db);

    /// Throws DomainError unless v_sq <= 1 <= v_anti and v_sq * v_anti >= 1.
    void validate() const;
};

/// Two beams whose (X+_a - X+_b) and (X-_a + X-_b) fluctuations are squeezed.
struct EprPair {
    FieldMode beam_a;
    FieldMode beam_b;
};

FieldMode vacuum_mode(NoiseBasis& basis);

FieldMode squeezed_mode(NoiseBasis& basis, const SqueezerSpec& spec);

/// Real orthogonal beamsplitter:
///   out1 =  sqrt(T) m1 + sqrt(1-T) m2
///   out2 = -sqrt(1-T) m1 + sqrt(T) m2
/// applied identically to both quadratures.
std::pair<FieldMode, FieldMode> beamsplitter(const FieldMode& m1, const FieldMode& m2, double transmittance);

/// Rotates the quadratures: X+' = cos(t) X+ - sin(t) X-, X-' = sin(t) X+ + cos(t) X-.
FieldMode phase_shift(const FieldMode& m, double theta);

/// Mixes in a fresh vacuum: X' = sqrt(eta) X + sqrt(1-eta) X_vac.
FieldMode loss(const FieldMode& m, double eta, NoiseBasis& basis);

/// Interferes two amplitude-squeezed beams on a 50/50 splitter after a pi/2
/// phase shift of the second, so that
///   X+_a - X+_b = sqrt(2) dX+_1   and   X-_a + X-_b = sqrt(2) dX+_2.
EprPair epr_pair(NoiseBasis& basis, const SqueezerSpec& opa1, const SqueezerSpec& opa2);

/// (V(X+_a - X+_b) + V(X-_a + X-_b)) / 4, so that two coherent beams give 1.
double duan_inseparability(const EprPair& pair, const NoiseBasis& basis);

/// Adds a coherent amplitude: the quadrature offsets grow by 2*alpha.
FieldMode displace(const FieldMode& m, double alpha_plus, double alpha_minus);

}  // namespace cvtele::optics
