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


#include "cvtele/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvtele/errors.hpp"
#include "cvtele/noise_algebra.hpp"

namespace cvtele::metrics {
namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive and finite, got " + std::to_string(v));
    }
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double v) {
    require_positive(v, "linear noise level");
    return 10.0 * std::log10(v);
}

double squeezing_db_to_variance(double db_below) { return db_to_linear(-db_below); }

double variance_to_squeezing_db(double v) { return -linear_to_db(v); }

FidelityResult fidelity(Quadratures v_in, Quadratures v_out, Quadratures alpha_in, Quadratures gain) {
    require_positive(v_in.plus, "V_in+");
    require_positive(v_in.minus, "V_in-");
    require_positive(v_out.plus, "V_out+");
    require_positive(v_out.minus, "V_out-");
    const double sum_p = v_in.plus + v_out.plus;
    const double sum_m = v_in.minus + v_out.minus;
    FidelityResult r;
    r.k_plus = alpha_in.plus * alpha_in.plus * (1.0 - gain.plus) * (1.0 - gain.plus) / sum_p;
    r.k_minus = alpha_in.minus * alpha_in.minus * (1.0 - gain.minus) * (1.0 - gain.minus) / sum_m;
    r.fidelity = 2.0 * std::exp(-(r.k_plus + r.k_minus)) * std::sqrt(v_in.plus * v_in.minus / (sum_p * sum_m));
    return r;
}

TransferResult transfer(Quadratures v_in, Quadratures v_out, Quadratures alpha_in, Quadratures gain) {
    if (alpha_in.plus == 0.0 || alpha_in.minus == 0.0) {
        throw UndefinedTransferError("signal transfer needs a nonzero input amplitude on both quadratures");
    }
    require_positive(v_in.plus, "V_in+");
    require_positive(v_in.minus, "V_in-");
    require_positive(v_out.plus, "V_out+");
    require_positive(v_out.minus, "V_out-");
    auto snr = [](double alpha, double v) { return alpha * alpha / v; };
    TransferResult r;
    r.t_plus = snr(gain.plus * alpha_in.plus, v_out.plus) / snr(alpha_in.plus, v_in.plus);
    r.t_minus = snr(gain.minus * alpha_in.minus, v_out.minus) / snr(alpha_in.minus, v_in.minus);
    r.t_q = r.t_plus + r.t_minus - r.t_plus * r.t_minus * (1.0 - 1.0 / (v_in.plus * v_in.minus));
    return r;
}

ConditionalResult conditional(Quadratures v_in, Quadratures v_out, Quadratures gain) {
    auto one = [](double vin, double vout, double g, const char* label) {
        const double c = vout - g * g * vin;
        // Round-off from near-perfect resources can leave a tiny negative.
        if (c < -1e-12 * std::max(1.0, vout)) {
            throw ModelViolationError(std::string("negative conditional variance on ") + label +
                                      " quadrature: V_out - g^2 V_in = " + std::to_string(c));
        }
        return std::max(c, 0.0);
    };
    ConditionalResult r;
    r.v_plus = one(v_in.plus, v_out.plus, gain.plus, "amplitude");
    r.v_minus = one(v_in.minus, v_out.minus, gain.minus, "phase");
    r.v_q = r.v_plus * r.v_minus;
    r.v_sum = r.v_plus + r.v_minus;
    return r;
}

double conditional_from_covariance(double v_in, double v_out, double cov_in_out) {
    require_positive(v_in, "V_in");
    return v_out - cov_in_out * cov_in_out / v_in;
}

const ReferenceLimits& reference_limits() {
    // At unity gain with a coherent input, F = 2 / (1 + V_out): F = 1/2 gives
    // V_out = 3 and F = 2/3 gives V_out = 2.
    static const ReferenceLimits limits = [] {
        ReferenceLimits l;
        l.classical_noise_db = linear_to_db(3.0);
        l.no_cloning_noise_db = linear_to_db(2.0);
        return l;
    }();
    return limits;
}

double victor_correct(double v_measured, double eta) {
    if (!(eta > 0.0) || !(eta <= 1.0)) {
        throw DomainError("detection efficiency must lie in (0, 1], got " + std::to_string(eta));
    }
    const double corrected = (v_measured - (1.0 - eta)) / eta;
    if (!(corrected >= 0.0)) {
        throw DomainError("measured variance " + std::to_string(v_measured) +
                          " is below the vacuum contribution of a detector with efficiency " +
                          std::to_string(eta));
    }
    return corrected;
}

MetricsReport make_report(Quadratures v_in, Quadratures v_out, Quadratures alpha_in, Quadratures gain,
                          std::optional<double> duan) {
    MetricsReport r;
    r.gain = gain;
    r.v_in = v_in;
    r.v_out = v_out;
    r.duan = duan;

    const FidelityResult f = fidelity(v_in, v_out, alpha_in, gain);
    r.fidelity = f.fidelity;
    r.k_plus = f.k_plus;
    r.k_minus = f.k_minus;
    r.fidelity_valid = std::abs(v_in.plus * v_in.minus - 1.0) <= kUncertaintyTolerance;

    const Quadratures probe{alpha_in.plus != 0.0 ? alpha_in.plus : 1.0,
                            alpha_in.minus != 0.0 ? alpha_in.minus : 1.0};
    const TransferResult t = transfer(v_in, v_out, probe, gain);
    r.t_plus = t.t_plus;
    r.t_minus = t.t_minus;
    r.t_q = t.t_q;

    const ConditionalResult c = conditional(v_in, v_out, gain);
    r.v_cond_plus = c.v_plus;
    r.v_cond_minus = c.v_minus;
    r.v_q = c.v_q;
    r.v_cond_sum = c.v_sum;

    const ReferenceLimits& lim = reference_limits();
    r.beats_classical = r.fidelity > lim.classical_fidelity + kReportTolerance;
    r.beats_no_cloning = r.fidelity > lim.no_cloning_fidelity + kReportTolerance;
    r.t_q_above_one = r.t_q > lim.tv_boundary_t_q + kReportTolerance;
    r.v_q_below_one = r.v_q < lim.tv_boundary_v_q - kReportTolerance;
    return r;
}

}  // namespace cvtele::metrics
