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

namespace cvtele {

/// A value per quadrature: plus is the amplitude quadrature, minus the phase
/// quadrature.
struct Quadratures {
    double plus = 0.0;
    double minus = 0.0;
    friend bool operator==(const Quadratures&, const Quadratures&) = default;
};

}  // namespace cvtele

namespace cvtele::metrics {

// Decibel helpers. Noise levels are quoted relative to the shot-noise limit:
// positive dB means above it. Squeezing is quoted as positive dB below it.
double db_to_linear(double db);
/// Throws DomainError for v <= 0.
double linear_to_db(double v);
double squeezing_db_to_variance(double db_below);
double variance_to_squeezing_db(double v);

struct FidelityResult {
    double fidelity = 0.0;
    double k_plus = 0.0;
    double k_minus = 0.0;
};

/// Gaussian-state overlap between input and output:
///   F = 2 exp(-(k+ + k-)) sqrt(Vin+ Vin- / ((Vin+ + Vout+)(Vin- + Vout-)))
///   k = alpha_in^2 (1 - g)^2 / (Vin + Vout)
/// Meaningful for minimum-uncertainty inputs. Throws DomainError for
/// non-positive variances.
FidelityResult fidelity(Quadratures v_in, Quadratures v_out, Quadratures alpha_in, Quadratures gain);

struct TransferResult {
    double t_plus = 0.0;
    double t_minus = 0.0;
    double t_q = 0.0;
};

/// Signal transfer coefficients with SNR = alpha^2 / V, so T = g^2 Vin / Vout,
/// combined as T_q = T+ + T- - T+ T- (1 - 1/(Vin+ Vin-)).
/// Throws UndefinedTransferError when either input amplitude is zero.
TransferResult transfer(Quadratures v_in, Quadratures v_out, Quadratures alpha_in, Quadratures gain);

struct ConditionalResult {
    double v_plus = 0.0;
    double v_minus = 0.0;
    double v_q = 0.0;    // product form
    double v_sum = 0.0;  // sum form
};

/// Conditional variances V_out - g^2 V_in and their product and sum.
/// Throws ModelViolationError if either is negative.
ConditionalResult conditional(Quadratures v_in, Quadratures v_out, Quadratures gain);

/// V_out - cov(in, out)^2 / V_in, the covariance form of one conditional variance.
double conditional_from_covariance(double v_in, double v_out, double cov_in_out);

struct ReferenceLimits {
    double classical_fidelity = 0.5;
    double no_cloning_fidelity = 2.0 / 3.0;
    double classical_noise_db = 0.0;   // unity-gain output noise, no entanglement
    double no_cloning_noise_db = 0.0;  // unity-gain output noise at F = 2/3
    double tv_boundary_t_q = 1.0;
    double tv_boundary_v_q = 1.0;
};

const ReferenceLimits& reference_limits();

/// Undoes a detection efficiency eta: (v - (1 - eta)) / eta.
/// Throws DomainError unless 0 < eta <= 1 and v >= 1 - eta.
double victor_correct(double v_measured, double eta);

/// Slack used when turning raw figures of merit into pass/fail flags.
inline constexpr double kReportTolerance = 1e-9;

struct MetricsReport {
    double fidelity = 0.0;
    double k_plus = 0.0;
    double k_minus = 0.0;
    /// Fidelity is only claimed for minimum-uncertainty inputs.
    bool fidelity_valid = true;

    double t_plus = 0.0;
    double t_minus = 0.0;
    double t_q = 0.0;

    double v_cond_plus = 0.0;
    double v_cond_minus = 0.0;
    double v_q = 0.0;
    double v_cond_sum = 0.0;

    Quadratures gain;
    Quadratures v_in;
    Quadratures v_out;
    std::optional<double> duan;

    bool beats_classical = false;
    bool beats_no_cloning = false;
    bool t_q_above_one = false;
    bool v_q_below_one = false;
};

/// Evaluates every figure of merit for one input/output pair. When an input
/// amplitude is zero the (amplitude-independent) transfer coefficients are
/// evaluated with a unit probe amplitude.
MetricsReport make_report(Quadratures v_in, Quadratures v_out, Quadratures alpha_in, Quadratures gain,
                          std::optional<double> duan = std::nullopt);

}  // namespace cvtele::metrics
