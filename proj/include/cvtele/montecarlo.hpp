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

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "cvtele/noise_algebra.hpp"

namespace cvtele::mc {

/// Reproducible standard-normal stream.
///
/// Algorithm: std::mt19937_64 (bit-exact across standard libraries) seeded
/// with SplitMix64(SplitMix64(seed) ^ stream), so streams of nearby seeds
/// never coincide; uniforms take the top 53 bits of each draw
/// and normals come from the Box-Muller transform, pairs emitted in
/// (cos, sin) order. std::normal_distribution is avoided because its output
/// is implementation-defined.
class GaussianStream {
   public:
    GaussianStream(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on (0, 1].
    double uniform();
    double normal();
    /// Exponential with unit mean.
    double exponential();

   private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Samples are produced in chunks of this size; chunk c draws from stream c,
/// so results do not depend on the number of worker threads.
inline constexpr std::size_t kSampleChunk = std::size_t{1} << 16;

struct SampleSet {
    std::vector<double> values;
    std::uint64_t seed = 0;
    [[nodiscard]] std::size_t n() const { return values.size(); }
};

/// Draws every basis variable from N(0, v_i) n times and evaluates the form.
/// The same seed reproduces the same realization of the whole basis, so two
/// forms sampled with one seed are jointly distributed like the forms.
SampleSet sample(const LinearForm& form, const NoiseBasis& basis, std::size_t n, std::uint64_t seed);

/// Samples several forms from one shared realization of the basis.
std::vector<SampleSet> sample_joint(std::span<const LinearForm> forms, const NoiseBasis& basis, std::size_t n,
                                    std::uint64_t seed);

struct Moments {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
};

struct JointMoments {
    Moments first;
    Moments second;
    double covariance = 0.0;  // unbiased
};

/// Throws DomainError for fewer than two samples.
Moments estimate_moments(const SampleSet& s);
/// Throws DomainError for fewer than two samples or mismatched lengths.
JointMoments estimate_moments(const SampleSet& s1, const SampleSet& s2);

/// Standard deviation of the unbiased variance estimator for n Gaussian
/// samples of true variance v: v * sqrt(2 / (n - 1)).
double variance_estimator_sigma(double v, std::size_t n);
/// Standard deviation of the covariance estimator: sqrt((v1 v2 + c^2) / (n - 1)).
double covariance_estimator_sigma(double v1, double v2, double c, std::size_t n);

struct SpectrumTrace {
    std::vector<double> frequencies;  // Hz
    std::vector<double> power_db;     // dB relative to the shot-noise limit
    double rbw = 0.0;
    double vbw = 0.0;
    double center = 0.0;
};

inline constexpr std::size_t kDefaultTracePoints = 20001;

/// Spectrum-analyzer trace of a quadrature with noise variance
/// `noise_variance` carrying a coherent modulation of amplitude
/// `signal_alpha` at `center`.
///
/// Each trace point starts as an exponentially distributed RBW-bin power with
/// mean `noise_variance`; video filtering is a centered moving average over
/// rbw/vbw points (capped at the trace length). The modulation adds
/// (2 alpha)^2 to the point nearest `center`, so the peak stands
/// 10 log10(1 + 4 alpha^2 / V) above the floor.
SpectrumTrace synthesize_spectrum(double noise_variance, double signal_alpha, double center, double span,
                                  double rbw, double vbw, std::uint64_t seed,
                                  std::size_t points = kDefaultTracePoints);

/// Peak power at `center` over the mean noise power at the two probe
/// frequencies, in linear units. Throws DomainError for frequencies outside
/// the trace.
double extract_snr(const SpectrumTrace& trace, double center, std::pair<double, double> noise_frequencies);

/// Mean floor power in dB, excluding the point nearest the trace center.
double floor_level_db(const SpectrumTrace& trace);

}  // namespace cvtele::mc
