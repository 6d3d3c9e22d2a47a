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


#include "cvtele/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cvtele/errors.hpp"
#include "parallel.hpp"

namespace cvtele::mc {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Running mean and sum of squared deviations, mergeable across chunks.
struct Accumulator {
    double n = 0.0;
    double mean_x = 0.0;
    double mean_y = 0.0;
    double m2_x = 0.0;
    double m2_y = 0.0;
    double c_xy = 0.0;

    void add(double x, double y) {
        n += 1.0;
        const double dx = x - mean_x;
        mean_x += dx / n;
        const double dy = y - mean_y;
        mean_y += dy / n;
        m2_x += dx * (x - mean_x);
        m2_y += dy * (y - mean_y);
        c_xy += dx * (y - mean_y);
    }

    void merge(const Accumulator& o) {
        if (o.n == 0.0) return;
        const double total = n + o.n;
        const double dx = o.mean_x - mean_x;
        const double dy = o.mean_y - mean_y;
        m2_x += o.m2_x + dx * dx * n * o.n / total;
        m2_y += o.m2_y + dy * dy * n * o.n / total;
        c_xy += o.c_xy + dx * dy * n * o.n / total;
        mean_x += dx * o.n / total;
        mean_y += dy * o.n / total;
        n = total;
    }
};

Accumulator accumulate(std::span<const double> x, std::span<const double> y) {
    const std::size_t chunks = (x.size() + kSampleChunk - 1) / kSampleChunk;
    std::vector<Accumulator> parts(chunks);
    detail::parallel_for(chunks, [&](std::size_t c) {
        const std::size_t begin = c * kSampleChunk;
        const std::size_t end = std::min(x.size(), begin + kSampleChunk);
        for (std::size_t i = begin; i < end; ++i) parts[c].add(x[i], y[i]);
    });
    Accumulator total;
    for (const auto& p : parts) total.merge(p);
    return total;
}

std::size_t nearest_index(const SpectrumTrace& trace, double frequency) {
    const auto& f = trace.frequencies;
    if (f.empty() || frequency < f.front() || frequency > f.back()) {
        throw DomainError("frequency " + std::to_string(frequency) + " Hz lies outside the trace");
    }
    const auto it = std::lower_bound(f.begin(), f.end(), frequency);
    std::size_t i = static_cast<std::size_t>(it - f.begin());
    if (i > 0 && (i == f.size() || frequency - f[i - 1] <= f[i] - frequency)) --i;
    return i;
}

}  // namespace

GaussianStream::GaussianStream(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(splitmix64(seed) ^ stream)) {}

double GaussianStream::uniform() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

double GaussianStream::exponential() { return -std::log(uniform()); }

std::vector<SampleSet> sample_joint(std::span<const LinearForm> forms, const NoiseBasis& basis, std::size_t n,
                                    std::uint64_t seed) {
    if (n == 0) {
        throw DomainError("sample count must be at least 1");
    }
    const std::size_t dim = basis.size();
    // Fold each variable's standard deviation into the coefficients.
    std::vector<std::vector<double>> weights(forms.size(), std::vector<double>(dim, 0.0));
    for (std::size_t f = 0; f < forms.size(); ++f) {
        (void)variance(forms[f], basis);  // validates the form against the basis
        const auto c = forms[f].coefficients();
        for (std::size_t j = 0; j < c.size(); ++j) {
            weights[f][j] = c[j] * std::sqrt(basis.entries()[j].variance);
        }
    }
    std::vector<SampleSet> out(forms.size());
    for (std::size_t f = 0; f < forms.size(); ++f) {
        out[f].seed = seed;
        out[f].values.assign(n, forms[f].offset());
    }
    const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
    detail::parallel_for(chunks, [&](std::size_t c) {
        GaussianStream rng(seed, c);
        std::vector<double> z(dim);
        const std::size_t begin = c * kSampleChunk;
        const std::size_t end = std::min(n, begin + kSampleChunk);
        for (std::size_t i = begin; i < end; ++i) {
            for (auto& zj : z) zj = rng.normal();
            for (std::size_t f = 0; f < forms.size(); ++f) {
                double acc = 0.0;
                for (std::size_t j = 0; j < dim; ++j) acc += weights[f][j] * z[j];
                out[f].values[i] += acc;
            }
        }
    });
    return out;
}

SampleSet sample(const LinearForm& form, const NoiseBasis& basis, std::size_t n, std::uint64_t seed) {
    return std::move(sample_joint(std::span(&form, 1), basis, n, seed).front());
}

Moments estimate_moments(const SampleSet& s) {
    return estimate_moments(s, s).first;
}

JointMoments estimate_moments(const SampleSet& s1, const SampleSet& s2) {
    if (s1.n() < 2 || s2.n() < 2) {
        throw DomainError("moment estimation needs at least two samples");
    }
    if (s1.n() != s2.n()) {
        throw DomainError("covariance needs sample sets of equal length");
    }
    const Accumulator a = accumulate(s1.values, s2.values);
    const double dof = a.n - 1.0;
    JointMoments r;
    r.first = {s1.n(), a.mean_x, a.m2_x / dof};
    r.second = {s2.n(), a.mean_y, a.m2_y / dof};
    r.covariance = a.c_xy / dof;
    return r;
}

double variance_estimator_sigma(double v, std::size_t n) {
    return v * std::sqrt(2.0 / (static_cast<double>(n) - 1.0));
}

double covariance_estimator_sigma(double v1, double v2, double c, std::size_t n) {
    return std::sqrt((v1 * v2 + c * c) / (static_cast<double>(n) - 1.0));
}

SpectrumTrace synthesize_spectrum(double noise_variance, double signal_alpha, double center, double span,
                                  double rbw, double vbw, std::uint64_t seed, std::size_t points) {
    if (!(span > 0.0) || !(rbw > 0.0) || !(vbw > 0.0)) {
        throw DomainError("span, rbw and vbw must be positive");
    }
    if (!(noise_variance > 0.0)) {
        throw DomainError("noise variance must be positive");
    }
    if (points < 3) {
        throw DomainError("a trace needs at least three points");
    }
    SpectrumTrace trace;
    trace.rbw = rbw;
    trace.vbw = vbw;
    trace.center = center;
    trace.frequencies.resize(points);
    const double start = center - span / 2.0;
    const double step = span / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) trace.frequencies[i] = start + step * static_cast<double>(i);

    GaussianStream rng(seed, 0);
    std::vector<double> prefix(points + 1, 0.0);
    for (std::size_t i = 0; i < points; ++i) prefix[i + 1] = prefix[i] + noise_variance * rng.exponential();

    const auto window = std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(rbw / vbw)), 1, points);
    const std::size_t half = window / 2;
    std::vector<double> linear(points);
    for (std::size_t i = 0; i < points; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(points, lo + window);
        const std::size_t lo_fit = hi - std::min(window, hi);
        linear[i] = (prefix[hi] - prefix[lo_fit]) / static_cast<double>(hi - lo_fit);
    }
    linear[nearest_index(trace, center)] += 4.0 * signal_alpha * signal_alpha;

    trace.power_db.resize(points);
    for (std::size_t i = 0; i < points; ++i) trace.power_db[i] = 10.0 * std::log10(linear[i]);
    return trace;
}

double extract_snr(const SpectrumTrace& trace, double center, std::pair<double, double> noise_frequencies) {
    auto lin = [&](double f) { return std::pow(10.0, trace.power_db[nearest_index(trace, f)] / 10.0); };
    const double peak = lin(center);
    const double noise = 0.5 * (lin(noise_frequencies.first) + lin(noise_frequencies.second));
    return peak / noise;
}

double floor_level_db(const SpectrumTrace& trace) {
    const std::size_t skip = nearest_index(trace, trace.center);
    double sum = 0.0;
    for (std::size_t i = 0; i < trace.power_db.size(); ++i) {
        if (i != skip) sum += std::pow(10.0, trace.power_db[i] / 10.0);
    }
    return 10.0 * std::log10(sum / static_cast<double>(trace.power_db.size() - 1));
}

}  // namespace cvtele::mc
