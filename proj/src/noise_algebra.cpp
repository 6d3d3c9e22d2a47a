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


#include "cvtele/noise_algebra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "cvtele/errors.hpp"

namespace cvtele {
namespace {

std::uint64_t next_basis_tag() {
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
}

std::uint64_t common_tag(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b != 0 && a != b) {
        throw UsageError("linear forms belong to different noise bases");
    }
    return a != 0 ? a : b;
}

void check_form(const LinearForm& f, const NoiseBasis& basis) {
    if (f.basis_tag() != 0 && f.basis_tag() != basis.tag()) {
        throw UsageError("linear form does not belong to this noise basis");
    }
    if (f.coefficients().size() > basis.size()) {
        throw UsageError("linear form references unregistered variables");
    }
}

}  // namespace

NoiseBasis::NoiseBasis() : tag_(next_basis_tag()) {}

std::pair<VarId, VarId> NoiseBasis::register_source(double v_plus, double v_minus, SourceKind kind) {
    if (kind == SourceKind::electronic) {
        throw UsageError("electronic noise has no conjugate; use register_electronic");
    }
    if (!(v_plus > 0.0) || !(v_minus > 0.0) || !std::isfinite(v_plus) || !std::isfinite(v_minus)) {
        throw DomainError("optical source variances must be positive and finite, got (" +
                          std::to_string(v_plus) + ", " + std::to_string(v_minus) + ")");
    }
    if (v_plus * v_minus < 1.0 - kUncertaintyTolerance) {
        throw DomainError("source violates the uncertainty relation: V+ V- = " +
                          std::to_string(v_plus * v_minus) + " < 1");
    }
    const VarId p{static_cast<std::uint32_t>(entries_.size())};
    const VarId m{p.index + 1};
    entries_.push_back({p, v_plus, kind, QuadratureRole::plus, m});
    entries_.push_back({m, v_minus, kind, QuadratureRole::minus, p});
    return {p, m};
}

VarId NoiseBasis::register_electronic(double variance) {
    if (!(variance >= 0.0) || !std::isfinite(variance)) {
        throw DomainError("electronic noise variance must be non-negative, got " + std::to_string(variance));
    }
    const VarId id{static_cast<std::uint32_t>(entries_.size())};
    entries_.push_back({id, variance, SourceKind::electronic, QuadratureRole::none, std::nullopt});
    return id;
}

const SourceVariable& NoiseBasis::at(VarId id) const {
    if (id.index >= entries_.size()) {
        throw UsageError("unknown noise variable " + std::to_string(id.index));
    }
    return entries_[id.index];
}

LinearForm LinearForm::zero(const NoiseBasis& basis) {
    LinearForm f;
    f.tag_ = basis.tag();
    return f;
}

LinearForm LinearForm::variable(const NoiseBasis& basis, VarId id, double coefficient) {
    (void)basis.at(id);
    LinearForm f = zero(basis);
    f.coefficients_.assign(id.index + 1, 0.0);
    f.coefficients_[id.index] = coefficient;
    return f;
}

LinearForm LinearForm::constant(const NoiseBasis& basis, double offset) {
    LinearForm f = zero(basis);
    f.offset_ = offset;
    return f;
}

double LinearForm::coefficient(VarId id) const {
    return id.index < coefficients_.size() ? coefficients_[id.index] : 0.0;
}

LinearForm LinearForm::with_offset(double offset) const {
    LinearForm f = *this;
    f.offset_ = offset;
    return f;
}

LinearForm combine(const LinearForm& a, double ca, const LinearForm& b, double cb) {
    LinearForm out;
    out.tag_ = common_tag(a.tag_, b.tag_);
    out.coefficients_.assign(std::max(a.coefficients_.size(), b.coefficients_.size()), 0.0);
    for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
        out.coefficients_[i] += ca * a.coefficients_[i];
    }
    for (std::size_t i = 0; i < b.coefficients_.size(); ++i) {
        out.coefficients_[i] += cb * b.coefficients_[i];
    }
    out.offset_ = ca * a.offset_ + cb * b.offset_;
    return out;
}

double variance(const LinearForm& f, const NoiseBasis& basis) {
    return covariance(f, f, basis);
}

double covariance(const LinearForm& f, const LinearForm& g, const NoiseBasis& basis) {
    check_form(f, basis);
    check_form(g, basis);
    (void)common_tag(f.basis_tag(), g.basis_tag());
    const auto c = f.coefficients();
    const auto d = g.coefficients();
    const auto entries = basis.entries();
    const std::size_t n = std::min(c.size(), d.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += c[i] * d[i] * entries[i].variance;
    }
    return sum;
}

double symplectic_pairing(const FieldMode& m, const NoiseBasis& basis) {
    if (m.classical) {
        throw UsageError("symplectic pairing is undefined for a measured (classical) mode");
    }
    check_form(m.x_plus, basis);
    check_form(m.x_minus, basis);
    double sum = 0.0;
    for (const SourceVariable& v : basis.entries()) {
        if (v.role != QuadratureRole::plus || !v.conjugate_of) continue;
        const VarId q = v.id;
        const VarId p = *v.conjugate_of;
        sum += m.x_plus.coefficient(q) * m.x_minus.coefficient(p) -
               m.x_plus.coefficient(p) * m.x_minus.coefficient(q);
    }
    return sum;
}

}  // namespace cvtele
