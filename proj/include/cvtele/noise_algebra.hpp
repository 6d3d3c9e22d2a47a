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
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cvtele {

// Every observable in the simulator is a linear combination of independent,
// zero-mean Gaussian source variables plus a deterministic offset. Variances
// are in shot-noise units: a vacuum quadrature has variance 1.

enum class SourceKind { vacuum, squeezed, antisqueezed, electronic };

/// Which quadrature of its source mode a variable represents.
enum class QuadratureRole { plus, minus, none };

struct VarId {
    std::uint32_t index = 0;
    friend bool operator==(VarId, VarId) = default;
};

struct SourceVariable {
    VarId id;
    double variance = 0.0;
    SourceKind kind = SourceKind::vacuum;
    QuadratureRole role = QuadratureRole::none;
    std::optional<VarId> conjugate_of;
};

/// Relative slack on V+V- >= 1 so that values quoted to four significant
/// figures (0.44 and 2.2727, say) still register as pure states.
inline constexpr double kUncertaintyTolerance = 1e-4;

/// Registry of independent Gaussian source variables.
///
/// Each basis carries a process-unique tag; forms built over one basis cannot
/// be mixed with forms over another. Copies share the tag of the original, so
/// a copied basis must not be grown independently of the source.
class NoiseBasis {
   public:
    NoiseBasis();

    /// Registers a conjugate (plus, minus) pair for an optical source mode.
    /// Throws DomainError on non-positive variances or V+V- < 1, and
    /// UsageError for SourceKind::electronic (see register_electronic).
    std::pair<VarId, VarId> register_source(double v_plus, double v_minus, SourceKind kind);

    /// Registers a single unpaired electronic noise variable.
    VarId register_electronic(double variance);

    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] std::span<const SourceVariable> entries() const { return entries_; }
    [[nodiscard]] const SourceVariable& at(VarId id) const;
    [[nodiscard]] std::uint64_t tag() const { return tag_; }

   private:
    std::uint64_t tag_;
    std::vector<SourceVariable> entries_;
};

/// An observable: sum_i c_i * x_i + offset over the variables of one basis.
///
/// A default-constructed form is the basis-free zero form and combines with
/// forms over any basis.
class LinearForm {
   public:
    LinearForm() = default;

    static LinearForm zero(const NoiseBasis& basis);
    static LinearForm variable(const NoiseBasis& basis, VarId id, double coefficient = 1.0);
    static LinearForm constant(const NoiseBasis& basis, double offset);

    [[nodiscard]] double offset() const { return offset_; }
    [[nodiscard]] double coefficient(VarId id) const;
    [[nodiscard]] std::span<const double> coefficients() const { return coefficients_; }
    [[nodiscard]] std::uint64_t basis_tag() const { return tag_; }

    [[nodiscard]] LinearForm with_offset(double offset) const;

    friend LinearForm combine(const LinearForm& a, double ca, const LinearForm& b, double cb);

   private:
    std::uint64_t tag_ = 0;
    std::vector<double> coefficients_;
    double offset_ = 0.0;
};

/// Returns ca*a + cb*b. Throws UsageError when a and b belong to different bases.
LinearForm combine(const LinearForm& a, double ca, const LinearForm& b, double cb);

inline LinearForm operator+(const LinearForm& a, const LinearForm& b) { return combine(a, 1.0, b, 1.0); }
inline LinearForm operator-(const LinearForm& a, const LinearForm& b) { return combine(a, 1.0, b, -1.0); }
inline LinearForm operator*(double c, const LinearForm& a) { return combine(a, c, LinearForm{}, 0.0); }

/// Noise variance sum_i c_i^2 v_i; the offset does not contribute.
double variance(const LinearForm& f, const NoiseBasis& basis);

/// sum_i c_i d_i v_i.
double covariance(const LinearForm& f, const LinearForm& g, const NoiseBasis& basis);

/// One optical beam: its amplitude (plus) and phase (minus) quadratures.
/// The offset of each quadrature is twice the coherent amplitude.
struct FieldMode {
    LinearForm x_plus;
    LinearForm x_minus;
    bool classical = false;

    [[nodiscard]] double alpha_plus() const { return x_plus.offset() / 2.0; }
    [[nodiscard]] double alpha_minus() const { return x_minus.offset() / 2.0; }
};

/// Sum over conjugate pairs (q, p) of c_q d_p - c_p d_q, with c and d the
/// plus- and minus-quadrature coefficients of the mode. Any mode produced by
/// beamsplitters, phase shifts and loss from fresh sources pairs to 1.
/// Throws UsageError for classical (measured) modes.
double symplectic_pairing(const FieldMode& m, const NoiseBasis& basis);

}  // namespace cvtele
