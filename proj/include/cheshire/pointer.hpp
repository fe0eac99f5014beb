// Copyright 2026 The Cheshire Authors
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

// One-dimensional pointer wavefunctions (transverse beam profiles).
//
// Gaussians use the amplitude convention p(x) = A exp(-(x - c)^2 / W^2), so the
// probability density |p|^2 has standard deviation sigma = W / 2. Sampled
// profiles live on a uniform grid; integrals use the trapezoidal rule.

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <variant>
#include <vector>

#include "cheshire/qstate.hpp"

namespace cheshire {

struct UniformGrid1D {
    double min = -8.0;
    double max = 8.0;
    std::size_t n = 512;

    double spacing() const { return (max - min) / static_cast<double>(n - 1); }
    double at(std::size_t i) const { return min + spacing() * static_cast<double>(i); }
    double span() const { return max - min; }

    /// Throws InvalidArgument unless min < max and n >= 16.
    void validate() const;

    friend bool operator==(const UniformGrid1D &, const UniformGrid1D &) = default;
};

/// Span +-half_span_in_widths * W with n points.
UniformGrid1D default_grid(double width, std::size_t n = 512, double half_span_in_widths = 8.0);

struct GaussianProfile {
    double width = 1.0;
    double center = 0.0;
    Complex amplitude{1.0, 0.0};

    friend bool operator==(const GaussianProfile &, const GaussianProfile &) = default;
};

struct SampledProfile {
    UniformGrid1D grid;
    std::vector<Complex> values;

    friend bool operator==(const SampledProfile &, const SampledProfile &) = default;
};

class PointerWavefunction {
   public:
    PointerWavefunction(GaussianProfile g);
    PointerWavefunction(SampledProfile s);

    bool is_analytic() const { return std::holds_alternative<GaussianProfile>(rep_); }
    const GaussianProfile &gaussian() const { return std::get<GaussianProfile>(rep_); }
    const SampledProfile &sampled() const { return std::get<SampledProfile>(rep_); }

    /// Sampled profiles are interpolated linearly between grid points and are
    /// zero outside the grid.
    Complex operator()(double x) const;

    PointerWavefunction scaled(Complex factor) const;

    friend bool operator==(const PointerWavefunction &, const PointerWavefunction &) = default;

   private:
    std::variant<GaussianProfile, SampledProfile> rep_;
};

/// Peak value 1 at `center`. Throws InvalidArgument for width <= 0.
PointerWavefunction gaussian(double width, double center = 0.0);

/// Evaluates `p` on `grid`. Analytic Gaussians need at least 8 points per
/// width; sampled inputs must already live on `grid`.
PointerWavefunction sample(const PointerWavefunction &p, const UniformGrid1D &grid);

/// p'(x) = p(x - delta). Analytic profiles move their center; sampled
/// profiles are shifted with a spectral phase ramp and require
/// |delta| < 10% of the grid span.
PointerWavefunction displace(const PointerWavefunction &p, double delta);

/// Integral of conj(p) x^power q dx for power in {0, 1, 2}. Mixed analytic /
/// sampled pairs are evaluated on the sampled grid.
Complex moment(const PointerWavefunction &p, const PointerWavefunction &q, int power);

/// Integral of conj(p) q dx.
Complex overlap(const PointerWavefunction &p, const PointerWavefunction &q);
/// overlap(p, q) / sqrt(norm2(p) norm2(q)).
Complex normalized_overlap(const PointerWavefunction &p, const PointerWavefunction &q);

double norm2(const PointerWavefunction &p);
double centroid(const PointerWavefunction &p);
double variance(const PointerWavefunction &p);

/// Trapezoidal weights for `grid` (half weight on the two end points).
std::vector<double> trapezoid_weights(const UniformGrid1D &grid);

/// Columns x, re, im; first line is `# <comment>` when a comment is given.
void write_profile_csv(std::ostream &out, const PointerWavefunction &p, const UniformGrid1D &grid,
                       std::string_view comment = {});

}  // namespace cheshire
