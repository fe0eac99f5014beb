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

// Neutron interferometer with a spin analyzer in front of D1.
//
// The neutron enters as (|I>|+> + |II>|->)/sqrt2. D1 sees
// (|I> + e^{i chi}|II>)/sqrt2 (x) |->, D2 sees (|I> - e^{i chi}|II>)/sqrt2
// with either spin, and the |+> component leaving towards D1 is removed by the
// analyzer. Together with absorption these four channels are exhaustive.

#include <cstdint>
#include <optional>
#include <vector>

#include "cheshire/qstate.hpp"

namespace cheshire {

/// Spin rotation applied inside one arm, stored as a 2x2 unitary on (|+>, |->).
class SpinRotation {
   public:
    /// Arm I: |+> -> a|+> + b|->.
    static SpinRotation arm_one(Complex a, Complex b);
    /// Arm II: |-> -> c|-> + d|+>.
    static SpinRotation arm_two(Complex c, Complex d);
    /// Small magnetic-field rotation by `alpha` in `path`: the occupied spin
    /// state keeps cos(alpha/2) and gains i sin(alpha/2) of the other one.
    static SpinRotation field(Path path, double alpha);

    Path path() const { return path_; }
    /// Column j is the image of |+> (j = 0) or |-> (j = 1).
    const Eigen::Matrix2cd &matrix() const { return matrix_; }

   private:
    SpinRotation(Path path, const Eigen::Matrix2cd &m) : path_(path), matrix_(m) {}

    Path path_;
    Eigen::Matrix2cd matrix_;
};

struct Absorber {
    Path path = Path::I;
    double transmissivity = 1.0;  // intensity transmission T in [0, 1]
};

struct NeutronScenario {
    double chi = 0.0;
    std::optional<SpinRotation> rotation;
    std::optional<Absorber> absorber;
};

struct DetectorProbabilities {
    double d1 = 0.0;
    double d2 = 0.0;
    double absorbed = 0.0;
    double rejected = 0.0;  // |+> stopped by the analyzer in front of D1

    double total() const { return d1 + d2 + absorbed + rejected; }
};

struct DetectorCounts {
    std::uint64_t d1 = 0;
    std::uint64_t d2 = 0;
    std::uint64_t absorbed = 0;
    std::uint64_t rejected = 0;

    friend bool operator==(const DetectorCounts &, const DetectorCounts &) = default;
};

DiscreteKet preselect_neutron();

/// Multiplies the amplitudes in the absorber's path by sqrt(T). The result is
/// deliberately left unnormalized.
DiscreteKet apply_absorber(const DiscreteKet &state, const Absorber &absorber);

DiscreteKet apply_rotation(const DiscreteKet &state, const SpinRotation &rotation);

DiscreteKet d1_post_state(double chi);
DiscreteKet d2_post_state(double chi, Internal spin);

DetectorProbabilities detector_probabilities(const NeutronScenario &scenario);

struct SweepRow {
    double chi;
    DetectorProbabilities p;
};

struct ChiSweep {
    std::vector<SweepRow> rows;
    double visibility_d1 = 0.0;
    double visibility_d2 = 0.0;
    // (max - min) / (max + min) over the sampled rows only.
    double raw_visibility_d1 = 0.0;
    double raw_visibility_d2 = 0.0;
};

/// `count` equally spaced phases over [0, 2 pi).
std::vector<double> uniform_chi_grid(std::size_t count);

/// Evaluates `scenario` at every phase of `chi_grid` (its own chi is ignored)
/// and fits offset + first harmonic to each detector curve.
ChiSweep chi_sweep(const NeutronScenario &scenario, const std::vector<double> &chi_grid);

/// Fitted visibility sqrt(B^2 + C^2) / A of y ~ A + B cos(chi) + C sin(chi).
/// Falls back to (max - min) / (max + min) if the phases cannot resolve the
/// harmonic.
double fitted_visibility(const std::vector<double> &chi, const std::vector<double> &y);

/// Multinomial draw of `n` neutrons over the four channels.
DetectorCounts sample_counts(const DetectorProbabilities &p, std::uint64_t n, std::uint64_t seed);

}  // namespace cheshire
