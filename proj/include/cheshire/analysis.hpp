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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cheshire/hybrid.hpp"

namespace cheshire {

/// A_w = <post|A|pre> / <post|pre>. Throws UndefinedWeakValue when pre and
/// post are orthogonal (relative overlap below 1e-12).
Complex weak_value(const DiscreteKet &pre, const DiscreteKet &post, const DiscreteOperator &op);

/// First-order centroid shift delta * Re(A_w) of a pointer displaced by
/// `delta` when the measured projector fires.
double predict_pointer_shift(Complex weak_value, double delta);

enum class Observable { PathI, PathII, SpinPathI, SpinPathII };

DiscreteOperator observable_operator(Observable obs);
const char *observable_name(Observable obs);

struct WeakValueReport {
    Observable observable;
    Complex weak_value;
    double coupling = 0.0;  // pointer displacement attached to the observable; 0 if unprobed
    double predicted_shift = 0.0;
    std::optional<double> simulated_shift;
    std::optional<double> discrepancy;
};

/// Weak values of all four observables for the photon pre/post pair, with the
/// pointer readout of the full simulation for the two probed ones
/// (spin in arm I on pointer 1, presence in arm II on pointer 2).
std::vector<WeakValueReport> photon_weak_value_reports(const InteractionSpec &spec);

enum class NoiseKind {
    PhasePre,   // e^{i theta} on the |II>|H> amplitude of the pre-selection
    PhasePost,  // e^{i theta} on the |I>|V> amplitude of the post-selection
    Amplitude,  // max(0, 1 + s xi) on the |I>|V> amplitude of the post-selection
};

const char *noise_kind_name(NoiseKind kind);

struct DisturbanceModel {
    NoiseKind kind = NoiseKind::PhasePost;
    double strength = 0.0;  // theta ~ U[-strength, strength]; xi ~ N(0, 1)
    std::uint64_t samples = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct EnsembleResult {
    std::uint64_t samples = 0;
    std::uint64_t null_samples = 0;
    // Unweighted statistics of per-sample centroids.
    double mean_x = 0.0;
    double mean_y = 0.0;
    double stderr_x = 0.0;
    double stderr_y = 0.0;
    // Detector-averaged (post-selection weighted) state.
    double density_centroid_x = 0.0;
    double density_centroid_y = 0.0;
    double purity = 1.0;
    double mean_postselection_probability = 0.0;

    // Term states with unit coefficients and M_ij = sum_s c_si conj(c_sj).
    PointerJointState basis;
    Eigen::MatrixXcd second_moment;

    /// Ensemble-averaged joint density, normalized like joint_density.
    Field2D density(const UniformGrid1D &gx, const UniformGrid1D &gy) const;
};

/// Monte Carlo over disturbed pre/post-selections of the photon pipeline.
/// Sample k draws from its own generator seeded by (seed, k), so results do
/// not depend on evaluation order.
EnsembleResult disturbance_ensemble(const DisturbanceModel &model, const InteractionSpec &spec);

}  // namespace cheshire
