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

// Photon + pointer pipeline for the three-probe interferometer:
//
//   pre-selection   |Psi> = (|I> + i|II>)|H> / sqrt2, both pointers at rest
//   interaction     arm I:  |+> moves pointer 1 by +dx, |-> moves it by -dx
//                   arm II: pointer 2 moves by +dy
//   post-selection  |Phi> = (|I>|V> + |II>|H>) / sqrt2
//
// which leaves the pointers in 2|P1>|P2+> + |P1+>|P2> - |P1->|P2> up to a
// global factor. Amplitudes are never renormalized along the way; every
// density or probability is normalized when it is requested.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cheshire/io.hpp"
#include "cheshire/pointer.hpp"
#include "cheshire/qstate.hpp"

namespace cheshire {

struct InteractionSpec {
    double delta_x = 0.1;  // pointer-1 shift for |+> in arm I (-delta_x for |->)
    double delta_y = 0.1;  // pointer-2 shift for presence in arm II
    double width = 1.0;

    void validate() const;
};

struct HybridBranch {
    BasisLabel label;
    Complex coeff;
    PointerWavefunction p1;
    PointerWavefunction p2;
};

struct HybridState {
    std::vector<HybridBranch> branches;

    double norm2() const;
    /// Sums branches that share label and both pointer factors.
    HybridState merged() const;
    /// The discrete ket (in the linear family) when every branch carries the
    /// same pointer pair, otherwise nullopt.
    std::optional<DiscreteKet> collapse() const;
};

struct JointTerm {
    Complex coeff;
    PointerWavefunction p1;
    PointerWavefunction p2;
    BasisLabel source;  // branch the term was contracted from
};

class PointerJointState {
   public:
    PointerJointState() = default;
    explicit PointerJointState(std::vector<JointTerm> terms) : terms_(std::move(terms)) {}

    const std::vector<JointTerm> &terms() const { return terms_; }
    std::vector<JointTerm> &terms() { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// <J|J> including interference between overlapping terms.
    double norm2() const;
    /// True when the post-selection annihilated the state: either no terms or
    /// <J|J> below 1e-24 of the incoherent term sum.
    bool is_null() const;
    /// Index of the first term contracted from `source`, if any.
    std::optional<std::size_t> find(const BasisLabel &source) const;

   private:
    std::vector<JointTerm> terms_;
};

DiscreteKet photon_preselection();
DiscreteKet photon_postselection();

/// One branch per nonzero amplitude of `pre`, pointers at rest.
HybridState preselect(const DiscreteKet &pre, const InteractionSpec &spec);
HybridState preselect_photon(const InteractionSpec &spec);

HybridState interact(const HybridState &state, const InteractionSpec &spec);

/// Contracts every branch against <post|. Never throws for a vanishing
/// result; check is_null() on the returned state.
PointerJointState postselect(const HybridState &state, const DiscreteKet &post);

/// <J|J> / (<post|post> <state|state>): probability that a run passes the
/// post-selection.
double postselection_probability(const HybridState &state, const PointerJointState &joint,
                                 const DiscreteKet &post);

/// |F1(x, y)|^2 divided by the exact <J|J>, so it integrates to one up to grid
/// truncation.
Field2D joint_density(const PointerJointState &joint, const UniformGrid1D &gx, const UniformGrid1D &gy);

/// Re(scale * sum_{k in terms} c_k p1_k(x) p2_k(y)). Used for the individual
/// arm contributions, which are real for real Gaussians.
Field2D term_field(const PointerJointState &joint, std::span<const std::size_t> terms, Complex scale,
                   const UniformGrid1D &gx, const UniformGrid1D &gy);

/// (<x>, <y>) of the normalized joint density, from exact 1D moments.
std::pair<double, double> centroid2d(const PointerJointState &joint);

/// Probability inside a disk of `lobe_radius` around each term's pointer
/// centroid, in term order. Throws Regime if any two nonzero terms overlap by
/// more than 1e-6 (normalized) or the disks would intersect.
std::vector<double> strong_lobe_weights(const PointerJointState &joint, double lobe_radius,
                                        std::size_t points_per_axis = 257);

/// G_ij = <t_i| x^x_power y^y_power |t_j> between the unit-coefficient terms
/// t_k = p1_k(x) p2_k(y); powers are 0 or 1.
Eigen::MatrixXcd term_gram(const PointerJointState &joint, int x_power = 0, int y_power = 0);

/// Purity Tr(rho1^2) of the reduced pointer-1 state.
double pointer_entanglement(const PointerJointState &joint);

enum class PhotonTerm { ArmII, ArmIPlus, ArmIMinus };

/// Index of the term produced by the photon pipeline for `which`.
std::size_t photon_term_index(const PointerJointState &joint, PhotonTerm which);

}  // namespace cheshire
