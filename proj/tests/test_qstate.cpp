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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cheshire/hybrid.hpp"
#include "cheshire/neutron.hpp"
#include "cheshire/qstate.hpp"

namespace cheshire {
namespace {

const Complex kI(0.0, 1.0);
const double kR = 1.0 / std::sqrt(2.0);

const BasisLabel IH{Path::I, Internal::H};
const BasisLabel IV{Path::I, Internal::V};
const BasisLabel IIH{Path::II, Internal::H};
const BasisLabel IIV{Path::II, Internal::V};
const BasisLabel IP{Path::I, Internal::Plus};
const BasisLabel IM{Path::I, Internal::Minus};
const BasisLabel IIP{Path::II, Internal::Plus};
const BasisLabel IIM{Path::II, Internal::Minus};

void expect_near(Complex a, Complex b, double tol) {
    EXPECT_NEAR(a.real(), b.real(), tol);
    EXPECT_NEAR(a.imag(), b.imag(), tol);
}

DiscreteKet random_ket(std::mt19937_64 &rng, Family family) {
    std::normal_distribution<double> n01;
    detail::Vector4c v;
    for (int i = 0; i < 4; ++i) {
        v(i) = Complex(n01(rng), n01(rng));
    }
    return DiscreteKet(family, v);
}

TEST(QState, InnerOfPreselectionWithItselfIsOne) {
    const auto psi = photon_preselection();
    expect_near(inner(psi, psi), 1.0, 1e-15);
}

TEST(QState, InnerPostPreIsHalfI) {
    // Hand expansion: <Phi|Psi> = (1/sqrt2)(1/sqrt2) <II H|i II H> = i/2.
    expect_near(inner(photon_postselection(), photon_preselection()), 0.5 * kI, 1e-15);
}

TEST(QState, OrthogonalPostselectionVanishes) {
    const auto phi = photon_postselection();
    const auto orth = DiscreteKet::from_terms({{IV, kR}, {IIH, -kR}});
    expect_near(inner(orth, phi), 0.0, 1e-16);
}

TEST(QState, InnerIsConjugateLinearInBra) {
    const auto a = DiscreteKet::basis(IH);
    const auto b = DiscreteKet::basis(IH);
    expect_near(inner(kI * a, b), -kI, 1e-16);
    expect_near(inner(a, kI * b), kI, 1e-16);
}

TEST(QState, CircularLabelsFromLinear) {
    // |+> = (|H> + i|V>)/sqrt2 written out by hand in the linear family.
    const auto plus_by_hand = DiscreteKet::from_terms({{IH, kR}, {IV, kI * kR}});
    const auto minus_by_hand = DiscreteKet::from_terms({{IH, kR}, {IV, -kI * kR}});
    expect_near(inner(DiscreteKet::basis(IP), plus_by_hand), 1.0, 1e-15);
    expect_near(inner(DiscreteKet::basis(IM), minus_by_hand), 1.0, 1e-15);
    expect_near(inner(DiscreteKet::basis(IP), minus_by_hand), 0.0, 1e-15);
    expect_near(plus_by_hand.amplitude(IP), 1.0, 1e-15);
    expect_near(plus_by_hand.amplitude(IM), 0.0, 1e-15);
}

TEST(QState, MixedFamiliesInOneKetRejected) {
    try {
        DiscreteKet::from_terms({{IH, 1.0}, {IIM, 1.0}});
        FAIL() << "expected BasisMismatch";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::BasisMismatch);
    }
}

TEST(QState, ApplyPathProjector) {
    const auto out = apply(DiscreteOperator::path_projector(Path::II), photon_preselection());
    expect_near(out.amplitude(IIH), kI * kR, 1e-15);
    expect_near(out.amplitude(IH), 0.0, 1e-15);
    EXPECT_NEAR(out.norm2(), 0.5, 1e-15);
}

TEST(QState, ApplyIdentity) {
    const auto psi = photon_preselection();
    const auto out = apply(DiscreteOperator::identity(), psi);
    EXPECT_NEAR((out.amplitudes() - psi.amplitudes()).norm(), 0.0, 1e-16);
}

TEST(QState, SpinOnHorizontalGivesIVertical) {
    const auto out = apply(DiscreteOperator::spin(), DiscreteKet::basis(IH));
    expect_near(out.amplitude(IV), kI, 1e-15);
    expect_near(out.amplitude(IH), 0.0, 1e-15);
    const auto back = apply(DiscreteOperator::spin(), DiscreteKet::basis(IV));
    expect_near(back.amplitude(IH), -kI, 1e-15);
}

TEST(QState, ProjectorOnBasisState) {
    const auto out = apply(projector(DiscreteKet::basis(IH)), photon_preselection());
    expect_near(out.amplitude(IH), kR, 1e-15);
    expect_near(out.amplitude(IIH), 0.0, 1e-15);
}

TEST(QState, ProjectorNormalizesUnnormalizedInput) {
    // (|I> + |II>)|-> with chi = 0, norm sqrt2; applied to the neutron state.
    const auto post = DiscreteKet::from_terms({{IM, 1.0}, {IIM, 1.0}});
    const auto out = apply(projector(post), preselect_neutron());
    const double q = 1.0 / (2.0 * std::sqrt(2.0));
    expect_near(out.amplitude(IM), q, 1e-15);
    expect_near(out.amplitude(IIM), q, 1e-15);
    expect_near(out.amplitude(IP), 0.0, 1e-15);
}

TEST(QState, ProjectorOfZeroKetIsDegenerate) {
    try {
        projector(DiscreteKet(Family::Linear));
        FAIL() << "expected DegenerateInput";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
    }
}

TEST(QState, DetectionProbabilities) {
    const auto psi = photon_preselection();
    EXPECT_NEAR(detection_probability(psi, psi), 1.0, 1e-15);
    const auto d1 = DiscreteKet::from_terms({{IM, kR}, {IIM, kR}});
    EXPECT_NEAR(detection_probability(preselect_neutron(), d1), 0.25, 1e-15);
    EXPECT_NEAR(detection_probability(DiscreteKet::basis(IP), d1), 0.0, 1e-16);
}

TEST(QState, NormalizedOfZeroIsDegenerate) {
    EXPECT_THROW(DiscreteKet(Family::Circular).normalized(), Error);
}

TEST(QStateProperty, InnerIsHermitian) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
        const auto a = random_ket(rng, t % 2 ? Family::Linear : Family::Circular);
        const auto b = random_ket(rng, t % 3 ? Family::Linear : Family::Circular);
        expect_near(inner(a, b), std::conj(inner(b, a)), 1e-13);
    }
}

TEST(QStateProperty, BasisChangeIsUnitary) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 500; ++t) {
        const auto a = random_ket(rng, Family::Linear);
        const auto b = random_ket(rng, Family::Linear);
        const auto ac = a.in(Family::Circular);
        const auto bc = b.in(Family::Circular);
        const double scale = std::sqrt(a.norm2() * b.norm2());
        EXPECT_NEAR(ac.norm2(), a.norm2(), 1e-14 * a.norm2());
        expect_near(inner(ac, bc) / scale, inner(a, b) / scale, 1e-14);
        const auto round = ac.in(Family::Linear);
        EXPECT_NEAR((round.amplitudes() - a.amplitudes()).norm(), 0.0, 1e-14 * std::sqrt(a.norm2()));
    }
}

TEST(QStateProperty, ProjectorIdempotentAndSelfAdjoint) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 300; ++t) {
        const auto p = projector(random_ket(rng, t % 2 ? Family::Linear : Family::Circular));
        const auto pp = p * p;
        EXPECT_LT((pp.matrix() - p.matrix()).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_LT((p.adjoint().matrix() - p.matrix()).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(QStateProperty, DetectionProbabilityIgnoresGlobalPhase) {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
    for (int t = 0; t < 300; ++t) {
        const auto s = random_ket(rng, Family::Linear);
        const auto p = random_ket(rng, Family::Circular);
        const double base = detection_probability(s, p);
        const Complex u = std::polar(1.0, phase(rng));
        const Complex v = std::polar(1.0, phase(rng));
        EXPECT_NEAR(detection_probability(u * s, v * p), base, 1e-12 * (1.0 + base));
    }
}

TEST(QStateProperty, OperatorsActConsistentlyAcrossFamilies) {
    std::mt19937_64 rng(15);
    const auto sigma = DiscreteOperator::spin();
    for (int t = 0; t < 200; ++t) {
        const auto k = random_ket(rng, Family::Linear);
        const auto via_circular = apply(sigma, k.in(Family::Circular)).in(Family::Linear);
        const auto via_linear = apply(sigma.in(Family::Linear), k);
        EXPECT_LT((via_circular.amplitudes() - via_linear.amplitudes()).norm(), 1e-13 * std::sqrt(k.norm2()));
    }
}

}  // namespace
}  // namespace cheshire
