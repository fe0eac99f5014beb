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
#include <numbers>
#include <random>

#include "cheshire/neutron.hpp"

namespace cheshire {
namespace {

const Complex kI(0.0, 1.0);
const double kR = 1.0 / std::sqrt(2.0);
const BasisLabel IP{Path::I, Internal::Plus};
const BasisLabel IM{Path::I, Internal::Minus};
const BasisLabel IIP{Path::II, Internal::Plus};
const BasisLabel IIM{Path::II, Internal::Minus};

// Closed form for a path-I rotation |+> -> a|+> + b|->:
// P_D1(chi) = (1 + |b|^2 + 2 Re(b e^{i chi})) / 4, by hand expansion of
// <(I + e^{i chi} II)/sqrt2, -| (a|I+> + b|I-> + |II->)/sqrt2>.
double d1_closed_form(Complex b, double chi) {
    return (1.0 + std::norm(b) + 2.0 * (b * std::polar(1.0, chi)).real()) / 4.0;
}

TEST(Neutron, Preselection) {
    const auto psi = preselect_neutron();
    EXPECT_NEAR(psi.norm2(), 1.0, 1e-15);
    EXPECT_EQ(psi.amplitude(IM), Complex(0.0));
    const auto orth = DiscreteKet::from_terms({{IP, kR}, {IIM, -kR}});
    EXPECT_NEAR(std::abs(inner(orth, psi)), 0.0, 1e-16);
}

TEST(Neutron, AbsorberAmplitudes) {
    const auto psi = preselect_neutron();
    const auto same = apply_absorber(psi, {Path::I, 1.0});
    EXPECT_NEAR((same.amplitudes() - psi.amplitudes()).norm(), 0.0, 1e-16);
    EXPECT_NEAR(apply_absorber(psi, {Path::II, 0.0}).norm2(), 0.5, 1e-15);
    const auto partial = apply_absorber(psi, {Path::I, 0.79});
    EXPECT_NEAR(std::abs(partial.amplitude(IP) - std::sqrt(0.79) * kR), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(partial.amplitude(IIM) - kR), 0.0, 1e-15);
    EXPECT_NEAR(partial.norm2(), (0.79 + 1.0) / 2.0, 1e-15);
    EXPECT_THROW(apply_absorber(psi, {Path::I, 1.5}), Error);
    EXPECT_THROW(apply_absorber(psi, {Path::I, -0.1}), Error);
}

TEST(Neutron, RotationAmplitudes) {
    const auto psi = preselect_neutron();
    const auto id = apply_rotation(psi, SpinRotation::arm_one(1.0, 0.0));
    EXPECT_NEAR((id.amplitudes() - psi.amplitudes()).norm(), 0.0, 1e-16);
    const auto one = apply_rotation(psi, SpinRotation::field(Path::I, 0.2));
    EXPECT_NEAR(std::abs(one.amplitude(IM) - kI * std::sin(0.1) * kR), 0.0, 1e-15);
    const auto two = apply_rotation(psi, SpinRotation::field(Path::II, 0.2));
    EXPECT_NEAR(std::abs(two.amplitude(IIP) - kI * std::sin(0.1) * kR), 0.0, 1e-15);
    EXPECT_NEAR(two.norm2(), 1.0, 1e-15);
}

TEST(Neutron, NonUnitaryRotationRejected) {
    EXPECT_THROW(SpinRotation::arm_one(1.0, 0.1), Error);
    EXPECT_THROW(SpinRotation::arm_two(0.5, 0.5), Error);
}

TEST(Neutron, BaselineIsPhaseIndependent) {
    for (double chi : uniform_chi_grid(64)) {
        const auto p = detector_probabilities({chi, {}, {}});
        EXPECT_NEAR(p.d1, 0.25, 1e-15);
        EXPECT_NEAR(p.d2, 0.5, 1e-15);
        EXPECT_NEAR(p.rejected, 0.25, 1e-15);
        EXPECT_NEAR(p.absorbed, 0.0, 1e-15);
    }
}

TEST(Neutron, PathOneRotationMatchesClosedForm) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> n01;
    for (int t = 0; t < 50; ++t) {
        Complex a(n01(rng), n01(rng));
        Complex b(n01(rng), n01(rng));
        const double norm = std::sqrt(std::norm(a) + std::norm(b));
        a /= norm;
        b /= norm;
        for (double chi : uniform_chi_grid(12)) {
            const auto p = detector_probabilities({chi, SpinRotation::arm_one(a, b), {}});
            EXPECT_NEAR(p.d1, d1_closed_form(b, chi), 1e-14);
        }
    }
}

TEST(Neutron, AbsorberPredictions) {
    for (double t : {0.0, 0.3, 0.79, 1.0}) {
        for (double chi : uniform_chi_grid(8)) {
            const auto one = detector_probabilities({chi, {}, Absorber{Path::I, t}});
            const auto two = detector_probabilities({chi, {}, Absorber{Path::II, t}});
            EXPECT_NEAR(one.d1, 0.25, 1e-15);
            EXPECT_NEAR(two.d1, t / 4.0, 1e-15);
            EXPECT_NEAR(one.absorbed, (1.0 - t) / 2.0, 1e-15);
        }
    }
}

TEST(Neutron, SweepVisibilities) {
    const auto grid = uniform_chi_grid(100);
    const auto base = chi_sweep({}, grid);
    EXPECT_LE(base.visibility_d1, 1e-12);
    EXPECT_LE(base.visibility_d2, 1e-12);
    ASSERT_EQ(base.rows.size(), 100u);

    const auto two = chi_sweep({0.0, SpinRotation::field(Path::II, 0.2), {}}, grid);
    EXPECT_LE(two.visibility_d1, 1e-12);
    EXPECT_GT(two.visibility_d2, 0.0);

    const Complex b = kI * std::sin(0.1);
    const auto one = chi_sweep({0.0, SpinRotation::arm_one(std::cos(0.1), b), {}}, grid);
    EXPECT_NEAR(one.visibility_d1, 2.0 * std::abs(b) / (1.0 + std::norm(b)), 1e-10);
}

TEST(Neutron, FittedVisibilityOfKnownCurve) {
    const auto chi = uniform_chi_grid(37);
    std::vector<double> y;
    for (double c : chi) {
        y.push_back(2.0 + 0.3 * std::cos(c + 0.4));
    }
    EXPECT_NEAR(fitted_visibility(chi, y), 0.15, 1e-13);
    EXPECT_THROW(chi_sweep({}, {}), Error);
}

TEST(Neutron, SampleCounts) {
    const DetectorProbabilities p{0.25, 0.5, 0.0, 0.25};
    const auto a = sample_counts(p, 1000000, 5);
    const auto b = sample_counts(p, 1000000, 5);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.d1 + a.d2 + a.absorbed + a.rejected, 1000000u);
    const double sigma = std::sqrt(1e6 * 0.25 * 0.75);
    EXPECT_LT(std::abs(static_cast<double>(a.d1) - 250000.0), 5.0 * sigma);
    EXPECT_EQ(a.absorbed, 0u);

    const auto all = sample_counts({1.0, 0.0, 0.0, 0.0}, 1234, 9);
    EXPECT_EQ(all.d1, 1234u);
    EXPECT_THROW(sample_counts(p, 0, 1), Error);
    EXPECT_THROW(sample_counts({0.5, 0.6, 0.0, 0.0}, 10, 1), Error);
}

TEST(Neutron, SampleCountsConvergeAtRootN) {
    const DetectorProbabilities p{0.25, 0.5, 0.1, 0.15};
    for (std::uint64_t n : {10000ULL, 1000000ULL}) {
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto c = sample_counts(p, n, seed);
            worst = std::max(worst, std::abs(static_cast<double>(c.d2) / n - 0.5));
        }
        // 20 draws of a binomial frequency stay within 5 sigma.
        EXPECT_LT(worst, 5.0 * std::sqrt(0.25 / n)) << n;
    }
}

TEST(NeutronProperty, ProbabilityConservation) {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> n01;
    for (int t = 0; t < 2000; ++t) {
        NeutronScenario s;
        s.chi = 2.0 * std::numbers::pi * u(rng);
        const Path path = u(rng) < 0.5 ? Path::I : Path::II;
        if (t % 3 == 0) {
            s.absorber = Absorber{path, u(rng)};
        } else if (t % 3 == 1) {
            Complex a(n01(rng), n01(rng));
            Complex b(n01(rng), n01(rng));
            const double norm = std::sqrt(std::norm(a) + std::norm(b));
            s.rotation = path == Path::I ? SpinRotation::arm_one(a / norm, b / norm)
                                         : SpinRotation::arm_two(a / norm, b / norm);
        }
        const auto p = detector_probabilities(s);
        EXPECT_NEAR(p.total(), 1.0, 1e-12);
        EXPECT_GE(p.d1, -1e-15);
        EXPECT_GE(p.d2, -1e-15);
        EXPECT_GE(p.rejected, -1e-15);
        EXPECT_GE(p.absorbed, -1e-15);
    }
}

TEST(NeutronProperty, PathTwoRotationLeavesD1Flat) {
    std::mt19937_64 rng(33);
    std::normal_distribution<double> n01;
    for (int t = 0; t < 30; ++t) {
        Complex c(n01(rng), n01(rng));
        Complex d(n01(rng), n01(rng));
        const double norm = std::sqrt(std::norm(c) + std::norm(d));
        const auto sweep = chi_sweep({0.0, SpinRotation::arm_two(c / norm, d / norm), {}}, uniform_chi_grid(24));
        for (const auto &row : sweep.rows) {
            EXPECT_NEAR(row.p.d1, sweep.rows.front().p.d1, 1e-12);
        }
        EXPECT_GT(sweep.visibility_d2, 0.0);
    }
}

}  // namespace
}  // namespace cheshire
