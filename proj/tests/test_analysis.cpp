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

#include "cheshire/analysis.hpp"

namespace cheshire {
namespace {

const Complex kI(0.0, 1.0);

DiscreteKet random_ket(std::mt19937_64 &rng) {
    std::normal_distribution<double> n01;
    detail::Vector4c v;
    for (int i = 0; i < 4; ++i) {
        v(i) = Complex(n01(rng), n01(rng));
    }
    return DiscreteKet(Family::Linear, v);
}

TEST(Analysis, PhotonWeakValues) {
    const auto pre = photon_preselection();
    const auto post = photon_postselection();
    EXPECT_LT(std::abs(weak_value(pre, post, observable_operator(Observable::PathI))), 1e-15);
    EXPECT_LT(std::abs(weak_value(pre, post, observable_operator(Observable::PathII)) - 1.0), 1e-15);
    EXPECT_LT(std::abs(weak_value(pre, post, observable_operator(Observable::SpinPathI)) - 1.0), 1e-15);
    EXPECT_LT(std::abs(weak_value(pre, post, observable_operator(Observable::SpinPathII))), 1e-15);
}

TEST(Analysis, SpinWeakValueByHand) {
    // sigma Pi_I |Psi> = (i/sqrt2)|I V>, so <Phi|.> = i/2 = <Phi|Psi>.
    const double r = 1.0 / std::sqrt(2.0);
    const auto moved = DiscreteKet::from_terms({{{Path::I, Internal::V}, kI * r}});
    const auto got = apply(observable_operator(Observable::SpinPathI), photon_preselection());
    EXPECT_LT((got.in(Family::Linear).amplitudes() - moved.amplitudes()).norm(), 1e-15);
}

TEST(Analysis, IdentityWeakValueIsOne) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 100; ++t) {
        const auto a = random_ket(rng);
        const auto b = random_ket(rng);
        EXPECT_LT(std::abs(weak_value(a, b, DiscreteOperator::identity()) - 1.0), 1e-12);
    }
}

TEST(Analysis, OrthogonalPairIsUndefined) {
    const auto a = DiscreteKet::basis({Path::I, Internal::H});
    const auto b = DiscreteKet::basis({Path::II, Internal::H});
    try {
        weak_value(a, b, DiscreteOperator::identity());
        FAIL() << "expected UndefinedWeakValue";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::UndefinedWeakValue);
    }
}

TEST(Analysis, PredictedShift) {
    EXPECT_DOUBLE_EQ(predict_pointer_shift(1.0, 1e-3), 1e-3);
    EXPECT_DOUBLE_EQ(predict_pointer_shift(0.0, 0.5), 0.0);
    EXPECT_DOUBLE_EQ(predict_pointer_shift(Complex(0.5, 7.0), 2.0), 1.0);
}

TEST(Analysis, ReportsMatchSimulation) {
    const auto reports = photon_weak_value_reports({1e-3, 1e-3, 1.0});
    ASSERT_EQ(reports.size(), 4u);
    int probed = 0;
    for (const auto &r : reports) {
        if (r.simulated_shift) {
            ++probed;
            EXPECT_NEAR(*r.discrepancy, std::abs(r.predicted_shift - *r.simulated_shift), 0.0);
            EXPECT_NEAR(*r.simulated_shift / r.predicted_shift, 1.0, 1e-4);
        }
    }
    EXPECT_EQ(probed, 2);
}

TEST(Analysis, DiscrepancyScalesQuadratically) {
    // Relative discrepancy |predicted - simulated| / delta = c (delta/W)^2
    // with c stable across decades; the bound c (delta/W)^2 W on the absolute
    // discrepancy then holds with the largest-delta constant.
    std::vector<double> c;
    std::vector<double> abs_disc;
    const std::vector<double> deltas{1e-1, 1e-2, 1e-3};
    for (double d : deltas) {
        for (const auto &r : photon_weak_value_reports({d, d, 1.0})) {
            if (r.observable == Observable::PathII) {
                c.push_back(*r.discrepancy / d / (d * d));
                abs_disc.push_back(*r.discrepancy);
            }
        }
    }
    ASSERT_EQ(c.size(), 3u);
    EXPECT_NEAR(c[1] / c[0], 1.0, 0.2);
    EXPECT_NEAR(c[2] / c[1], 1.0, 0.2);
    const double bound = abs_disc[0] / (deltas[0] * deltas[0]);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_LE(abs_disc[k], bound * deltas[k] * deltas[k] * (1.0 + 1e-12));
    }
}

TEST(AnalysisProperty, WeakValueInvariantUnderPhaseAndScale) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int t = 0; t < 200; ++t) {
        const auto a = random_ket(rng);
        const auto b = random_ket(rng);
        const auto op = observable_operator(static_cast<Observable>(t % 4));
        const Complex base = weak_value(a, b, op);
        const Complex fa = std::polar(u(rng), u(rng));
        const Complex fb = std::polar(u(rng), u(rng));
        EXPECT_LT(std::abs(weak_value(fa * a, fb * b, op) - base), 1e-12 * (1.0 + std::abs(base)));
    }
}

TEST(AnalysisProperty, PathSumRule) {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 500; ++t) {
        const auto a = random_ket(rng);
        const auto b = random_ket(rng);
        if (std::abs(inner(b, a)) < 1e-3) {
            continue;
        }
        const Complex s = weak_value(a, b, observable_operator(Observable::PathI)) +
                          weak_value(a, b, observable_operator(Observable::PathII));
        EXPECT_LT(std::abs(s - 1.0), 1e-11);
    }
}

TEST(Ensemble, ZeroStrengthEqualsNoiselessRun) {
    const InteractionSpec spec{0.1, 0.1, 1.0};
    const auto r = disturbance_ensemble({NoiseKind::PhasePost, 0.0, 5, 1}, spec);
    const auto [cx, cy] = centroid2d(postselect(interact(preselect_photon(spec), spec), photon_postselection()));
    EXPECT_NEAR(r.mean_x, cx, 1e-15);
    EXPECT_NEAR(r.mean_y, cy, 1e-15);
    EXPECT_NEAR(r.density_centroid_x, cx, 1e-14);
    EXPECT_NEAR(r.density_centroid_y, cy, 1e-14);
    EXPECT_NEAR(r.purity, 1.0, 1e-14);
    EXPECT_DOUBLE_EQ(r.stderr_x, 0.0);
}

TEST(Ensemble, BitReproducible) {
    const InteractionSpec spec{1e-3, 1e-3, 1.0};
    for (auto kind : {NoiseKind::PhasePre, NoiseKind::PhasePost, NoiseKind::Amplitude}) {
        const auto a = disturbance_ensemble({kind, 0.7, 200, 99}, spec);
        const auto b = disturbance_ensemble({kind, 0.7, 200, 99}, spec);
        EXPECT_EQ(a.mean_x, b.mean_x);
        EXPECT_EQ(a.stderr_y, b.stderr_y);
        EXPECT_EQ(a.purity, b.purity);
        EXPECT_EQ(a.second_moment, b.second_moment);
    }
}

TEST(Ensemble, UniformPhaseNoiseWashesOutXShift) {
    const InteractionSpec spec{1e-3, 1e-3, 1.0};
    const auto r = disturbance_ensemble({NoiseKind::PhasePost, std::numbers::pi, 10000, 7}, spec);
    EXPECT_LE(std::abs(r.mean_x), 3.0 * r.stderr_x);
    EXPECT_GT(r.stderr_x, 0.0);
    // The presence readout in arm II is untouched by this disturbance.
    EXPECT_NEAR(r.mean_y / 1e-3, 1.0, 1e-2);
}

TEST(Ensemble, StandardErrorScalesAsRootN) {
    const InteractionSpec spec{1e-3, 1e-3, 1.0};
    const auto small = disturbance_ensemble({NoiseKind::PhasePost, std::numbers::pi, 100, 3}, spec);
    const auto big = disturbance_ensemble({NoiseKind::PhasePost, std::numbers::pi, 10000, 3}, spec);
    EXPECT_NEAR(small.stderr_x / big.stderr_x, 10.0, 2.0);
}

TEST(Ensemble, DensityNormalizedAndConsistentWithCentroid) {
    const InteractionSpec spec{0.3, 0.3, 1.0};
    const auto r = disturbance_ensemble({NoiseKind::PhasePost, 1.5, 300, 5}, spec);
    const auto grid = default_grid(1.0, 256);
    const auto d = r.density(grid, grid);
    EXPECT_NEAR(d.integral(), 1.0, 1e-8);
    double mx = 0.0;
    double my = 0.0;
    const auto w = trapezoid_weights(grid);
    for (std::size_t iy = 0; iy < grid.n; ++iy) {
        for (std::size_t ix = 0; ix < grid.n; ++ix) {
            mx += w[ix] * w[iy] * grid.at(ix) * d.at(ix, iy);
            my += w[ix] * w[iy] * grid.at(iy) * d.at(ix, iy);
        }
    }
    EXPECT_NEAR(mx, r.density_centroid_x, 1e-8);
    EXPECT_NEAR(my, r.density_centroid_y, 1e-8);
    EXPECT_LT(r.purity, 1.0);
    EXPECT_GT(r.purity, 0.0);
}

TEST(Ensemble, InvalidModelRejected) {
    const InteractionSpec spec;
    EXPECT_THROW(disturbance_ensemble({NoiseKind::PhasePost, -1.0, 10, 1}, spec), Error);
    EXPECT_THROW(disturbance_ensemble({NoiseKind::PhasePost, 1.0, 0, 1}, spec), Error);
}

}  // namespace
}  // namespace cheshire
