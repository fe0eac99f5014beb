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

#include "cheshire/neutron.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace cheshire {

namespace {

const Complex kI(0.0, 1.0);

void require_unit(Complex x, Complex y) {
    if (std::abs(std::norm(x) + std::norm(y) - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidArgument, "spin rotation coefficients must satisfy |x|^2 + |y|^2 = 1");
    }
}

Complex e_i(double phase) { return {std::cos(phase), std::sin(phase)}; }

}  // namespace

SpinRotation SpinRotation::arm_one(Complex a, Complex b) {
    require_unit(a, b);
    Eigen::Matrix2cd m;
    m << a, -std::conj(b), b, std::conj(a);
    return SpinRotation(Path::I, m);
}

SpinRotation SpinRotation::arm_two(Complex c, Complex d) {
    require_unit(c, d);
    Eigen::Matrix2cd m;
    m << std::conj(c), d, -std::conj(d), c;
    return SpinRotation(Path::II, m);
}

SpinRotation SpinRotation::field(Path path, double alpha) {
    const Complex keep = std::cos(0.5 * alpha);
    const Complex flip = kI * std::sin(0.5 * alpha);
    return path == Path::I ? arm_one(keep, flip) : arm_two(keep, flip);
}

DiscreteKet preselect_neutron() {
    const double r = 1.0 / std::sqrt(2.0);
    return DiscreteKet::from_terms({{{Path::I, Internal::Plus}, r}, {{Path::II, Internal::Minus}, r}});
}

DiscreteKet apply_absorber(const DiscreteKet &state, const Absorber &absorber) {
    const double t = absorber.transmissivity;
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "absorber transmissivity must lie in [0, 1]");
    }
    auto v = state.amplitudes();
    const int o = 2 * static_cast<int>(absorber.path);
    v(o) *= std::sqrt(t);
    v(o + 1) *= std::sqrt(t);
    return DiscreteKet(state.family(), v);
}

DiscreteKet apply_rotation(const DiscreteKet &state, const SpinRotation &rotation) {
    auto circ = state.in(Family::Circular);
    auto v = circ.amplitudes();
    const int o = 2 * static_cast<int>(rotation.path());
    Eigen::Vector2cd block(v(o), v(o + 1));
    block = rotation.matrix() * block;
    v(o) = block(0);
    v(o + 1) = block(1);
    return DiscreteKet(Family::Circular, v);
}

DiscreteKet d1_post_state(double chi) {
    const double r = 1.0 / std::sqrt(2.0);
    return DiscreteKet::from_terms({{{Path::I, Internal::Minus}, r}, {{Path::II, Internal::Minus}, r * e_i(chi)}});
}

DiscreteKet d2_post_state(double chi, Internal spin) {
    if (family_of(spin) != Family::Circular) {
        throw Error(ErrorCode::BasisMismatch, "neutron spin labels are + and -");
    }
    const double r = 1.0 / std::sqrt(2.0);
    return DiscreteKet::from_terms({{{Path::I, spin}, r}, {{Path::II, spin}, -r * e_i(chi)}});
}

DetectorProbabilities detector_probabilities(const NeutronScenario &scenario) {
    DiscreteKet state = preselect_neutron();
    if (scenario.rotation) {
        state = apply_rotation(state, *scenario.rotation);
    }
    if (scenario.absorber) {
        state = apply_absorber(state, *scenario.absorber);
    }
    const double chi = scenario.chi;
    const double r = 1.0 / std::sqrt(2.0);
    const auto rejected_post =
        DiscreteKet::from_terms({{{Path::I, Internal::Plus}, r}, {{Path::II, Internal::Plus}, r * e_i(chi)}});

    DetectorProbabilities p;
    p.d1 = detection_probability(state, d1_post_state(chi));
    p.d2 = detection_probability(state, d2_post_state(chi, Internal::Plus)) +
           detection_probability(state, d2_post_state(chi, Internal::Minus));
    p.rejected = detection_probability(state, rejected_post);
    p.absorbed = 1.0 - state.norm2();
    return p;
}

std::vector<double> uniform_chi_grid(std::size_t count) {
    std::vector<double> chi(count);
    for (std::size_t k = 0; k < count; ++k) {
        chi[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    }
    return chi;
}

double fitted_visibility(const std::vector<double> &chi, const std::vector<double> &y) {
    if (chi.empty() || chi.size() != y.size()) {
        throw Error(ErrorCode::InvalidArgument, "visibility fit needs matching, non-empty samples");
    }
    auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double raw = (*hi + *lo) > 0.0 ? (*hi - *lo) / (*hi + *lo) : 0.0;
    if (chi.size() < 3) {
        return raw;
    }
    Eigen::MatrixXd design(static_cast<Eigen::Index>(chi.size()), 3);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(chi.size()));
    for (std::size_t k = 0; k < chi.size(); ++k) {
        auto r = static_cast<Eigen::Index>(k);
        design(r, 0) = 1.0;
        design(r, 1) = std::cos(chi[k]);
        design(r, 2) = std::sin(chi[k]);
        rhs(r) = y[k];
    }
    auto qr = design.colPivHouseholderQr();
    qr.setThreshold(1e-10);
    if (qr.rank() < 3) {
        return raw;
    }
    Eigen::Vector3d coef = qr.solve(rhs);
    if (!(coef(0) > 0.0)) {
        return 0.0;
    }
    return std::hypot(coef(1), coef(2)) / coef(0);
}

ChiSweep chi_sweep(const NeutronScenario &scenario, const std::vector<double> &chi_grid) {
    if (chi_grid.empty()) {
        throw Error(ErrorCode::InvalidArgument, "chi grid must not be empty");
    }
    ChiSweep sweep;
    sweep.rows.reserve(chi_grid.size());
    std::vector<double> d1;
    std::vector<double> d2;
    NeutronScenario s = scenario;
    for (double chi : chi_grid) {
        s.chi = chi;
        auto p = detector_probabilities(s);
        sweep.rows.push_back({chi, p});
        d1.push_back(p.d1);
        d2.push_back(p.d2);
    }
    sweep.visibility_d1 = fitted_visibility(chi_grid, d1);
    sweep.visibility_d2 = fitted_visibility(chi_grid, d2);
    auto raw = [](const std::vector<double> &y) {
        auto [lo, hi] = std::minmax_element(y.begin(), y.end());
        return (*hi + *lo) > 0.0 ? (*hi - *lo) / (*hi + *lo) : 0.0;
    };
    sweep.raw_visibility_d1 = raw(d1);
    sweep.raw_visibility_d2 = raw(d2);
    return sweep;
}

DetectorCounts sample_counts(const DetectorProbabilities &p, std::uint64_t n, std::uint64_t seed) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "sample size must be positive");
    }
    const std::array<double, 4> probs{p.d1, p.d2, p.absorbed, p.rejected};
    for (double q : probs) {
        if (!(q >= -1e-12) || !std::isfinite(q)) {
            throw Error(ErrorCode::InvalidArgument, "channel probabilities must be non-negative");
        }
    }
    if (std::abs(p.total() - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidArgument, "channel probabilities must sum to one");
    }
    std::mt19937_64 rng(seed);
    std::array<std::uint64_t, 4> counts{};
    std::uint64_t remaining = n;
    double rest = 1.0;
    for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
        const double q = std::max(probs[k], 0.0);
        const double cond = rest > 0.0 ? std::clamp(q / rest, 0.0, 1.0) : 0.0;
        std::uint64_t drawn = 0;
        if (cond >= 1.0) {
            drawn = remaining;
        } else if (cond > 0.0 && remaining > 0) {
            std::binomial_distribution<std::uint64_t> binom(remaining, cond);
            drawn = binom(rng);
        }
        counts[k] = drawn;
        remaining -= drawn;
        rest -= q;
    }
    counts[3] = remaining;
    return {counts[0], counts[1], counts[2], counts[3]};
}

}  // namespace cheshire
