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

#include "cheshire/analysis.hpp"

#include <cmath>
#include <random>

namespace cheshire {

Complex weak_value(const DiscreteKet &pre, const DiscreteKet &post, const DiscreteOperator &op) {
    const Complex denom = inner(post, pre);
    const double scale = std::sqrt(pre.norm2() * post.norm2());
    if (!(scale > 0.0) || std::abs(denom) <= 1e-12 * scale) {
        throw Error(ErrorCode::UndefinedWeakValue, "weak value undefined for orthogonal pre- and post-selection");
    }
    return inner(post, apply(op, pre)) / denom;
}

double predict_pointer_shift(Complex weak_value, double delta) { return delta * weak_value.real(); }

DiscreteOperator observable_operator(Observable obs) {
    switch (obs) {
        case Observable::PathI:
            return DiscreteOperator::path_projector(Path::I);
        case Observable::PathII:
            return DiscreteOperator::path_projector(Path::II);
        case Observable::SpinPathI:
            return DiscreteOperator::spin() * DiscreteOperator::path_projector(Path::I);
        case Observable::SpinPathII:
            return DiscreteOperator::spin() * DiscreteOperator::path_projector(Path::II);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown observable");
}

const char *observable_name(Observable obs) {
    switch (obs) {
        case Observable::PathI:
            return "path_I";
        case Observable::PathII:
            return "path_II";
        case Observable::SpinPathI:
            return "spin_path_I";
        case Observable::SpinPathII:
            return "spin_path_II";
    }
    return "unknown";
}

std::vector<WeakValueReport> photon_weak_value_reports(const InteractionSpec &spec) {
    spec.validate();
    const auto pre = photon_preselection();
    const auto post = photon_postselection();
    const auto joint = postselect(interact(preselect_photon(spec), spec), post);
    const auto [cx, cy] = centroid2d(joint);

    std::vector<WeakValueReport> out;
    for (auto obs : {Observable::PathI, Observable::PathII, Observable::SpinPathI, Observable::SpinPathII}) {
        WeakValueReport r{obs, weak_value(pre, post, observable_operator(obs)), 0.0, 0.0, std::nullopt, std::nullopt};
        if (obs == Observable::SpinPathI) {
            r.coupling = spec.delta_x;
            r.simulated_shift = cx;
        } else if (obs == Observable::PathII) {
            r.coupling = spec.delta_y;
            r.simulated_shift = cy;
        }
        r.predicted_shift = predict_pointer_shift(r.weak_value, r.coupling);
        if (r.simulated_shift) {
            r.discrepancy = std::abs(r.predicted_shift - *r.simulated_shift);
        }
        out.push_back(r);
    }
    return out;
}

const char *noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::PhasePre:
            return "phase-noise-pre";
        case NoiseKind::PhasePost:
            return "phase-noise-post";
        case NoiseKind::Amplitude:
            return "amplitude-noise";
    }
    return "unknown";
}

void DisturbanceModel::validate() const {
    if (!(strength >= 0.0) || !std::isfinite(strength)) {
        throw Error(ErrorCode::InvalidArgument, "disturbance strength must be finite and non-negative");
    }
    if (samples < 1) {
        throw Error(ErrorCode::InvalidArgument, "disturbance ensemble needs at least one sample");
    }
}

namespace {

struct Disturbed {
    DiscreteKet pre;
    DiscreteKet post;
};

Disturbed draw(const DisturbanceModel &model, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(model.seed), static_cast<std::uint32_t>(model.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    Disturbed d{photon_preselection(), photon_postselection()};
    auto v_pre = d.pre.amplitudes();
    auto v_post = d.post.amplitudes();
    const int arm2_h = detail::index_of({Path::II, Internal::H});
    const int arm1_v = detail::index_of({Path::I, Internal::V});
    switch (model.kind) {
        case NoiseKind::PhasePre:
        case NoiseKind::PhasePost: {
            std::uniform_real_distribution<double> phase(-model.strength, model.strength);
            const double theta = model.strength > 0.0 ? phase(rng) : 0.0;
            const Complex factor(std::cos(theta), std::sin(theta));
            if (model.kind == NoiseKind::PhasePre) {
                v_pre(arm2_h) *= factor;
            } else {
                v_post(arm1_v) *= factor;
            }
            break;
        }
        case NoiseKind::Amplitude: {
            std::normal_distribution<double> gauss(0.0, 1.0);
            const double xi = model.strength > 0.0 ? gauss(rng) : 0.0;
            v_post(arm1_v) *= std::max(0.0, 1.0 + model.strength * xi);
            break;
        }
    }
    return {DiscreteKet(Family::Linear, v_pre), DiscreteKet(Family::Linear, v_post)};
}

}  // namespace

Field2D EnsembleResult::density(const UniformGrid1D &gx, const UniformGrid1D &gy) const {
    const auto n = static_cast<std::size_t>(second_moment.rows());
    if (n == 0 || n != basis.size()) {
        throw Error(ErrorCode::NullPostselection, "ensemble has no post-selected samples");
    }
    std::vector<Field2D> re;
    std::vector<Field2D> im;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t idx[] = {k};
        re.push_back(term_field(basis, idx, Complex(1.0, 0.0), gx, gy));
        im.push_back(term_field(basis, idx, Complex(0.0, -1.0), gx, gy));
    }
    const Complex z = (term_gram(basis) * second_moment).trace();
    Field2D out{gx, gy, std::vector<double>(gx.n * gy.n, 0.0)};
    for (std::size_t p = 0; p < out.values.size(); ++p) {
        Complex sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex ti(re[i].values[p], im[i].values[p]);
            for (std::size_t j = 0; j < n; ++j) {
                const Complex tj(re[j].values[p], im[j].values[p]);
                sum += second_moment(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) * std::conj(ti) * tj;
            }
        }
        out.values[p] = sum.real() / z.real();
    }
    return out;
}

EnsembleResult disturbance_ensemble(const DisturbanceModel &model, const InteractionSpec &spec) {
    model.validate();
    spec.validate();

    EnsembleResult r;
    r.samples = model.samples;
    double sum_x = 0.0;
    double sum_y = 0.0;
    double sum_xx = 0.0;
    double sum_yy = 0.0;
    double sum_prob = 0.0;
    std::uint64_t used = 0;
    for (std::uint64_t k = 0; k < model.samples; ++k) {
        const auto d = draw(model, k);
        const auto hybrid = interact(preselect(d.pre, spec), spec);
        const auto joint = postselect(hybrid, d.post);
        if (r.basis.size() == 0) {
            std::vector<JointTerm> unit = joint.terms();
            for (auto &t : unit) {
                t.coeff = 1.0;
            }
            r.basis = PointerJointState(std::move(unit));
            r.second_moment = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(joint.size()),
                                                     static_cast<Eigen::Index>(joint.size()));
        }
        if (joint.size() != r.basis.size()) {
            throw Error(ErrorCode::InvalidArgument, "disturbance changed the branch structure");
        }
        Eigen::VectorXcd c(static_cast<Eigen::Index>(joint.size()));
        for (std::size_t i = 0; i < joint.size(); ++i) {
            if (!(joint.terms()[i].source == r.basis.terms()[i].source)) {
                throw Error(ErrorCode::InvalidArgument, "disturbance changed the branch structure");
            }
            c(static_cast<Eigen::Index>(i)) = joint.terms()[i].coeff;
        }
        r.second_moment += c * c.adjoint();
        sum_prob += postselection_probability(hybrid, joint, d.post);
        if (joint.is_null()) {
            ++r.null_samples;
            continue;
        }
        const auto [x, y] = centroid2d(joint);
        sum_x += x;
        sum_y += y;
        sum_xx += x * x;
        sum_yy += y * y;
        ++used;
    }

    r.mean_postselection_probability = sum_prob / static_cast<double>(model.samples);
    if (used > 0) {
        const double n = static_cast<double>(used);
        r.mean_x = sum_x / n;
        r.mean_y = sum_y / n;
        if (used > 1) {
            const double var_x = std::max(0.0, (sum_xx - n * r.mean_x * r.mean_x) / (n - 1.0));
            const double var_y = std::max(0.0, (sum_yy - n * r.mean_y * r.mean_y) / (n - 1.0));
            r.stderr_x = std::sqrt(var_x / n);
            r.stderr_y = std::sqrt(var_y / n);
        }
    }

    const Eigen::MatrixXcd g = term_gram(r.basis);
    const Eigen::MatrixXcd gm = g * r.second_moment;
    const double z = gm.trace().real();
    if (z > 0.0) {
        r.purity = (gm * gm).trace().real() / (z * z);
        r.density_centroid_x = (term_gram(r.basis, 1, 0) * r.second_moment).trace().real() / z;
        r.density_centroid_y = (term_gram(r.basis, 0, 1) * r.second_moment).trace().real() / z;
    }
    return r;
}

}  // namespace cheshire
