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

#include "cheshire/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cheshire {

namespace {

const Complex kI(0.0, 1.0);

Complex label_overlap(const BasisLabel &a, const BasisLabel &b) {
    return inner(DiscreteKet::basis(a), DiscreteKet::basis(b));
}

// Gram matrices of the two pointer factors.
struct Grams {
    std::vector<Complex> a;
    std::vector<Complex> b;
    std::size_t n;

    Complex ga(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    Complex gb(std::size_t i, std::size_t j) const { return b[i * n + j]; }
};

Grams grams(const std::vector<JointTerm> &terms) {
    const std::size_t n = terms.size();
    Grams g{std::vector<Complex>(n * n), std::vector<Complex>(n * n), n};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex a = overlap(terms[i].p1, terms[j].p1);
            Complex b = overlap(terms[i].p2, terms[j].p2);
            g.a[i * n + j] = a;
            g.a[j * n + i] = std::conj(a);
            g.b[i * n + j] = b;
            g.b[j * n + i] = std::conj(b);
        }
    }
    return g;
}

void require_non_null(const PointerJointState &joint, const char *what) {
    if (joint.is_null()) {
        throw Error(ErrorCode::NullPostselection, std::string(what) + " of a null post-selected state");
    }
}

std::vector<Complex> values_on(const PointerWavefunction &p, const UniformGrid1D &grid) {
    std::vector<Complex> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        v[i] = p(grid.at(i));
    }
    return v;
}

// F(x, y) = scale * sum_k c_k p1_k(x) p2_k(y) on the grid, row-major in y.
std::vector<Complex> amplitude_on(const PointerJointState &joint, std::span<const std::size_t> which, Complex scale,
                                  const UniformGrid1D &gx, const UniformGrid1D &gy) {
    std::vector<Complex> out(gx.n * gy.n, Complex(0.0));
    for (std::size_t k : which) {
        const auto &t = joint.terms().at(k);
        auto xs = values_on(t.p1, gx);
        auto ys = values_on(t.p2, gy);
        const Complex c = scale * t.coeff;
        for (std::size_t iy = 0; iy < gy.n; ++iy) {
            const Complex cy = c * ys[iy];
            Complex *row = out.data() + iy * gx.n;
            for (std::size_t ix = 0; ix < gx.n; ++ix) {
                row[ix] += cy * xs[ix];
            }
        }
    }
    return out;
}

std::vector<std::size_t> all_terms(const PointerJointState &joint) {
    std::vector<std::size_t> idx(joint.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        idx[k] = k;
    }
    return idx;
}

}  // namespace

void InteractionSpec::validate() const {
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw Error(ErrorCode::InvalidArgument, "pointer width must be positive");
    }
    if (!(delta_x >= 0.0) || !(delta_y >= 0.0) || !std::isfinite(delta_x) || !std::isfinite(delta_y)) {
        throw Error(ErrorCode::InvalidArgument, "displacements must be finite and non-negative");
    }
}

double HybridState::norm2() const {
    Complex sum = 0.0;
    for (const auto &bi : branches) {
        for (const auto &bj : branches) {
            sum += std::conj(bi.coeff) * bj.coeff * label_overlap(bi.label, bj.label) * overlap(bi.p1, bj.p1) *
                   overlap(bi.p2, bj.p2);
        }
    }
    return sum.real();
}

HybridState HybridState::merged() const {
    HybridState out;
    for (const auto &b : branches) {
        auto it = std::find_if(out.branches.begin(), out.branches.end(), [&](const HybridBranch &o) {
            return o.label == b.label && o.p1 == b.p1 && o.p2 == b.p2;
        });
        if (it == out.branches.end()) {
            out.branches.push_back(b);
        } else {
            it->coeff += b.coeff;
        }
    }
    return out;
}

std::optional<DiscreteKet> HybridState::collapse() const {
    DiscreteKet ket(Family::Linear);
    for (const auto &b : branches) {
        if (!(b.p1 == branches.front().p1) || !(b.p2 == branches.front().p2)) {
            return std::nullopt;
        }
        ket += b.coeff * DiscreteKet::basis(b.label);
    }
    return ket;
}

double PointerJointState::norm2() const {
    if (terms_.empty()) {
        return 0.0;
    }
    auto g = grams(terms_);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        for (std::size_t j = 0; j < terms_.size(); ++j) {
            sum += std::conj(terms_[i].coeff) * terms_[j].coeff * g.ga(i, j) * g.gb(i, j);
        }
    }
    return sum.real();
}

bool PointerJointState::is_null() const {
    double incoherent = 0.0;
    for (const auto &t : terms_) {
        incoherent += std::norm(t.coeff) * overlap(t.p1, t.p1).real() * overlap(t.p2, t.p2).real();
    }
    if (!(incoherent > 0.0)) {
        return true;
    }
    return norm2() <= 1e-24 * incoherent;
}

std::optional<std::size_t> PointerJointState::find(const BasisLabel &source) const {
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (terms_[k].source == source) {
            return k;
        }
    }
    return std::nullopt;
}

DiscreteKet photon_preselection() {
    const double r = 1.0 / std::sqrt(2.0);
    return DiscreteKet::from_terms({{{Path::I, Internal::H}, r}, {{Path::II, Internal::H}, kI * r}});
}

DiscreteKet photon_postselection() {
    const double r = 1.0 / std::sqrt(2.0);
    return DiscreteKet::from_terms({{{Path::I, Internal::V}, r}, {{Path::II, Internal::H}, r}});
}

HybridState preselect(const DiscreteKet &pre, const InteractionSpec &spec) {
    spec.validate();
    const auto rest = gaussian(spec.width, 0.0);
    HybridState s;
    for (int i = 0; i < 4; ++i) {
        Complex a = pre.amplitudes()(i);
        if (a != Complex(0.0)) {
            s.branches.push_back({detail::label_at(i, pre.family()), a, rest, rest});
        }
    }
    return s;
}

HybridState preselect_photon(const InteractionSpec &spec) { return preselect(photon_preselection(), spec); }

HybridState interact(const HybridState &state, const InteractionSpec &spec) {
    spec.validate();
    HybridState out;
    for (const auto &b : state.branches) {
        if (b.label.path == Path::II) {
            out.branches.push_back({b.label, b.coeff, b.p1, displace(b.p2, spec.delta_y)});
            continue;
        }
        // Arm I: re-express the internal state in the circular family.
        const auto circ = DiscreteKet::basis(b.label).in(Family::Circular);
        const BasisLabel plus{Path::I, Internal::Plus};
        const BasisLabel minus{Path::I, Internal::Minus};
        out.branches.push_back({plus, b.coeff * circ.amplitude(plus), displace(b.p1, spec.delta_x), b.p2});
        out.branches.push_back({minus, b.coeff * circ.amplitude(minus), displace(b.p1, -spec.delta_x), b.p2});
    }
    return out;
}

PointerJointState postselect(const HybridState &state, const DiscreteKet &post) {
    if (!(post.norm2() > 0.0)) {
        throw Error(ErrorCode::DegenerateInput, "post-selection onto the zero ket");
    }
    std::vector<JointTerm> terms;
    terms.reserve(state.branches.size());
    for (const auto &b : state.branches) {
        Complex c = b.coeff * inner(post, DiscreteKet::basis(b.label));
        terms.push_back({c, b.p1, b.p2, b.label});
    }
    return PointerJointState(std::move(terms));
}

double postselection_probability(const HybridState &state, const PointerJointState &joint,
                                 const DiscreteKet &post) {
    return joint.norm2() / (post.norm2() * state.norm2());
}

Field2D joint_density(const PointerJointState &joint, const UniformGrid1D &gx, const UniformGrid1D &gy) {
    require_non_null(joint, "density");
    gx.validate();
    gy.validate();
    auto idx = all_terms(joint);
    auto amp = amplitude_on(joint, idx, 1.0, gx, gy);
    const double inv = 1.0 / joint.norm2();
    Field2D f{gx, gy, std::vector<double>(amp.size())};
    for (std::size_t i = 0; i < amp.size(); ++i) {
        f.values[i] = std::norm(amp[i]) * inv;
    }
    return f;
}

Field2D term_field(const PointerJointState &joint, std::span<const std::size_t> terms, Complex scale,
                   const UniformGrid1D &gx, const UniformGrid1D &gy) {
    gx.validate();
    gy.validate();
    auto amp = amplitude_on(joint, terms, scale, gx, gy);
    Field2D f{gx, gy, std::vector<double>(amp.size())};
    for (std::size_t i = 0; i < amp.size(); ++i) {
        f.values[i] = amp[i].real();
    }
    return f;
}

std::pair<double, double> centroid2d(const PointerJointState &joint) {
    require_non_null(joint, "centroid");
    const auto &t = joint.terms();
    auto g = grams(t);
    Complex sx = 0.0;
    Complex sy = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = 0; j < t.size(); ++j) {
            Complex cc = std::conj(t[i].coeff) * t[j].coeff;
            sx += cc * moment(t[i].p1, t[j].p1, 1) * g.gb(i, j);
            sy += cc * g.ga(i, j) * moment(t[i].p2, t[j].p2, 1);
        }
    }
    const double n2 = joint.norm2();
    return {sx.real() / n2, sy.real() / n2};
}

std::vector<double> strong_lobe_weights(const PointerJointState &joint, double lobe_radius,
                                        std::size_t points_per_axis) {
    require_non_null(joint, "lobe weights");
    if (!(lobe_radius > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "lobe radius must be positive");
    }
    if (points_per_axis < 16) {
        throw Error(ErrorCode::InvalidArgument, "lobe integration needs at least 16 points per axis");
    }
    const auto &t = joint.terms();
    const std::size_t n = t.size();
    auto g = grams(t);

    std::vector<std::pair<double, double>> centers;
    centers.reserve(n);
    for (const auto &term : t) {
        centers.emplace_back(centroid(term.p1), centroid(term.p2));
    }
    const double spacing = 2.0 * lobe_radius / static_cast<double>(points_per_axis - 1);
    for (std::size_t k = 0; k < n; ++k) {
        const auto [cx, cy] = centers[k];
        if (std::max(std::abs(cx), std::abs(cy)) * 1e-10 > spacing) {
            throw Error(ErrorCode::Regime, "lobe centre too far from the origin to resolve the integration grid");
        }
        // Spacing must resolve the narrower pointer (standard deviation / 2).
        const double sd = std::sqrt(std::min(variance(t[k].p1), variance(t[k].p2)));
        if (spacing > 0.5 * sd) {
            throw Error(ErrorCode::Regime, "lobe radius too large for the integration grid to resolve the pointer");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double sep = std::hypot(centers[i].first - centers[j].first, centers[i].second - centers[j].second);
            if (lobe_radius >= 0.5 * sep) {
                throw Error(ErrorCode::Regime, "lobe radius must be below half the lobe separation");
            }
            if (t[i].coeff == Complex(0.0) || t[j].coeff == Complex(0.0)) {
                continue;
            }
            double ov = std::abs(g.ga(i, j) * g.gb(i, j)) /
                        std::sqrt(g.ga(i, i).real() * g.gb(i, i).real() * g.ga(j, j).real() * g.gb(j, j).real());
            if (ov > 1e-6) {
                throw Error(ErrorCode::Regime, "pointer terms overlap; not in the strong-measurement regime");
            }
        }
    }

    const double inv = 1.0 / joint.norm2();
    auto idx = all_terms(joint);
    std::vector<double> weights;
    weights.reserve(n);
    for (const auto &[cx, cy] : centers) {
        UniformGrid1D gx{cx - lobe_radius, cx + lobe_radius, points_per_axis};
        UniformGrid1D gy{cy - lobe_radius, cy + lobe_radius, points_per_axis};
        auto amp = amplitude_on(joint, idx, 1.0, gx, gy);
        Field2D density{gx, gy, std::vector<double>(amp.size())};
        for (std::size_t i = 0; i < amp.size(); ++i) {
            density.values[i] = std::norm(amp[i]) * inv;
        }
        const double r2 = lobe_radius * lobe_radius;
        weights.push_back(density.integral_where([&](double x, double y) {
            return (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r2;
        }));
    }
    return weights;
}

Eigen::MatrixXcd term_gram(const PointerJointState &joint, int x_power, int y_power) {
    const auto &t = joint.terms();
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto &ti = t[static_cast<std::size_t>(i)];
            const auto &tj = t[static_cast<std::size_t>(j)];
            g(i, j) = moment(ti.p1, tj.p1, x_power) * moment(ti.p2, tj.p2, y_power);
        }
    }
    return g;
}

double pointer_entanglement(const PointerJointState &joint) {
    require_non_null(joint, "entanglement");
    const auto &t = joint.terms();
    const std::size_t n = t.size();
    auto g = grams(t);
    // rho1 = sum_ij c_i conj(c_j) <b_j|b_i> |a_i><a_j|, so
    // Tr rho1^2 = sum_ijkl c_i c_j* c_k c_l* <a_j|a_k><a_l|a_i><b_j|b_i><b_l|b_k>.
    Complex sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex cij = t[i].coeff * std::conj(t[j].coeff) * g.gb(j, i);
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    sum += cij * t[k].coeff * std::conj(t[l].coeff) * g.ga(j, k) * g.ga(l, i) * g.gb(l, k);
                }
            }
        }
    }
    const double n2 = joint.norm2();
    return sum.real() / (n2 * n2);
}

std::size_t photon_term_index(const PointerJointState &joint, PhotonTerm which) {
    BasisLabel source{Path::II, Internal::H};
    if (which == PhotonTerm::ArmIPlus) {
        source = {Path::I, Internal::Plus};
    } else if (which == PhotonTerm::ArmIMinus) {
        source = {Path::I, Internal::Minus};
    }
    auto k = joint.find(source);
    if (!k) {
        throw Error(ErrorCode::InvalidArgument, "joint state has no term from " + to_string(source));
    }
    return *k;
}

}  // namespace cheshire
