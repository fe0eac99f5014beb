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

#include "cheshire/pointer.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>

#include "cheshire/io.hpp"

namespace cheshire {

void UniformGrid1D::validate() const {
    if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
        throw Error(ErrorCode::InvalidArgument, "grid requires finite min < max");
    }
    if (n < 16) {
        throw Error(ErrorCode::InvalidArgument, "grid requires at least 16 points");
    }
}

UniformGrid1D default_grid(double width, std::size_t n, double half_span_in_widths) {
    if (!(width > 0.0) || !(half_span_in_widths > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "default grid requires positive width and span");
    }
    UniformGrid1D g{-half_span_in_widths * width, half_span_in_widths * width, n};
    g.validate();
    return g;
}

PointerWavefunction::PointerWavefunction(GaussianProfile g) : rep_(g) {
    if (!(g.width > 0.0) || !std::isfinite(g.width)) {
        throw Error(ErrorCode::InvalidArgument, "Gaussian width must be positive");
    }
}

PointerWavefunction::PointerWavefunction(SampledProfile s) : rep_(std::move(s)) {
    const auto &sp = std::get<SampledProfile>(rep_);
    sp.grid.validate();
    if (sp.values.size() != sp.grid.n) {
        throw Error(ErrorCode::InvalidArgument, "sampled profile size does not match its grid");
    }
}

Complex PointerWavefunction::operator()(double x) const {
    if (const auto *g = std::get_if<GaussianProfile>(&rep_)) {
        double u = (x - g->center) / g->width;
        return g->amplitude * std::exp(-u * u);
    }
    const auto &s = std::get<SampledProfile>(rep_);
    if (x < s.grid.min || x > s.grid.max) {
        return 0.0;
    }
    double t = (x - s.grid.min) / s.grid.spacing();
    auto i = static_cast<std::size_t>(t);
    if (i + 1 >= s.grid.n) {
        return s.values.back();
    }
    double f = t - static_cast<double>(i);
    return (1.0 - f) * s.values[i] + f * s.values[i + 1];
}

PointerWavefunction PointerWavefunction::scaled(Complex factor) const {
    if (const auto *g = std::get_if<GaussianProfile>(&rep_)) {
        GaussianProfile out = *g;
        out.amplitude *= factor;
        return out;
    }
    SampledProfile out = std::get<SampledProfile>(rep_);
    for (auto &v : out.values) {
        v *= factor;
    }
    return out;
}

PointerWavefunction gaussian(double width, double center) {
    return GaussianProfile{width, center, Complex(1.0, 0.0)};
}

PointerWavefunction sample(const PointerWavefunction &p, const UniformGrid1D &grid) {
    grid.validate();
    if (!p.is_analytic()) {
        if (!(p.sampled().grid == grid)) {
            throw Error(ErrorCode::IncompatibleGrid, "resampling between different grids is not supported");
        }
        return p;
    }
    if (grid.spacing() > p.gaussian().width / 8.0) {
        throw Error(ErrorCode::InvalidArgument, "grid must resolve at least 8 points per pointer width");
    }
    SampledProfile s{grid, std::vector<Complex>(grid.n)};
    for (std::size_t i = 0; i < grid.n; ++i) {
        s.values[i] = p(grid.at(i));
    }
    return s;
}

namespace {

std::mutex &fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<Complex> spectral_shift(const std::vector<Complex> &values, double spacing, double delta) {
    const std::size_t n = values.size();
    std::vector<Complex> in(values);
    std::vector<Complex> spectrum(n);
    std::vector<Complex> out(n);
    auto *in_ptr = reinterpret_cast<fftw_complex *>(in.data());
    auto *spec_ptr = reinterpret_cast<fftw_complex *>(spectrum.data());
    auto *out_ptr = reinterpret_cast<fftw_complex *>(out.data());
    fftw_plan forward;
    fftw_plan backward;
    {
        std::lock_guard lock(fftw_planner_mutex());
        forward = fftw_plan_dft_1d(static_cast<int>(n), in_ptr, spec_ptr, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(static_cast<int>(n), spec_ptr, out_ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(forward);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * spacing);
    for (std::size_t m = 0; m < n; ++m) {
        double freq = m <= n / 2 ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(n);
        double phase = -dk * freq * delta;
        if (n % 2 == 0 && m == n / 2) {
            // Nyquist bin: keep the shifted signal real for real input.
            spectrum[m] *= std::cos(phase);
        } else {
            spectrum[m] *= Complex(std::cos(phase), std::sin(phase));
        }
    }
    fftw_execute(backward);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto &v : out) {
        v *= inv_n;
    }
    return out;
}

bool same_grid(const UniformGrid1D &a, const UniformGrid1D &b) {
    if (a.n != b.n) {
        return false;
    }
    double tol = 1e-12 * std::max(a.span(), b.span());
    return std::abs(a.min - b.min) <= tol && std::abs(a.max - b.max) <= tol;
}

Complex gaussian_moment(const GaussianProfile &p, const GaussianProfile &q, int power) {
    const double a1 = 1.0 / (p.width * p.width);
    const double a2 = 1.0 / (q.width * q.width);
    const double a = a1 + a2;
    const double mean = (a1 * p.center + a2 * q.center) / a;
    const double d = p.center - q.center;
    const Complex base = std::conj(p.amplitude) * q.amplitude * std::exp(-a1 * a2 * d * d / a) *
                         std::sqrt(std::numbers::pi / a);
    switch (power) {
        case 0:
            return base;
        case 1:
            return base * mean;
        default:
            return base * (mean * mean + 0.5 / a);
    }
}

Complex sampled_moment(const UniformGrid1D &grid, const std::vector<Complex> &p, const std::vector<Complex> &q,
                       int power) {
    const double h = grid.spacing();
    Complex sum = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        double w = (i == 0 || i + 1 == grid.n) ? 0.5 : 1.0;
        double x = grid.at(i);
        double xp = power == 0 ? 1.0 : (power == 1 ? x : x * x);
        sum += w * xp * std::conj(p[i]) * q[i];
    }
    return sum * h;
}

std::vector<Complex> values_on(const PointerWavefunction &p, const UniformGrid1D &grid) {
    if (!p.is_analytic()) {
        return p.sampled().values;
    }
    std::vector<Complex> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        v[i] = p(grid.at(i));
    }
    return v;
}

}  // namespace

PointerWavefunction displace(const PointerWavefunction &p, double delta) {
    if (!std::isfinite(delta)) {
        throw Error(ErrorCode::InvalidArgument, "displacement must be finite");
    }
    if (p.is_analytic()) {
        GaussianProfile g = p.gaussian();
        g.center += delta;
        return g;
    }
    const auto &s = p.sampled();
    if (std::abs(delta) >= 0.1 * s.grid.span()) {
        throw Error(ErrorCode::Regime, "displacement exceeds 10% of the sampled grid span");
    }
    if (delta == 0.0) {
        return p;
    }
    return SampledProfile{s.grid, spectral_shift(s.values, s.grid.spacing(), delta)};
}

Complex moment(const PointerWavefunction &p, const PointerWavefunction &q, int power) {
    if (power < 0 || power > 2) {
        throw Error(ErrorCode::InvalidArgument, "moment power must be 0, 1 or 2");
    }
    if (p.is_analytic() && q.is_analytic()) {
        return gaussian_moment(p.gaussian(), q.gaussian(), power);
    }
    if (!p.is_analytic() && !q.is_analytic() && !same_grid(p.sampled().grid, q.sampled().grid)) {
        throw Error(ErrorCode::IncompatibleGrid, "sampled profiles live on different grids");
    }
    const UniformGrid1D &grid = p.is_analytic() ? q.sampled().grid : p.sampled().grid;
    return sampled_moment(grid, values_on(p, grid), values_on(q, grid), power);
}

Complex overlap(const PointerWavefunction &p, const PointerWavefunction &q) { return moment(p, q, 0); }

Complex normalized_overlap(const PointerWavefunction &p, const PointerWavefunction &q) {
    return overlap(p, q) / std::sqrt(norm2(p) * norm2(q));
}

double norm2(const PointerWavefunction &p) {
    double n2 = moment(p, p, 0).real();
    if (!(n2 > 0.0)) {
        throw Error(ErrorCode::DegenerateInput, "pointer profile has zero norm");
    }
    return n2;
}

double centroid(const PointerWavefunction &p) { return moment(p, p, 1).real() / norm2(p); }

double variance(const PointerWavefunction &p) {
    double n2 = norm2(p);
    double mean = moment(p, p, 1).real() / n2;
    return moment(p, p, 2).real() / n2 - mean * mean;
}

std::vector<double> trapezoid_weights(const UniformGrid1D &grid) {
    std::vector<double> w(grid.n, grid.spacing());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

void write_profile_csv(std::ostream &out, const PointerWavefunction &p, const UniformGrid1D &grid,
                       std::string_view comment) {
    grid.validate();
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << "x,re,im\n";
    for (std::size_t i = 0; i < grid.n; ++i) {
        double x = grid.at(i);
        Complex v = p(x);
        out << format_double(x) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
}

}  // namespace cheshire
