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

#include "cheshire/qstate.hpp"

#include <cmath>

namespace cheshire {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "invalid argument";
        case ErrorCode::BasisMismatch:
            return "basis mismatch";
        case ErrorCode::DegenerateInput:
            return "degenerate input";
        case ErrorCode::IncompatibleGrid:
            return "incompatible grid";
        case ErrorCode::Regime:
            return "regime error";
        case ErrorCode::NullPostselection:
            return "null post-selection";
        case ErrorCode::UndefinedWeakValue:
            return "undefined weak value";
        case ErrorCode::Io:
            return "i/o error";
    }
    return "unknown error";
}

Family family_of(Internal internal) {
    return (internal == Internal::H || internal == Internal::V) ? Family::Linear : Family::Circular;
}

Path other(Path path) { return path == Path::I ? Path::II : Path::I; }

std::string to_string(const BasisLabel &label) {
    std::string s = label.path == Path::I ? "|I>" : "|II>";
    switch (label.internal) {
        case Internal::H:
            return s + "|H>";
        case Internal::V:
            return s + "|V>";
        case Internal::Plus:
            return s + "|+>";
        case Internal::Minus:
            return s + "|->";
    }
    return s;
}

namespace detail {

int index_of(const BasisLabel &label) {
    int internal = (label.internal == Internal::H || label.internal == Internal::Plus) ? 0 : 1;
    return 2 * static_cast<int>(label.path) + internal;
}

BasisLabel label_at(int index, Family family) {
    Path path = index < 2 ? Path::I : Path::II;
    bool first = index % 2 == 0;
    if (family == Family::Linear) {
        return {path, first ? Internal::H : Internal::V};
    }
    return {path, first ? Internal::Plus : Internal::Minus};
}

const Matrix4c &linear_to_circular() {
    // a+ = (cH - i cV)/sqrt2, a- = (cH + i cV)/sqrt2 on each path block.
    static const Matrix4c u = [] {
        const double r = 1.0 / std::sqrt(2.0);
        const Complex i(0.0, 1.0);
        Matrix4c m = Matrix4c::Zero();
        for (int p = 0; p < 2; ++p) {
            int o = 2 * p;
            m(o, o) = r;
            m(o, o + 1) = -i * r;
            m(o + 1, o) = r;
            m(o + 1, o + 1) = i * r;
        }
        return m;
    }();
    return u;
}

}  // namespace detail

namespace {

detail::Vector4c convert(const detail::Vector4c &v, Family from, Family to) {
    if (from == to) {
        return v;
    }
    const auto &u = detail::linear_to_circular();
    return from == Family::Linear ? detail::Vector4c(u * v) : detail::Vector4c(u.adjoint() * v);
}

detail::Matrix4c convert(const detail::Matrix4c &m, Family from, Family to) {
    if (from == to) {
        return m;
    }
    const auto &u = detail::linear_to_circular();
    return from == Family::Linear ? detail::Matrix4c(u * m * u.adjoint()) : detail::Matrix4c(u.adjoint() * m * u);
}

}  // namespace

DiscreteKet::DiscreteKet(Family family) : family_(family), amplitudes_(detail::Vector4c::Zero()) {}

DiscreteKet::DiscreteKet(Family family, const detail::Vector4c &amplitudes)
    : family_(family), amplitudes_(amplitudes) {}

DiscreteKet DiscreteKet::basis(const BasisLabel &label) {
    DiscreteKet k(family_of(label.internal));
    k.amplitudes_(detail::index_of(label)) = 1.0;
    return k;
}

DiscreteKet DiscreteKet::from_terms(std::initializer_list<std::pair<BasisLabel, Complex>> terms) {
    if (terms.size() == 0) {
        return DiscreteKet();
    }
    Family family = family_of(terms.begin()->first.internal);
    DiscreteKet k(family);
    for (const auto &[label, amp] : terms) {
        if (family_of(label.internal) != family) {
            throw Error(ErrorCode::BasisMismatch,
                        "ket terms mix linear and circular internal labels: " + to_string(label));
        }
        k.amplitudes_(detail::index_of(label)) += amp;
    }
    return k;
}

Complex DiscreteKet::amplitude(const BasisLabel &label) const {
    return in(family_of(label.internal)).amplitudes_(detail::index_of(label));
}

DiscreteKet DiscreteKet::in(Family family) const {
    return DiscreteKet(family, convert(amplitudes_, family_, family));
}

double DiscreteKet::norm2() const { return amplitudes_.squaredNorm(); }

DiscreteKet DiscreteKet::normalized() const {
    double n2 = norm2();
    if (!(n2 > 0.0)) {
        throw Error(ErrorCode::DegenerateInput, "cannot normalize the zero ket");
    }
    return DiscreteKet(family_, amplitudes_ / std::sqrt(n2));
}

DiscreteKet &DiscreteKet::operator+=(const DiscreteKet &other) {
    amplitudes_ += convert(other.amplitudes_, other.family_, family_);
    return *this;
}

DiscreteKet &DiscreteKet::operator-=(const DiscreteKet &other) {
    amplitudes_ -= convert(other.amplitudes_, other.family_, family_);
    return *this;
}

DiscreteKet &DiscreteKet::operator*=(Complex scale) {
    amplitudes_ *= scale;
    return *this;
}

DiscreteOperator::DiscreteOperator(Family family) : family_(family), matrix_(detail::Matrix4c::Zero()) {}

DiscreteOperator::DiscreteOperator(Family family, const detail::Matrix4c &matrix)
    : family_(family), matrix_(matrix) {}

DiscreteOperator DiscreteOperator::identity(Family family) {
    return DiscreteOperator(family, detail::Matrix4c::Identity());
}

DiscreteOperator DiscreteOperator::outer(const DiscreteKet &ket, const DiscreteKet &bra) {
    auto b = bra.in(ket.family());
    return DiscreteOperator(ket.family(), ket.amplitudes() * b.amplitudes().adjoint());
}

DiscreteOperator DiscreteOperator::path_projector(Path path) {
    detail::Matrix4c m = detail::Matrix4c::Zero();
    int o = 2 * static_cast<int>(path);
    m(o, o) = 1.0;
    m(o + 1, o + 1) = 1.0;
    return DiscreteOperator(Family::Linear, m);
}

DiscreteOperator DiscreteOperator::spin() {
    detail::Matrix4c m = detail::Matrix4c::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    m(2, 2) = 1.0;
    m(3, 3) = -1.0;
    return DiscreteOperator(Family::Circular, m);
}

Complex DiscreteOperator::element(const BasisLabel &row, const BasisLabel &col) const {
    if (family_of(row.internal) != family_of(col.internal)) {
        throw Error(ErrorCode::BasisMismatch, "matrix element between labels of different families");
    }
    auto m = in(family_of(row.internal));
    return m.matrix_(detail::index_of(row), detail::index_of(col));
}

DiscreteOperator DiscreteOperator::in(Family family) const {
    return DiscreteOperator(family, convert(matrix_, family_, family));
}

DiscreteOperator DiscreteOperator::adjoint() const { return DiscreteOperator(family_, matrix_.adjoint()); }

DiscreteOperator &DiscreteOperator::operator+=(const DiscreteOperator &other) {
    matrix_ += convert(other.matrix_, other.family_, family_);
    return *this;
}

DiscreteOperator &DiscreteOperator::operator*=(Complex scale) {
    matrix_ *= scale;
    return *this;
}

DiscreteOperator operator*(const DiscreteOperator &a, const DiscreteOperator &b) {
    return DiscreteOperator(a.family_, a.matrix_ * convert(b.matrix_, b.family_, a.family_));
}

Complex inner(const DiscreteKet &bra, const DiscreteKet &ket) {
    return bra.amplitudes().dot(ket.in(bra.family()).amplitudes());
}

DiscreteKet apply(const DiscreteOperator &op, const DiscreteKet &ket) {
    return DiscreteKet(op.family(), op.matrix() * ket.in(op.family()).amplitudes());
}

DiscreteOperator projector(const DiscreteKet &ket) {
    double n2 = ket.norm2();
    if (!(n2 > 0.0)) {
        throw Error(ErrorCode::DegenerateInput, "projector onto the zero ket");
    }
    return (1.0 / n2) * DiscreteOperator::outer(ket, ket);
}

double detection_probability(const DiscreteKet &state, const DiscreteKet &post) {
    double n2 = post.norm2();
    if (!(n2 > 0.0)) {
        throw Error(ErrorCode::DegenerateInput, "post-selection onto the zero ket");
    }
    return std::norm(inner(post, state)) / n2;
}

}  // namespace cheshire
