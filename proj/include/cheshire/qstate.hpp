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

// Path (I, II) x two-level internal state. The internal state is written either
// in the linear family {H, V} or the circular family {+, -}, related by
//
//     |+-> = (|H> +- i|V>) / sqrt(2).
//
// Neutron spin states reuse the circular labels. Kets and operators remember the
// family they are stored in; binary operations convert the right-hand operand
// to the family of the left-hand one.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>

#include "cheshire/error.hpp"

namespace cheshire {

using Complex = std::complex<double>;

enum class Path : std::uint8_t { I = 0, II = 1 };
enum class Internal : std::uint8_t { H, V, Plus, Minus };
enum class Family : std::uint8_t { Linear, Circular };

Family family_of(Internal internal);
Path other(Path path);

struct BasisLabel {
    Path path;
    Internal internal;

    friend bool operator==(const BasisLabel &, const BasisLabel &) = default;
};

std::string to_string(const BasisLabel &label);

namespace detail {
using Vector4c = Eigen::Matrix<Complex, 4, 1>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;

// Storage index: 2 * path + (0 for H/+, 1 for V/-).
int index_of(const BasisLabel &label);
BasisLabel label_at(int index, Family family);
// Maps linear-family amplitudes to circular-family amplitudes.
const Matrix4c &linear_to_circular();
}  // namespace detail

class DiscreteKet {
   public:
    explicit DiscreteKet(Family family = Family::Linear);
    DiscreteKet(Family family, const detail::Vector4c &amplitudes);

    static DiscreteKet basis(const BasisLabel &label);
    /// Throws BasisMismatch if the labels mix the two internal families.
    static DiscreteKet from_terms(std::initializer_list<std::pair<BasisLabel, Complex>> terms);

    Family family() const { return family_; }
    const detail::Vector4c &amplitudes() const { return amplitudes_; }

    /// Amplitude on `label`, converting to the label's family if needed.
    Complex amplitude(const BasisLabel &label) const;

    DiscreteKet in(Family family) const;
    double norm2() const;
    DiscreteKet normalized() const;

    DiscreteKet &operator+=(const DiscreteKet &other);
    DiscreteKet &operator-=(const DiscreteKet &other);
    DiscreteKet &operator*=(Complex scale);

    friend DiscreteKet operator+(DiscreteKet a, const DiscreteKet &b) { return a += b; }
    friend DiscreteKet operator-(DiscreteKet a, const DiscreteKet &b) { return a -= b; }
    friend DiscreteKet operator*(Complex s, DiscreteKet k) { return k *= s; }
    friend DiscreteKet operator*(DiscreteKet k, Complex s) { return k *= s; }

   private:
    Family family_;
    detail::Vector4c amplitudes_;
};

class DiscreteOperator {
   public:
    explicit DiscreteOperator(Family family = Family::Linear);
    DiscreteOperator(Family family, const detail::Matrix4c &matrix);

    static DiscreteOperator identity(Family family = Family::Linear);
    /// |ket><bra|
    static DiscreteOperator outer(const DiscreteKet &ket, const DiscreteKet &bra);
    /// Pi_path (x) 1
    static DiscreteOperator path_projector(Path path);
    /// 1_path (x) (|+><+| - |-><-|); sigma|H> = i|V>, sigma|V> = -i|H>.
    static DiscreteOperator spin();

    Family family() const { return family_; }
    const detail::Matrix4c &matrix() const { return matrix_; }

    Complex element(const BasisLabel &row, const BasisLabel &col) const;
    DiscreteOperator in(Family family) const;
    DiscreteOperator adjoint() const;

    DiscreteOperator &operator+=(const DiscreteOperator &other);
    DiscreteOperator &operator*=(Complex scale);

    friend DiscreteOperator operator+(DiscreteOperator a, const DiscreteOperator &b) { return a += b; }
    friend DiscreteOperator operator*(Complex s, DiscreteOperator a) { return a *= s; }
    /// Composition: (a * b)|k> = a(b|k>).
    friend DiscreteOperator operator*(const DiscreteOperator &a, const DiscreteOperator &b);

   private:
    Family family_;
    detail::Matrix4c matrix_;
};

/// <bra|ket>, conjugate-linear in `bra`.
Complex inner(const DiscreteKet &bra, const DiscreteKet &ket);

DiscreteKet apply(const DiscreteOperator &op, const DiscreteKet &ket);

/// |k><k| / <k|k>. Throws DegenerateInput for the zero ket.
DiscreteOperator projector(const DiscreteKet &ket);

/// |<post|state>|^2 / <post|post>. The state is not normalized, so an
/// attenuated state reports attenuated probabilities.
double detection_probability(const DiscreteKet &state, const DiscreteKet &post);

}  // namespace cheshire
