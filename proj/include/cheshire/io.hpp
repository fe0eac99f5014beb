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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cheshire/pointer.hpp"

namespace cheshire {

/// Shortest round-trip decimal form; identical across runs of the same build.
std::string format_double(double value);

/// Real-valued field sampled on gx x gy, stored row-major with y as the row.
struct Field2D {
    UniformGrid1D gx;
    UniformGrid1D gy;
    std::vector<double> values;

    double &at(std::size_t ix, std::size_t iy) { return values[iy * gx.n + ix]; }
    double at(std::size_t ix, std::size_t iy) const { return values[iy * gx.n + ix]; }

    /// Trapezoidal integral over the whole grid.
    double integral() const;
    /// Trapezoidal integral restricted to points where keep(x, y) holds.
    double integral_where(const std::function<bool(double, double)> &keep) const;
    double max_abs() const;
};

enum class FileFormat { Csv, Pgm };

/// Columns x, y, value.
void write_field_csv(std::ostream &out, const Field2D &field, std::string_view comment = {});

/// Binary 8-bit PGM, row-major with the largest y on the first row.
/// Non-negative fields map [0, max] onto [0, 255]; signed fields map
/// [-max|v|, max|v|] onto [0, 255].
void write_field_pgm(std::ostream &out, const Field2D &field);

/// Opens `path` for writing and throws Io on failure.
void write_file(const std::filesystem::path &path, const std::function<void(std::ostream &)> &writer,
                bool binary = false);

}  // namespace cheshire
