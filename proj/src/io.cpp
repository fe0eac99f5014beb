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

#include "cheshire/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace cheshire {

std::string format_double(double value) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) {
        return "nan";
    }
    return std::string(buf, end);
}

double Field2D::integral() const {
    return integral_where([](double, double) { return true; });
}

double Field2D::integral_where(const std::function<bool(double, double)> &keep) const {
    auto wx = trapezoid_weights(gx);
    auto wy = trapezoid_weights(gy);
    double sum = 0.0;
    for (std::size_t iy = 0; iy < gy.n; ++iy) {
        double y = gy.at(iy);
        double row = 0.0;
        for (std::size_t ix = 0; ix < gx.n; ++ix) {
            if (keep(gx.at(ix), y)) {
                row += wx[ix] * at(ix, iy);
            }
        }
        sum += wy[iy] * row;
    }
    return sum;
}

double Field2D::max_abs() const {
    double m = 0.0;
    for (double v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

void write_field_csv(std::ostream &out, const Field2D &field, std::string_view comment) {
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << "x,y,value\n";
    for (std::size_t iy = 0; iy < field.gy.n; ++iy) {
        std::string y = format_double(field.gy.at(iy));
        for (std::size_t ix = 0; ix < field.gx.n; ++ix) {
            out << format_double(field.gx.at(ix)) << ',' << y << ',' << format_double(field.at(ix, iy)) << '\n';
        }
    }
}

void write_field_pgm(std::ostream &out, const Field2D &field) {
    const bool is_signed = std::any_of(field.values.begin(), field.values.end(), [](double v) { return v < 0.0; });
    const double scale = field.max_abs();
    out << "P5\n" << field.gx.n << ' ' << field.gy.n << "\n255\n";
    std::vector<unsigned char> row(field.gx.n);
    for (std::size_t r = 0; r < field.gy.n; ++r) {
        std::size_t iy = field.gy.n - 1 - r;
        for (std::size_t ix = 0; ix < field.gx.n; ++ix) {
            double u = scale > 0.0 ? field.at(ix, iy) / scale : 0.0;
            if (is_signed) {
                u = 0.5 * (u + 1.0);
            }
            row[ix] = static_cast<unsigned char>(std::lround(std::clamp(u, 0.0, 1.0) * 255.0));
        }
        out.write(reinterpret_cast<const char *>(row.data()), static_cast<std::streamsize>(row.size()));
    }
}

void write_file(const std::filesystem::path &path, const std::function<void(std::ostream &)> &writer, bool binary) {
    std::ofstream out(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    }
    writer(out);
    out.flush();
    if (!out) {
        throw Error(ErrorCode::Io, "failed while writing '" + path.string() + "'");
    }
}

}  // namespace cheshire
