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

#include <cstdlib>
#include <sstream>
#include <string>

#include "cheshire/io.hpp"

namespace cheshire {
namespace {

Field2D ramp(double sign) {
    UniformGrid1D gx{0.0, 1.0, 16};
    UniformGrid1D gy{0.0, 2.0, 16};
    Field2D f{gx, gy, std::vector<double>(gx.n * gy.n)};
    for (std::size_t iy = 0; iy < gy.n; ++iy) {
        for (std::size_t ix = 0; ix < gx.n; ++ix) {
            f.at(ix, iy) = sign * gx.at(ix) * gy.at(iy);
        }
    }
    return f;
}

TEST(Io, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.125, 0.0}) {
        EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Io, IntegralOfBilinearRampIsExact) {
    // Trapezoid rule is exact for x*y: integral over [0,1]x[0,2] = 1.
    EXPECT_NEAR(ramp(1.0).integral(), 1.0, 1e-14);
}

TEST(Io, IntegralWhereSplitsMass) {
    const auto f = ramp(1.0);
    const double all = f.integral_where([](double, double) { return true; });
    EXPECT_NEAR(all, f.integral(), 1e-15);
    EXPECT_DOUBLE_EQ(f.integral_where([](double, double) { return false; }), 0.0);
}

TEST(Io, FieldCsvLayout) {
    std::ostringstream out;
    write_field_csv(out, ramp(1.0), "params: test");
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# params: test");
    std::getline(in, line);
    EXPECT_EQ(line, "x,y,value");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 256);
}

TEST(Io, PgmNonNegativeMapping) {
    std::ostringstream out;
    write_field_pgm(out, ramp(1.0));
    const std::string s = out.str();
    const std::string header = "P5\n16 16\n255\n";
    ASSERT_EQ(s.substr(0, header.size()), header);
    const std::string pixels = s.substr(header.size());
    ASSERT_EQ(pixels.size(), 256u);
    // First row is the largest y; its last pixel is the maximum.
    EXPECT_EQ(static_cast<unsigned char>(pixels[15]), 255);
    // Bottom row (y = 0) is zero everywhere.
    EXPECT_EQ(static_cast<unsigned char>(pixels[255]), 0);
    EXPECT_EQ(static_cast<unsigned char>(pixels[240]), 0);
}

TEST(Io, PgmSignedMapping) {
    std::ostringstream out;
    write_field_pgm(out, ramp(-1.0));
    const std::string pixels = out.str().substr(std::string("P5\n16 16\n255\n").size());
    EXPECT_EQ(static_cast<unsigned char>(pixels[15]), 0);
    // Zero maps to mid-grey.
    const int mid = static_cast<unsigned char>(pixels[255]);
    EXPECT_GE(mid, 127);
    EXPECT_LE(mid, 128);
}

TEST(Io, WriteFileReportsIoError) {
    try {
        write_file("/nonexistent-dir/x.csv", [](std::ostream &out) { out << "x"; });
        FAIL() << "expected Io";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Io);
    }
}

}  // namespace
}  // namespace cheshire
