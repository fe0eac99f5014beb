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

#include <cstdint>
#include <string>
#include <vector>

namespace cheshire {

struct AcceptanceOptions {
    std::uint64_t seed = 1;
    /// Negative control: perturbs one post-selected coefficient by 1e-6 so
    /// the coefficient-ratio criterion must fail.
    bool tamper_coefficients = false;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the eleven acceptance criteria. Output depends only on the options.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &options);

/// One `[PASS]` / `[FAIL]` line per criterion followed by a summary line.
std::string format_report(const std::vector<CriterionResult> &results);

bool all_passed(const std::vector<CriterionResult> &results);

}  // namespace cheshire
