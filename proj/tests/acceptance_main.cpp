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

// Acceptance runner: one [PASS]/[FAIL] line per criterion, exit 0 iff all
// pass. `--tamper` runs the negative control, `--seed N` changes the seed.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "cheshire/cheshire.h"

int main(int argc, char **argv) {
    unsigned flags = 0;
    unsigned long long seed = 1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--tamper") == 0) {
            flags |= CHS_VERIFY_TAMPER;
        } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::fprintf(stderr, "usage: %s [--tamper] [--seed N]\n", argv[0]);
            return 1;
        }
    }

    chs_report *report = nullptr;
    if (chs_verify(seed, flags, &report) != CHS_OK) {
        std::fprintf(stderr, "verify failed: %s\n", chs_last_error_message());
        return 2;
    }
    std::fputs(chs_report_text(report), stdout);
    const int ok = chs_report_all_passed(report);
    chs_report_destroy(report);
    return ok ? 0 : 1;
}
