// Copyright 2026 The kqfi Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kqfi {

struct GateResult {
    std::string name;
    bool passed = false;
    int checks = 0;
    /// Largest observed deviation and the tolerance it was held to.
    double worst = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    /// Random draws for the statevector equivalence gate.
    int oracle_draws = 50;
    /// Random draws for the propagator invariant gate.
    int invariant_draws = 100;
};

/// Self-checks of a build:
///   propagator-invariants  U U^+ + V V^+ = 1, U V^T + V U^T = 0
///   sweet-spot             boundary QFI = 1 at h = 0, gamma = 1
///   two-path               closed form against the Bloch-vector formula
///   oracle-equivalence     free-fermion QFI against statevector evolution
[[nodiscard]] std::vector<GateResult> run_verification(
    const VerifyOptions &options);

} // namespace kqfi
