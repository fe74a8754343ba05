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

#include <string>
#include <vector>

namespace kqfi {

/**
 * Open anisotropic XY chain
 *
 *   H = -(J/2) sum_j [(1+gamma) X_j X_{j+1} + (1-gamma) Y_j Y_{j+1}]
 *       - sum_j h_j Z_j
 *
 * Sites are labelled 1..L in every public interface. When `site_fields` is
 * empty the field is uniform (h_j = h).
 */
struct ChainParams {
    int L = 2;
    double J = 1.0;
    double gamma = 0.0;
    double h = 0.0;
    std::vector<double> site_fields;

    [[nodiscard]] bool uniform() const { return site_fields.empty(); }

    /// Field on site `site` (1-based).
    [[nodiscard]] double field(int site) const {
        return uniform() ? h : site_fields[static_cast<std::size_t>(site - 1)];
    }

    /// Throws InvalidArgument unless L >= 2, J > 0, all values finite and
    /// site_fields (if present) has length L.
    void validate() const;

    /// Human-readable echo used in error messages.
    [[nodiscard]] std::string describe() const;
};

/// Throws InvalidArgument if `site` is outside 1..L.
void check_site(const ChainParams &params, int site, const char *what);

} // namespace kqfi
