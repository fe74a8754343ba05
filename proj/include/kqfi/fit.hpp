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

#include <span>

namespace kqfi {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Root-mean-square residual.
    double residual = 0.0;
};

/// Ordinary least squares y = slope x + intercept. Throws InvalidArgument for
/// mismatched sizes, fewer than two points or coincident abscissae.
[[nodiscard]] LinearFit linear_fit(std::span<const double> x,
                                   std::span<const double> y);

} // namespace kqfi
