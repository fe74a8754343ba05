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


#include "kqfi/majorana.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "kqfi/error.hpp"
#include "kqfi/fit.hpp"

namespace kqfi {

Localization localization_length(const ChainParams &params) {
    params.validate();
    KQFI_REQUIRE(params.uniform(), InvalidArgument,
                 "localization_length needs a uniform field");
    const double J = params.J;
    const double D = J * params.gamma;
    KQFI_REQUIRE(std::abs(J + D) > 1e-14 * J, InvalidArgument,
                 "degenerate recurrence: J + J*gamma = 0");
    const double mu = -2.0 * params.h;
    const std::complex<double> disc =
        std::sqrt(std::complex<double>(mu * mu - 4.0 * (J * J - D * D), 0.0));
    Localization out;
    out.r_plus = (-mu + disc) / (2.0 * (J + D));
    out.r_minus = (-mu - disc) / (2.0 * (J + D));
    const double big = std::max(std::abs(out.r_plus), std::abs(out.r_minus));
    out.normalizable = big < 1.0;
    if (!out.normalizable) {
        out.xi = std::numeric_limits<double>::infinity();
    } else if (big == 0.0) {
        out.xi = 0.0;
    } else {
        out.xi = -1.0 / std::log(big);
    }
    return out;
}

MajoranaMode zero_mode(const BdgSpectrum &spec) {
    const int L = spec.size();
    MajoranaMode mode;
    mode.eps0 = spec.energies(0);
    mode.gap = L > 1 ? spec.energies(1) : spec.energies(0);
    mode.subgap = mode.eps0 < 0.5 * mode.gap;
    mode.u0 = spec.u.col(0);
    mode.v0 = spec.v.col(0);
    mode.phi_L = (mode.u0 + mode.v0) / std::numbers::sqrt2;
    if (mode.phi_L(0) < 0.0) {
        mode.u0 = -mode.u0;
        mode.v0 = -mode.v0;
        mode.phi_L = -mode.phi_L;
    }
    mode.phi_R = (mode.u0 - mode.v0) / std::numbers::sqrt2;
    if (mode.phi_R(L - 1) < 0.0) {
        mode.phi_R = -mode.phi_R;
        mode.phase_R = -1;
    }
    if (spec.params.uniform() &&
        std::abs(1.0 + spec.params.gamma) > 1e-14) {
        mode.localization = localization_length(spec.params);
        mode.has_localization = true;
    }
    return mode;
}

double plateau_prediction(const MajoranaMode &mode, int j, int k) {
    const auto L = static_cast<int>(mode.phi_L.size());
    KQFI_REQUIRE(j >= 1 && j <= L && k >= 1 && k <= L, InvalidArgument,
                 "plateau_prediction: site out of range");
    const double ab = mode.phi_L(j - 1) * mode.phi_L(k - 1);
    return 4.0 * ab * ab;
}

ScalingFit critical_scaling_fit(const std::vector<ScalingPoint> &points,
                                double J) {
    KQFI_REQUIRE(J > 0.0, InvalidArgument, "critical_scaling_fit: J <= 0");
    ScalingFit fit;
    for (const ScalingPoint &p : points) {
        const double x = p.h / J;
        KQFI_REQUIRE(x > 0.0 && x < 1.0, InvalidArgument,
                     "critical_scaling_fit: need 0 < h < J");
        KQFI_REQUIRE(p.mean_qfi > 0.0, InvalidArgument,
                     "critical_scaling_fit: nonpositive QFI");
        if (x <= kScalingCutoff) {
            fit.used.push_back(p);
        }
    }
    KQFI_REQUIRE(fit.used.size() >= 4, InvalidArgument,
                 "critical_scaling_fit: fewer than 4 usable points");
    std::vector<double> x;
    std::vector<double> y;
    for (const ScalingPoint &p : fit.used) {
        x.push_back(std::log(1.0 - p.h / J));
        y.push_back(std::log(p.mean_qfi));
    }
    const LinearFit lf = linear_fit(x, y);
    fit.exponent = lf.slope;
    fit.intercept = lf.intercept;
    fit.amplitude = std::exp(lf.intercept);
    fit.residual = lf.residual;
    return fit;
}

} // namespace kqfi
