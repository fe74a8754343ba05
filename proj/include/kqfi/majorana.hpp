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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kqfi/bdg.hpp"

namespace kqfi {

/// Characteristic roots of the zero-energy recurrence
///   (J + D) phi_{j+1} + mu phi_j + (J - D) phi_{j-1} = 0,  D = J gamma,
///   mu = -2h,
/// and the localization length xi = -1 / ln|r_>| of the left envelope.
struct Localization {
    std::complex<double> r_plus;
    std::complex<double> r_minus;
    /// Sites. +infinity when the larger root has modulus >= 1 (no
    /// normalizable left edge solution), 0 when it vanishes.
    double xi = 0.0;
    bool normalizable = false;
};

/// Throws InvalidArgument for non-uniform fields or J + J gamma = 0.
[[nodiscard]] Localization localization_length(const ChainParams &params);

/**
 * Lowest BdG mode split into its two Majorana envelopes.
 *
 *   phi_L = (u0 + v0) / sqrt2,   phi_R = phase_R (u0 - v0) / sqrt2
 *
 * Gauge: phi_L(1) >= 0 and phi_R(L) >= 0. The relative sign of u0 and v0 is
 * fixed by eps0 >= 0, so phi_R is made non-negative at site L with the
 * explicit factor phase_R = +-1 rather than by changing the mode.
 */
struct MajoranaMode {
    double eps0 = 0.0;
    /// Second-smallest BdG energy.
    double gap = 0.0;
    /// eps0 < gap / 2.
    bool subgap = false;
    Eigen::VectorXd u0;
    Eigen::VectorXd v0;
    Eigen::VectorXd phi_L;
    Eigen::VectorXd phi_R;
    int phase_R = 1;
    /// Present only for uniform chains.
    bool has_localization = false;
    Localization localization;
};

[[nodiscard]] MajoranaMode zero_mode(const BdgSpectrum &spec);

/// 4 phi_L(j)^2 phi_L(k)^2, the zero-mode part of the window-averaged QFI.
[[nodiscard]] double plateau_prediction(const MajoranaMode &mode, int j, int k);

struct ScalingPoint {
    double h = 0.0;
    double mean_qfi = 0.0;
};

struct ScalingFit {
    double exponent = 0.0;
    /// Intercept of ln(mean) against ln(1 - h/J), and its exponential.
    double intercept = 0.0;
    double amplitude = 0.0;
    double residual = 0.0;
    /// Points that survived the h/J <= kScalingCutoff filter.
    std::vector<ScalingPoint> used;
};

/// Points with h/J above this are left out of the fit.
inline constexpr double kScalingCutoff = 0.95;

/// Least-squares fit of ln(mean_qfi) against ln(1 - h/J). Needs at least four
/// points with 0 < h < J and positive QFI after the cutoff; throws
/// InvalidArgument otherwise or when every abscissa coincides.
[[nodiscard]] ScalingFit critical_scaling_fit(
    const std::vector<ScalingPoint> &points, double J = 1.0);

} // namespace kqfi
