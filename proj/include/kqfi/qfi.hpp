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

#include <string_view>

#include <Eigen/Dense>

#include "kqfi/bdg.hpp"

namespace kqfi {

/// Rotation axis of the encoding pulse at site k.
///  Y: combined propagator W = U + V
///  X: combined propagator W = U - V (the overall -i phase is dropped)
enum class EncodingChannel { Y, X };

[[nodiscard]] std::string_view to_string(EncodingChannel channel);
/// Accepts "Y"/"y"/"X"/"x"; throws InvalidArgument otherwise.
[[nodiscard]] EncodingChannel parse_channel(std::string_view text);

[[nodiscard]] inline cplx combined_propagator(cplx U, cplx V,
                                              EncodingChannel channel) {
    return channel == EncodingChannel::Y ? U + V : U - V;
}

/// Bloch vector m of the reduced qubit and its derivative dm/dtheta.
struct BlochVector {
    Eigen::Vector3d m = Eigen::Vector3d::Zero();
    Eigen::Vector3d dm = Eigen::Vector3d::Zero();
};

/// Two-point data that fixes the single-site QFI.
struct QfiInputs {
    cplx W{0.0, 0.0};
    double delta_p = 0.0; // |U_jk|^2 - |V_jk|^2
    double S_j = 0.0;     // sum_l |V_jl|^2
    double Z0 = 0.0;      // 1 - 2 S_j - delta_p
    double theta0 = 0.0;

    /// Throws NumericalError when |W| > 1 or |Z0 + delta_p cos(theta)|
    /// exceeds 1 for some theta (both beyond 1e-10).
    void validate() const;
};

/// Purity guard for the mixed-state term of the qubit QFI.
inline constexpr double kPureStateGuard = 1e-12;

[[nodiscard]] QfiInputs qfi_inputs(const PropagatorPair &pp, int j, int k,
                                   EncodingChannel channel,
                                   double theta0 = 0.0);
/// Same, from row j of the propagators only.
[[nodiscard]] QfiInputs qfi_inputs(const PropagatorRow &row, int k,
                                   EncodingChannel channel,
                                   double theta0 = 0.0);

[[nodiscard]] BlochVector bloch_vector(const QfiInputs &inp, double theta);

/// F = |dm|^2 + (m.dm)^2 / (1 - |m|^2). The second term is dropped when both
/// 1 - |m|^2 < kPureStateGuard and |m.dm| < sqrt(kPureStateGuard).
[[nodiscard]] double qfi_qubit(const BlochVector &b);

/// Closed-form QFI at inp.theta0, written directly in W, delta_p and Z0.
[[nodiscard]] double qfi_closed_form(const QfiInputs &inp);

/// |W_jk(t)|^2, the QFI at the optimal operating point theta0 = 0.
[[nodiscard]] double qfi_optimal(const PropagatorPair &pp, int j, int k,
                                 EncodingChannel channel);

} // namespace kqfi
