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

#include "kqfi/qfi.hpp"

#include <cmath>
#include <string>

#include "kqfi/error.hpp"

namespace kqfi {

namespace {
constexpr double kBoundTol = 1e-10;
} // namespace

std::string_view to_string(EncodingChannel channel) {
    return channel == EncodingChannel::Y ? "Y" : "X";
}

EncodingChannel parse_channel(std::string_view text) {
    if (text == "Y" || text == "y") {
        return EncodingChannel::Y;
    }
    if (text == "X" || text == "x") {
        return EncodingChannel::X;
    }
    throw InvalidArgument("unknown encoding channel '" + std::string(text) +
                          "' (expected X or Y)");
}

void QfiInputs::validate() const {
    if (std::abs(W) > 1.0 + kBoundTol) {
        throw NumericalError("|W| = " + std::to_string(std::abs(W)) +
                             " exceeds 1: reduced state is not positive");
    }
    const double zmax = std::max(std::abs(Z0 + delta_p), std::abs(Z0 - delta_p));
    if (zmax > 1.0 + kBoundTol) {
        throw NumericalError("longitudinal Bloch component " +
                             std::to_string(zmax) + " exceeds 1");
    }
}

QfiInputs qfi_inputs(const PropagatorPair &pp, int j, int k,
                     EncodingChannel channel, double theta0) {
    const Eigen::Index L = pp.U.rows();
    KQFI_REQUIRE(j >= 1 && j <= L && k >= 1 && k <= L, InvalidArgument,
                 "site pair (" + std::to_string(j) + ", " + std::to_string(k) +
                     ") outside 1.." + std::to_string(L));
    const cplx U = pp.U(j - 1, k - 1);
    const cplx V = pp.V(j - 1, k - 1);
    QfiInputs inp;
    inp.W = combined_propagator(U, V, channel);
    inp.delta_p = std::norm(U) - std::norm(V);
    inp.S_j = pp.V.row(j - 1).squaredNorm();
    inp.Z0 = 1.0 - 2.0 * inp.S_j - inp.delta_p;
    inp.theta0 = theta0;
    return inp;
}

QfiInputs qfi_inputs(const PropagatorRow &row, int k, EncodingChannel channel,
                     double theta0) {
    const Eigen::Index L = row.U.size();
    KQFI_REQUIRE(k >= 1 && k <= L, InvalidArgument,
                 "encoding site " + std::to_string(k) + " outside 1.." +
                     std::to_string(L));
    const cplx U = row.U(k - 1);
    const cplx V = row.V(k - 1);
    QfiInputs inp;
    inp.W = combined_propagator(U, V, channel);
    inp.delta_p = std::norm(U) - std::norm(V);
    inp.S_j = row.V.squaredNorm();
    inp.Z0 = 1.0 - 2.0 * inp.S_j - inp.delta_p;
    inp.theta0 = theta0;
    return inp;
}

BlochVector bloch_vector(const QfiInputs &inp, double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    BlochVector b;
    b.m = {-s * inp.W.real(), -s * inp.W.imag(), inp.Z0 + inp.delta_p * c};
    b.dm = {-c * inp.W.real(), -c * inp.W.imag(), -inp.delta_p * s};
    return b;
}

double qfi_qubit(const BlochVector &b) {
    const double m2 = b.m.squaredNorm();
    if (m2 > (1.0 + kBoundTol) * (1.0 + kBoundTol)) {
        throw NumericalError("Bloch vector length " +
                             std::to_string(std::sqrt(m2)) + " exceeds 1");
    }
    const double speed = b.dm.squaredNorm();
    const double radial = b.m.dot(b.dm);
    const double purity_gap = 1.0 - m2;
    if (purity_gap < kPureStateGuard) {
        if (std::abs(radial) < std::sqrt(kPureStateGuard)) {
            return speed;
        }
        throw NumericalError("pure reduced state with a radial derivative");
    }
    return speed + radial * radial / purity_gap;
}

double qfi_closed_form(const QfiInputs &inp) {
    const double th = inp.theta0;
    const double s = std::sin(th);
    const double c = std::cos(th);
    const double w2 = std::norm(inp.W);
    const double dp = inp.delta_p;
    const double mz = inp.Z0 + dp * c;
    const double den = 1.0 - w2 * s * s - mz * mz;
    if (den < -kBoundTol) {
        throw NumericalError("negative purity gap " + std::to_string(den) +
                             " in closed-form QFI");
    }
    const double speed = w2 * c * c + dp * dp * s * s;
    const double radial = s * (c * (w2 - dp * dp) - dp * inp.Z0);
    if (den < kPureStateGuard) {
        if (std::abs(radial) < std::sqrt(kPureStateGuard)) {
            return speed;
        }
        throw NumericalError("pure reduced state with a radial derivative");
    }
    return speed + radial * radial / den;
}

double qfi_optimal(const PropagatorPair &pp, int j, int k,
                   EncodingChannel channel) {
    const Eigen::Index L = pp.U.rows();
    KQFI_REQUIRE(j >= 1 && j <= L && k >= 1 && k <= L, InvalidArgument,
                 "site pair (" + std::to_string(j) + ", " + std::to_string(k) +
                     ") outside 1.." + std::to_string(L));
    return std::norm(combined_propagator(pp.U(j - 1, k - 1),
                                         pp.V(j - 1, k - 1), channel));
}

} // namespace kqfi
