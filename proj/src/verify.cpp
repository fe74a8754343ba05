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


#include "kqfi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kqfi/bdg.hpp"
#include "kqfi/error.hpp"
#include "kqfi/manybody.hpp"
#include "kqfi/qfi.hpp"

namespace kqfi {

namespace {

GateResult finish(std::string name, int checks, double worst, double tol) {
    GateResult g;
    g.name = std::move(name);
    g.checks = checks;
    g.worst = worst;
    g.tolerance = tol;
    g.passed = worst < tol;
    return g;
}

GateResult invariant_gate(std::mt19937_64 &rng, int draws) {
    std::uniform_int_distribution<int> size(2, 40);
    std::uniform_real_distribution<double> gamma(-1.5, 1.5);
    std::uniform_real_distribution<double> field(-2.0, 2.0);
    std::uniform_real_distribution<double> time(0.0, 50.0);
    double worst = 0.0;
    for (int d = 0; d < draws; ++d) {
        ChainParams p;
        p.L = size(rng);
        p.gamma = gamma(rng);
        p.h = field(rng);
        const PropagatorPair pp = propagators(build_bdg_spectrum(p), time(rng));
        const auto I = Eigen::MatrixXcd::Identity(p.L, p.L);
        const Eigen::MatrixXcd a =
            pp.U * pp.U.adjoint() + pp.V * pp.V.adjoint() - I;
        const Eigen::MatrixXcd b =
            pp.U * pp.V.transpose() + pp.V * pp.U.transpose();
        worst = std::max({worst, a.cwiseAbs().maxCoeff(),
                          b.cwiseAbs().maxCoeff()});
    }
    return finish("propagator-invariants", draws, worst, 1e-10);
}

GateResult sweet_spot_gate() {
    ChainParams p;
    p.L = 50;
    p.gamma = 1.0;
    p.h = 0.0;
    const BdgSpectrum spec = build_bdg_spectrum(p);
    double worst = 0.0;
    int checks = 0;
    for (double t = 0.0; t <= 200.0; t += 0.5) {
        const PropagatorRow row = propagator_row(spec, t, 1);
        const double f =
            qfi_closed_form(qfi_inputs(row, 1, EncodingChannel::Y, 0.0));
        worst = std::max(worst, std::abs(f - 1.0));
        ++checks;
    }
    return finish("sweet-spot", checks, worst, 1e-10);
}

GateResult two_path_gate(std::mt19937_64 &rng, int draws) {
    std::uniform_int_distribution<int> size(2, 30);
    std::uniform_real_distribution<double> gamma(-1.5, 1.5);
    std::uniform_real_distribution<double> field(-2.0, 2.0);
    std::uniform_real_distribution<double> time(0.0, 50.0);
    std::uniform_real_distribution<double> angle(0.0, 1.5);
    double worst = 0.0;
    for (int d = 0; d < draws; ++d) {
        ChainParams p;
        p.L = size(rng);
        p.gamma = gamma(rng);
        p.h = field(rng);
        std::uniform_int_distribution<int> site(1, p.L);
        const PropagatorPair pp = propagators(build_bdg_spectrum(p), time(rng));
        const int j = site(rng);
        const int k = site(rng);
        const EncodingChannel ch =
            d % 2 == 0 ? EncodingChannel::Y : EncodingChannel::X;
        const QfiInputs inp = qfi_inputs(pp, j, k, ch, angle(rng));
        const double a = qfi_closed_form(inp);
        const double b = qfi_qubit(bloch_vector(inp, inp.theta0));
        worst = std::max(worst, std::abs(a - b));
    }
    return finish("two-path", draws, worst, 1e-12);
}

GateResult oracle_gate(std::mt19937_64 &rng, int draws) {
    const int sizes[] = {4, 6, 8, 10};
    const double angles[] = {0.0, 0.3, 1.1};
    std::uniform_int_distribution<int> pick_size(0, 3);
    std::uniform_int_distribution<int> pick_angle(0, 2);
    std::uniform_real_distribution<double> gamma(-1.2, 1.2);
    std::uniform_real_distribution<double> field(-1.5, 1.5);
    std::uniform_real_distribution<double> time(0.0, 10.0);
    double worst = 0.0;
    for (int d = 0; d < draws; ++d) {
        manybody::ManyBodyParams mp;
        mp.chain.L = sizes[pick_size(rng)];
        mp.chain.gamma = gamma(rng);
        mp.chain.h = field(rng);
        std::uniform_int_distribution<int> site(1, mp.chain.L);
        const double t = time(rng);
        const int j = site(rng);
        const int k = site(rng);
        const double theta0 = angles[pick_angle(rng)];
        const EncodingChannel ch =
            d % 2 == 0 ? EncodingChannel::Y : EncodingChannel::X;
        const manybody::Branches br =
            manybody::evolve_two_branches(mp, k, ch, t);
        const double oracle = manybody::qfi_spectral(
            manybody::fermionic_qubit_from_branches(br.A, br.B, theta0, j));
        const PropagatorPair pp = propagators(build_bdg_spectrum(mp.chain), t);
        const double engine = qfi_closed_form(qfi_inputs(pp, j, k, ch, theta0));
        worst = std::max(worst, std::abs(oracle - engine));
    }
    return finish("oracle-equivalence", draws, worst, 1e-8);
}

} // namespace

std::vector<GateResult> run_verification(const VerifyOptions &options) {
    KQFI_REQUIRE(options.oracle_draws >= 1 && options.invariant_draws >= 1,
                 InvalidArgument, "verification needs at least one draw");
    std::mt19937_64 rng(options.seed);
    std::vector<GateResult> out;
    out.push_back(invariant_gate(rng, options.invariant_draws));
    out.push_back(sweet_spot_gate());
    out.push_back(two_path_gate(rng, options.invariant_draws));
    out.push_back(oracle_gate(rng, options.oracle_draws));
    return out;
}

} // namespace kqfi
