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

#include <Eigen/Dense>

#include "kqfi/chain.hpp"

namespace kqfi {

using cplx = std::complex<double>;

/**
 * Positive-energy Bogoliubov modes of the open chain.
 *
 * Column nu of `u` and `v` holds the real mode function (u_nu(j), v_nu(j)),
 * row index j-1 for site j. Energies are ascending and non-negative. The
 * quasiparticle creation operator is g_nu^+ = sum_j u_nu(j) c_j^+ + v_nu(j) c_j.
 *
 * Sign gauge: the first entry of u_nu + v_nu with magnitude above 1e-12 is
 * positive.
 */
struct BdgSpectrum {
    ChainParams params;
    Eigen::VectorXd energies;
    Eigen::MatrixXd u;
    Eigen::MatrixXd v;

    [[nodiscard]] int size() const { return params.L; }
};

/// Heisenberg propagators: c_j(t) = sum_l U_{j,l}(t) c_l + V_{j,l}(t) c_l^+.
struct PropagatorPair {
    double t = 0.0;
    Eigen::MatrixXcd U;
    Eigen::MatrixXcd V;
};

/// Row `site` of U(t) and V(t) (entries indexed by l-1).
struct PropagatorRow {
    double t = 0.0;
    int site = 1;
    Eigen::VectorXcd U;
    Eigen::VectorXcd V;
};

/// Column `site` of U(t) and V(t) (entries indexed by j-1).
struct PropagatorColumn {
    double t = 0.0;
    int site = 1;
    Eigen::VectorXcd U;
    Eigen::VectorXcd V;
};

/// The 2L x 2L real symmetric BdG matrix in the Nambu basis
/// (c_1..c_L, c_1^+..c_L^+), normalised so H = (1/2) Psi^+ M Psi + const.
[[nodiscard]] Eigen::MatrixXd bdg_matrix(const ChainParams &params);

/// Diagonalise the open-chain BdG matrix and keep the L non-negative modes.
/// Throws NumericalError if the eigensolver fails or the particle-hole split
/// cannot be resolved.
[[nodiscard]] BdgSpectrum build_bdg_spectrum(const ChainParams &params);

[[nodiscard]] PropagatorPair propagators(const BdgSpectrum &spec, double t);
[[nodiscard]] PropagatorRow propagator_row(const BdgSpectrum &spec, double t,
                                           int site);
[[nodiscard]] PropagatorColumn propagator_column(const BdgSpectrum &spec,
                                                 double t, int site);

/// Bulk quasiparticle energy 2 sqrt((h - J cos q)^2 + J^2 gamma^2 sin^2 q).
[[nodiscard]] double bulk_dispersion(double q, const ChainParams &params);

/// Translation-invariant propagators (U_r(t), V_r(t)) of the infinite chain,
/// with c_j(t) = sum_l U_{l-j} c_l + V_{l-j} c_l^+. Periodic trapezoidal
/// quadrature over the Brillouin zone, refined by doubling from 2048 nodes
/// until successive estimates agree to 1e-9.
struct InfinitePropagator {
    cplx U;
    cplx V;
    int nodes = 0;
};
[[nodiscard]] InfinitePropagator infinite_chain_propagator(
    int r, double t, const ChainParams &params);

/// max_q |d eps_q / dq| for the uniform chain.
[[nodiscard]] double max_group_velocity(const ChainParams &params);

} // namespace kqfi
