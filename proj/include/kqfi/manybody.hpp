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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kqfi/chain.hpp"
#include "kqfi/qfi.hpp"
#include "kqfi/records.hpp"

/// Exact statevector simulation of the spin chain. Serves as the independent
/// oracle for the free-fermion engine and as the solver for the interacting
/// chain.
namespace kqfi::manybody {

/// Memory guard on the number of spins.
inline constexpr int kMaxSites = 24;
/// Largest L evolved by full diagonalisation under EvolutionMethod::Auto.
inline constexpr int kExactMaxSites = 12;

/// XY chain plus delta * sum_j Z_j Z_{j+1}.
struct ManyBodyParams {
    ChainParams chain;
    double delta = 0.0;

    void validate() const;
};

/**
 * 2^L amplitudes; bit (j-1) of the basis index is site j, with 0 = down and
 * 1 = up. The all-down state is the Jordan-Wigner vacuum.
 */
struct SpinState {
    int L = 0;
    Eigen::VectorXcd amplitudes;

    [[nodiscard]] static SpinState all_down(int L);
    [[nodiscard]] double norm() const { return amplitudes.norm(); }
};

[[nodiscard]] cplx inner(const SpinState &bra, const SpinState &ket);

/// Matrix-free spin Hamiltonian (real symmetric in the computational basis).
class SpinHamiltonian {
  public:
    explicit SpinHamiltonian(const ManyBodyParams &params);

    [[nodiscard]] int sites() const { return L_; }
    [[nodiscard]] std::uint32_t dimension() const { return 1u << L_; }
    [[nodiscard]] const ManyBodyParams &params() const { return params_; }

    [[nodiscard]] double diagonal(std::uint32_t s) const;
    /// (bond b, partner state) amplitude for flipping sites b+1, b+2 of `s`.
    [[nodiscard]] double flip_amplitude(std::uint32_t s, int bond) const;

    void apply(const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const;
    [[nodiscard]] double expectation(const SpinState &psi) const;

    /// Dense block on the given basis (which must be closed under H).
    [[nodiscard]] Eigen::MatrixXd block(const std::vector<std::uint32_t> &basis) const;

  private:
    ManyBodyParams params_;
    int L_;
    std::vector<double> diag_;
};

enum class EvolutionMethod { Auto, Exact, Krylov };

/**
 * psi(t) = exp(-i H t) psi(0).
 *
 * Exact: diagonalisation of H in each fermion-parity sector, exact at all t.
 * Krylov: Lanczos short-time propagation with an a-posteriori per-step error
 * bound of `krylov_tol`; the step size shrinks until the bound holds.
 */
class TimeEvolver {
  public:
    explicit TimeEvolver(const ManyBodyParams &params,
                         EvolutionMethod method = EvolutionMethod::Auto,
                         double krylov_tol = 1e-12);

    [[nodiscard]] EvolutionMethod method() const { return method_; }
    [[nodiscard]] const SpinHamiltonian &hamiltonian() const { return H_; }

    [[nodiscard]] SpinState evolve(const SpinState &psi0, double t) const;
    /// States at each of the ascending `times`. Throws NumericalError if the
    /// norm drifts by more than 1e-10 or the energy by more than 1e-8 J.
    [[nodiscard]] std::vector<SpinState>
    evolve(const SpinState &psi0, std::span<const double> times) const;

  private:
    struct Sector {
        std::vector<std::uint32_t> basis;
        Eigen::VectorXd energies;
        Eigen::MatrixXd vectors;
    };

    void evolve_exact(const SpinState &psi0, std::span<const double> times,
                      std::vector<SpinState> &out) const;
    double krylov_step(Eigen::VectorXcd &psi, double dt_max) const;

    SpinHamiltonian H_;
    EvolutionMethod method_;
    double krylov_tol_;
    std::vector<Sector> sectors_;
};

/// c_j = (prod_{m<j} Z_m) sigma^-_j.
[[nodiscard]] SpinState apply_annihilator(int j, const SpinState &psi);
/// c_k^+ = sigma^+_k (prod_{m<k} Z_m).
[[nodiscard]] SpinState apply_creator(int k, const SpinState &psi);
/// <psi| prod_j Z_j |psi>.
[[nodiscard]] double parity_expectation(const SpinState &psi);

/**
 * Two evolved branches of the encoded state
 *   |Psi(theta)> = cos(theta/2) A + sin(theta/2) B,
 * A = exp(-iHt)|down...down>, B = phase * exp(-iHt) sigma^+_k |down...down>,
 * with phase -1 for the Y channel and -i for the X channel.
 */
struct Branches {
    SpinState A;
    SpinState B;
};

[[nodiscard]] Branches evolve_two_branches(const ManyBodyParams &params, int k,
                                           EncodingChannel axis, double t);
[[nodiscard]] std::vector<Branches>
evolve_two_branches(const TimeEvolver &evolver, int k, EncodingChannel axis,
                    std::span<const double> times);

/// Reduced qubit and its exact theta-derivative at the operating point.
struct ReducedQubit {
    Eigen::Matrix2cd rho;
    Eigen::Matrix2cd drho;
};

/// Spin partial trace onto site j, basis order (down, up).
[[nodiscard]] ReducedQubit reduced_qubit_from_branches(const SpinState &A,
                                                       const SpinState &B,
                                                       double theta0, int j);

/// Local fermionic qubit of site j built from the string-dressed operators
/// X_j = c_j + c_j^+, Y_j = -i(c_j - c_j^+), Z_j = 1 - 2 n_j, returned as
/// (1 + m.sigma)/2 and dm.sigma/2 in the standard Pauli basis. At j = 1 this
/// coincides entrywise with the (down, up) spin partial trace.
[[nodiscard]] ReducedQubit fermionic_qubit_from_branches(const SpinState &A,
                                                         const SpinState &B,
                                                         double theta0, int j);

/// Bloch vector (m, dm) of a qubit given in the standard Pauli basis.
[[nodiscard]] BlochVector bloch_of(const ReducedQubit &rq);

/// Spectral QFI sum_{n,m} 2 |<n|drho|m>|^2 / (l_n + l_m), over l_n + l_m > 1e-12.
[[nodiscard]] double qfi_spectral(const ReducedQubit &rq);

/// <0|c_j(t)|k> and <k|c_j(t)|0>, i.e. the oracle's U_jk(t) and V_jk(t).
struct PropagatorElements {
    cplx U;
    cplx V;
};
[[nodiscard]] PropagatorElements propagator_elements(const TimeEvolver &evolver,
                                                     int j, int k, double t);

/// Window-averaged boundary QFI (j = k = 1, Y channel, theta0 = 0).
[[nodiscard]] WindowStats boundary_qfi_average(const ManyBodyParams &params,
                                               const TimeWindow &window,
                                               EvolutionMethod method =
                                                   EvolutionMethod::Auto);

/// For every base point and every size in `sizes`, the window-averaged
/// boundary QFI. Records carry L, gamma, h, delta, mean_qfi, std_qfi.
[[nodiscard]] ScanRecords interaction_scan(std::span<const ManyBodyParams> base,
                                           const TimeWindow &window,
                                           std::span<const int> sizes,
                                           EvolutionMethod method =
                                               EvolutionMethod::Auto);

} // namespace kqfi::manybody
