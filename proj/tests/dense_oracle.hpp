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

// Brute-force reference for small chains: dense 2^L matrices assembled from
// Kronecker products, exact propagation by full diagonalisation. Shares no
// code with the library beyond the parameter struct.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "kqfi/chain.hpp"

namespace dense {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Single-site basis order (down, up).
inline Mat pauli(char which) {
    Mat m = Mat::Zero(2, 2);
    const cplx I(0.0, 1.0);
    switch (which) {
    case 'x':
        m(0, 1) = 1.0;
        m(1, 0) = 1.0;
        break;
    case 'y': // sigma_y |down> = -i |up>, sigma_y |up> = i |down>
        m(1, 0) = -I;
        m(0, 1) = I;
        break;
    case 'z':
        m(0, 0) = -1.0;
        m(1, 1) = 1.0;
        break;
    case '+':
        m(1, 0) = 1.0;
        break;
    case '-':
        m(0, 1) = 1.0;
        break;
    default:
        m = Mat::Identity(2, 2);
    }
    return m;
}

// Operator `local` on site j (1-based); site 1 is the leftmost factor.
inline Mat site_op(int L, int j, const Mat &local) {
    Mat out = Mat::Identity(1, 1);
    for (int s = 1; s <= L; ++s) {
        const Mat f = s == j ? local : Mat::Identity(2, 2);
        out = Eigen::kroneckerProduct(out, f).eval();
    }
    return out;
}

inline Mat annihilator(int L, int j) {
    Mat out = site_op(L, j, pauli('-'));
    for (int m = 1; m < j; ++m) {
        out = (site_op(L, m, pauli('z')) * out).eval();
    }
    return out;
}

inline Mat hamiltonian(const kqfi::ChainParams &p, double delta = 0.0) {
    const int L = p.L;
    const auto dim = Eigen::Index{1} << L;
    Mat H = Mat::Zero(dim, dim);
    for (int j = 1; j < L; ++j) {
        H -= 0.5 * p.J *
             ((1.0 + p.gamma) * site_op(L, j, pauli('x')) *
                  site_op(L, j + 1, pauli('x')) +
              (1.0 - p.gamma) * site_op(L, j, pauli('y')) *
                  site_op(L, j + 1, pauli('y')));
        H += delta * site_op(L, j, pauli('z')) * site_op(L, j + 1, pauli('z'));
    }
    for (int j = 1; j <= L; ++j) {
        H -= p.field(j) * site_op(L, j, pauli('z'));
    }
    return H;
}

inline Vec all_down(int L) {
    Vec v = Vec::Zero(Eigen::Index{1} << L);
    v(0) = 1.0;
    return v;
}

struct Propagator {
    Eigen::VectorXd energies;
    Mat vectors;

    explicit Propagator(const Mat &H) {
        Eigen::SelfAdjointEigenSolver<Mat> es(H);
        energies = es.eigenvalues();
        vectors = es.eigenvectors();
    }

    [[nodiscard]] Mat at(double t) const {
        Vec phase(energies.size());
        for (Eigen::Index i = 0; i < energies.size(); ++i) {
            phase(i) = std::polar(1.0, -energies(i) * t);
        }
        return vectors * phase.asDiagonal() * vectors.adjoint();
    }
};

// <0| c_j(t) c_k^+ |0> and <0| c_k c_j(t) |0>.
struct Elements {
    cplx U;
    cplx V;
};

inline Elements propagator_elements(const kqfi::ChainParams &p, int j, int k,
                                    double t) {
    const Propagator prop(hamiltonian(p));
    const Mat Ut = prop.at(t);
    const Mat cj = Ut.adjoint() * annihilator(p.L, j) * Ut;
    const Mat ck = annihilator(p.L, k);
    const Vec vac = all_down(p.L);
    return {vac.dot(cj * ck.adjoint() * vac), vac.dot(ck * cj * vac)};
}

// Qubit (rho, drho) at the operating point.
struct Qubit {
    Eigen::Matrix2cd rho;
    Eigen::Matrix2cd drho;
};

inline double spectral_qfi(const Qubit &q) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(q.rho);
    double f = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double s = es.eigenvalues()(a) + es.eigenvalues()(b);
            if (s > 1e-12) {
                const cplx e = es.eigenvectors().col(a).dot(
                    q.drho * es.eigenvectors().col(b));
                f += 2.0 * std::norm(e) / s;
            }
        }
    }
    return f;
}

// Bloch data (m, dm) of a qubit in the (up, down) Pauli frame.
struct Bloch {
    Eigen::Vector3d m;
    Eigen::Vector3d dm;
};

enum class Encoding { Spin, Fermion };

/**
 * Encode a rotation by theta about `axis` ('x' or 'y') at site k of the
 * vacuum, evolve for t, and read out site j through the local operators
 *   X_j = c_j + c_j^+,  Y_j = -i (c_j - c_j^+),  Z_j = 1 - 2 n_j.
 * Spin encoding rotates the spin; fermion encoding replaces sigma^+_k by
 * c_k^+ in the rotated branch.
 */
inline Bloch encoded_bloch(const kqfi::ChainParams &p, double delta, int k,
                           char axis, double theta, double t, int j,
                           Encoding enc = Encoding::Spin) {
    const int L = p.L;
    const Vec vac = all_down(L);
    const Mat raise =
        enc == Encoding::Spin ? site_op(L, k, pauli('+'))
                              : Mat(annihilator(L, k).adjoint());
    // exp(-i theta sigma_a / 2) |down> = cos(theta/2) |down> + sin(theta/2) b
    // with b = -|up> for a = y and b = -i |up> for a = x.
    const cplx phase = axis == 'y' ? cplx(-1.0, 0.0) : cplx(0.0, -1.0);
    const Vec flipped = phase * (raise * vac);
    const Vec psi = std::cos(theta / 2) * vac + std::sin(theta / 2) * flipped;
    const Vec dpsi =
        -0.5 * std::sin(theta / 2) * vac + 0.5 * std::cos(theta / 2) * flipped;
    const Mat Ut = Propagator(hamiltonian(p, delta)).at(t);
    const Vec a = Ut * psi;
    const Vec da = Ut * dpsi;
    const Mat c = annihilator(L, j);
    const Mat ops[3] = {c + c.adjoint(), cplx(0.0, -1.0) * (c - c.adjoint()),
                        Mat::Identity(c.rows(), c.cols()) -
                            2.0 * c.adjoint() * c};
    Bloch out;
    for (int i = 0; i < 3; ++i) {
        out.m(i) = a.dot(ops[i] * a).real();
        out.dm(i) = 2.0 * da.dot(ops[i] * a).real();
    }
    return out;
}

inline Qubit qubit_of(const Bloch &b) {
    const cplx I(0.0, 1.0);
    Eigen::Matrix2cd sx, sy, sz;
    sx << 0, 1, 1, 0;
    sy << 0, -I, I, 0;
    sz << 1, 0, 0, -1;
    Qubit q;
    q.rho = 0.5 * (Eigen::Matrix2cd::Identity() + b.m(0) * sx + b.m(1) * sy +
                   b.m(2) * sz);
    q.drho = 0.5 * (b.dm(0) * sx + b.dm(1) * sy + b.dm(2) * sz);
    return q;
}

inline double encoded_qfi(const kqfi::ChainParams &p, double delta, int k,
                          char axis, double theta, double t, int j) {
    return spectral_qfi(qubit_of(encoded_bloch(p, delta, k, axis, theta, t, j)));
}

} // namespace dense
