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

#include "kqfi/bdg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "kqfi/error.hpp"

namespace kqfi {

namespace {

// Eigenvalues with |e| below this (in units of J) are treated as one
// particle-hole-closed block and re-split explicitly.
constexpr double kZeroBlock = 1e-4;

// Particle-hole conjugation (u, v) -> (v, u) on stacked real vectors.
Eigen::MatrixXd ph_conjugate(const Eigen::MatrixXd &w, int L) {
    Eigen::MatrixXd out(w.rows(), w.cols());
    out.topRows(L) = w.bottomRows(L);
    out.bottomRows(L) = w.topRows(L);
    return out;
}

// Split a particle-hole-closed eigenspace Z (columns) into m positive modes.
// Z = Z_+ (+)  Z_- under conjugation; M maps Z_+ to Z_-, so the SVD of the
// cross block K = A_+^T M A_- pairs them up: w_i = (a_i + b_i)/sqrt2 has
// energy s_i >= 0 and its conjugate (a_i - b_i)/sqrt2 sits at -s_i.
void split_zero_block(const Eigen::MatrixXd &M, const Eigen::MatrixXd &Z,
                      int L, std::vector<double> &energies,
                      std::vector<Eigen::VectorXd> &modes) {
    const Eigen::Index dim = Z.cols();
    if (dim % 2 != 0) {
        throw NumericalError("near-zero BdG block has odd dimension " +
                             std::to_string(dim));
    }
    const Eigen::Index m = dim / 2;
    Eigen::MatrixXd Pz = Z.transpose() * ph_conjugate(Z, L);
    Pz = 0.5 * (Pz + Pz.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pes(Pz);
    if (pes.info() != Eigen::Success) {
        throw NumericalError("particle-hole split of zero block failed");
    }
    // Ascending: first m are the -1 sector, last m the +1 sector.
    const Eigen::VectorXd &pev = pes.eigenvalues();
    if (std::abs(pev(m - 1) + 1.0) > 1e-6 || std::abs(pev(m) - 1.0) > 1e-6) {
        throw NumericalError("near-zero BdG block is not closed under "
                             "particle-hole conjugation");
    }
    const Eigen::MatrixXd Aminus = Z * pes.eigenvectors().leftCols(m);
    const Eigen::MatrixXd Aplus = Z * pes.eigenvectors().rightCols(m);
    const Eigen::MatrixXd K = Aplus.transpose() * M * Aminus;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeFullU |
                                                 Eigen::ComputeFullV);
    const Eigen::MatrixXd a = Aplus * svd.matrixU();
    const Eigen::MatrixXd b = Aminus * svd.matrixV();
    for (Eigen::Index i = 0; i < m; ++i) {
        energies.push_back(svd.singularValues()(i));
        modes.emplace_back((a.col(i) + b.col(i)) / std::numbers::sqrt2);
    }
}

} // namespace

Eigen::MatrixXd bdg_matrix(const ChainParams &params) {
    params.validate();
    const int L = params.L;
    const double J = params.J;
    const double pair = params.J * params.gamma;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(L, L);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(L, L);
    for (int j = 0; j < L; ++j) {
        A(j, j) = -2.0 * params.field(j + 1);
    }
    for (int j = 0; j + 1 < L; ++j) {
        A(j, j + 1) = J;
        A(j + 1, j) = J;
        B(j, j + 1) = pair;
        B(j + 1, j) = -pair;
    }
    Eigen::MatrixXd M(2 * L, 2 * L);
    M << A, B, -B, -A;
    return M;
}

BdgSpectrum build_bdg_spectrum(const ChainParams &params) {
    const Eigen::MatrixXd M = bdg_matrix(params);
    const int L = params.L;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success) {
        throw NumericalError("BdG diagonalisation did not converge for " +
                             params.describe());
    }
    const Eigen::VectorXd &ev = es.eigenvalues();
    const Eigen::MatrixXd &evec = es.eigenvectors();

    const double zero_cut = kZeroBlock * params.J;
    std::vector<Eigen::Index> block;
    for (Eigen::Index i = 0; i < 2 * L; ++i) {
        if (std::abs(ev(i)) < zero_cut) {
            block.push_back(i);
        }
    }

    std::vector<double> energies;
    std::vector<Eigen::VectorXd> modes;
    energies.reserve(L);
    modes.reserve(L);
    if (!block.empty()) {
        Eigen::MatrixXd Z(2 * L, static_cast<Eigen::Index>(block.size()));
        for (std::size_t c = 0; c < block.size(); ++c) {
            Z.col(static_cast<Eigen::Index>(c)) = evec.col(block[c]);
        }
        split_zero_block(M, Z, L, energies, modes);
    }
    for (Eigen::Index i = 0; i < 2 * L; ++i) {
        if (ev(i) >= zero_cut) {
            energies.push_back(ev(i));
            modes.emplace_back(evec.col(i));
        }
    }
    if (static_cast<int>(energies.size()) != L) {
        throw NumericalError("BdG spectrum is not particle-hole symmetric "
                             "(found " + std::to_string(energies.size()) +
                             " positive modes) for " + params.describe());
    }

    std::vector<int> order(L);
    for (int i = 0; i < L; ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return energies[x] < energies[y]; });

    BdgSpectrum spec;
    spec.params = params;
    spec.energies.resize(L);
    spec.u.resize(L, L);
    spec.v.resize(L, L);
    for (int n = 0; n < L; ++n) {
        Eigen::VectorXd w = modes[order[n]];
        const Eigen::VectorXd s = w.head(L) + w.tail(L);
        for (int j = 0; j < L; ++j) {
            if (std::abs(s(j)) > 1e-12) {
                if (s(j) < 0.0) {
                    w = -w;
                }
                break;
            }
        }
        spec.energies(n) = energies[order[n]];
        spec.u.col(n) = w.head(L);
        spec.v.col(n) = w.tail(L);
    }
    return spec;
}

PropagatorPair propagators(const BdgSpectrum &spec, double t) {
    const Eigen::ArrayXd phase = spec.energies.array() * t;
    const Eigen::VectorXd c = phase.cos().matrix();
    const Eigen::VectorXd s = phase.sin().matrix();
    const Eigen::MatrixXd &Uc = spec.u;
    const Eigen::MatrixXd &Vc = spec.v;
    const Eigen::MatrixXd UcC = Uc * c.asDiagonal();
    const Eigen::MatrixXd VcC = Vc * c.asDiagonal();
    const Eigen::MatrixXd UcS = Uc * s.asDiagonal();
    const Eigen::MatrixXd VcS = Vc * s.asDiagonal();

    // e^{-i e t} on the u-u and u-v terms, e^{+i e t} on the v-v and v-u terms.
    PropagatorPair pp;
    pp.t = t;
    const Eigen::MatrixXd Ure = UcC * Uc.transpose() + VcC * Vc.transpose();
    const Eigen::MatrixXd Uim = VcS * Vc.transpose() - UcS * Uc.transpose();
    const Eigen::MatrixXd Vre = UcC * Vc.transpose() + VcC * Uc.transpose();
    const Eigen::MatrixXd Vim = VcS * Uc.transpose() - UcS * Vc.transpose();
    pp.U = Ure.cast<cplx>() + cplx(0.0, 1.0) * Uim.cast<cplx>();
    pp.V = Vre.cast<cplx>() + cplx(0.0, 1.0) * Vim.cast<cplx>();
    return pp;
}

namespace {

struct Phases {
    Eigen::VectorXcd minus; // e^{-i e t}
    Eigen::VectorXcd plus;  // e^{+i e t}
};

Phases phases(const BdgSpectrum &spec, double t) {
    const Eigen::Index n = spec.energies.size();
    Phases p{Eigen::VectorXcd(n), Eigen::VectorXcd(n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = spec.energies(i) * t;
        const double c = std::cos(x);
        const double s = std::sin(x);
        p.minus(i) = cplx(c, -s);
        p.plus(i) = cplx(c, s);
    }
    return p;
}

} // namespace

PropagatorRow propagator_row(const BdgSpectrum &spec, double t, int site) {
    check_site(spec.params, site, "propagator row");
    const Phases p = phases(spec, t);
    const Eigen::VectorXcd a =
        spec.u.row(site - 1).transpose().cast<cplx>().cwiseProduct(p.minus);
    const Eigen::VectorXcd b =
        spec.v.row(site - 1).transpose().cast<cplx>().cwiseProduct(p.plus);
    PropagatorRow row;
    row.t = t;
    row.site = site;
    row.U = spec.u.cast<cplx>() * a + spec.v.cast<cplx>() * b;
    row.V = spec.v.cast<cplx>() * a + spec.u.cast<cplx>() * b;
    return row;
}

PropagatorColumn propagator_column(const BdgSpectrum &spec, double t,
                                   int site) {
    check_site(spec.params, site, "propagator column");
    const Phases p = phases(spec, t);
    const Eigen::VectorXcd uk = spec.u.row(site - 1).transpose().cast<cplx>();
    const Eigen::VectorXcd vk = spec.v.row(site - 1).transpose().cast<cplx>();
    PropagatorColumn col;
    col.t = t;
    col.site = site;
    col.U = spec.u.cast<cplx>() * uk.cwiseProduct(p.minus) +
            spec.v.cast<cplx>() * vk.cwiseProduct(p.plus);
    col.V = spec.u.cast<cplx>() * vk.cwiseProduct(p.minus) +
            spec.v.cast<cplx>() * uk.cwiseProduct(p.plus);
    return col;
}

double bulk_dispersion(double q, const ChainParams &params) {
    KQFI_REQUIRE(params.uniform(), InvalidArgument,
                 "bulk dispersion needs a uniform field");
    const double a = params.h - params.J * std::cos(q);
    const double b = params.J * params.gamma * std::sin(q);
    return 2.0 * std::sqrt(a * a + b * b);
}

namespace {

// sin(x)/x, continuous at 0.
double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

InfinitePropagator trapezoid(int r, double t, const ChainParams &p, int n) {
    cplx U{0.0, 0.0};
    cplx V{0.0, 0.0};
    const double dq = 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) {
        const double q = -std::numbers::pi + dq * i;
        const double a = -2.0 * (p.h - p.J * std::cos(q));
        const double b = 2.0 * p.J * p.gamma * std::sin(q);
        const double e = std::sqrt(a * a + b * b);
        const double sc = t * sinc(e * t); // sin(e t)/e
        const cplx uq{std::cos(e * t), -a * sc};
        const double vq = -b * sc;
        const cplx wave = std::polar(1.0, q * r);
        U += wave * uq;
        V += wave * vq;
    }
    return {U / static_cast<double>(n), V / static_cast<double>(n), n};
}

} // namespace

InfinitePropagator infinite_chain_propagator(int r, double t,
                                             const ChainParams &params) {
    params.validate();
    KQFI_REQUIRE(params.uniform(), InvalidArgument,
                 "infinite-chain propagator needs a uniform field");
    constexpr int kMaxNodes = 1 << 22;
    InfinitePropagator prev = trapezoid(r, t, params, 2048);
    for (int n = 4096; n <= kMaxNodes; n *= 2) {
        InfinitePropagator next = trapezoid(r, t, params, n);
        if (std::abs(next.U - prev.U) < 1e-9 &&
            std::abs(next.V - prev.V) < 1e-9) {
            return next;
        }
        prev = next;
    }
    throw NumericalError("infinite-chain quadrature did not converge for r=" +
                         std::to_string(r) + ", t=" + std::to_string(t));
}

namespace {

double group_speed(double q, const ChainParams &p) {
    const double e = bulk_dispersion(q, p);
    if (e < 1e-14) {
        return 0.0;
    }
    const double g2 = 1.0 - p.gamma * p.gamma;
    return 4.0 * p.J * std::abs(std::sin(q)) *
           std::abs(p.h - p.J * g2 * std::cos(q)) / e;
}

} // namespace

double max_group_velocity(const ChainParams &params) {
    KQFI_REQUIRE(params.uniform(), InvalidArgument,
                 "group velocity needs a uniform field");
    KQFI_REQUIRE(std::isfinite(params.gamma) && std::isfinite(params.h),
                 InvalidArgument, "group velocity needs finite gamma and h");
    // |d eps/dq| is even in q, so [0, pi] suffices.
    constexpr int kGrid = 4001;
    const double dq = std::numbers::pi / (kGrid - 1);
    int best = 0;
    double best_v = -1.0;
    for (int i = 0; i < kGrid; ++i) {
        const double v = group_speed(dq * i, params);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    double lo = dq * std::max(best - 1, 0);
    double hi = dq * std::min(best + 1, kGrid - 1);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = group_speed(x1, params);
    double f2 = group_speed(x2, params);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = group_speed(x2, params);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = group_speed(x1, params);
        }
    }
    return std::max({best_v, f1, f2});
}

} // namespace kqfi
