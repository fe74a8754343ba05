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

#include "kqfi/manybody.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "kqfi/error.hpp"

namespace kqfi::manybody {

namespace {

constexpr double kNormDrift = 1e-10;
constexpr double kEnergyDrift = 1e-8;

inline bool up(std::uint32_t s, int site) { return (s >> (site - 1)) & 1u; }

// prod_{m<site} Z_m on basis state s.
inline double string_sign(std::uint32_t s, int site) {
    const std::uint32_t below = s & ((1u << (site - 1)) - 1u);
    const int downs = (site - 1) - std::popcount(below);
    return (downs % 2 == 0) ? 1.0 : -1.0;
}

void check_state(const SpinState &psi) {
    KQFI_REQUIRE(psi.L >= 1 && psi.L <= kMaxSites &&
                     psi.amplitudes.size() == (Eigen::Index{1} << psi.L),
                 InvalidArgument, "malformed spin state");
}

void check_pair(const SpinState &A, const SpinState &B) {
    check_state(A);
    check_state(B);
    KQFI_REQUIRE(A.L == B.L, InvalidArgument,
                 "branches live on chains of different length");
}

} // namespace

void ManyBodyParams::validate() const {
    chain.validate();
    KQFI_REQUIRE(chain.L <= kMaxSites, InvalidArgument,
                 "statevector simulation is capped at L = " +
                     std::to_string(kMaxSites) + ", got " +
                     std::to_string(chain.L));
    KQFI_REQUIRE(std::isfinite(delta), InvalidArgument,
                 "non-finite interaction strength");
}

SpinState SpinState::all_down(int L) {
    KQFI_REQUIRE(L >= 1 && L <= kMaxSites, InvalidArgument,
                 "spin state size outside 1.." + std::to_string(kMaxSites));
    SpinState psi;
    psi.L = L;
    psi.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index{1} << L);
    psi.amplitudes(0) = 1.0;
    return psi;
}

cplx inner(const SpinState &bra, const SpinState &ket) {
    check_pair(bra, ket);
    return bra.amplitudes.dot(ket.amplitudes);
}

SpinHamiltonian::SpinHamiltonian(const ManyBodyParams &params)
    : params_(params), L_(params.chain.L) {
    params_.validate();
    const std::uint32_t dim = dimension();
    diag_.resize(dim);
    for (std::uint32_t s = 0; s < dim; ++s) {
        double e = 0.0;
        for (int j = 1; j <= L_; ++j) {
            const double z = up(s, j) ? 1.0 : -1.0;
            e -= params_.chain.field(j) * z;
            if (j < L_) {
                const double z2 = up(s, j + 1) ? 1.0 : -1.0;
                e += params_.delta * z * z2;
            }
        }
        diag_[s] = e;
    }
}

double SpinHamiltonian::diagonal(std::uint32_t s) const { return diag_[s]; }

double SpinHamiltonian::flip_amplitude(std::uint32_t s, int bond) const {
    // -(J/2)[(1+g) XX + (1-g) YY] = -J (s+s- + s-s+) - J g (s+s+ + s-s-)
    const bool a = (s >> bond) & 1u;
    const bool b = (s >> (bond + 1)) & 1u;
    return (a != b) ? -params_.chain.J : -params_.chain.J * params_.chain.gamma;
}

void SpinHamiltonian::apply(const Eigen::VectorXcd &in,
                            Eigen::VectorXcd &out) const {
    const std::uint32_t dim = dimension();
    out.resize(dim);
    for (std::uint32_t s = 0; s < dim; ++s) {
        cplx acc = diag_[s] * in(s);
        for (int bond = 0; bond + 1 < L_; ++bond) {
            const std::uint32_t partner = s ^ (3u << bond);
            acc += flip_amplitude(s, bond) * in(partner);
        }
        out(s) = acc;
    }
}

double SpinHamiltonian::expectation(const SpinState &psi) const {
    check_state(psi);
    Eigen::VectorXcd hpsi;
    apply(psi.amplitudes, hpsi);
    return psi.amplitudes.dot(hpsi).real();
}

Eigen::MatrixXd
SpinHamiltonian::block(const std::vector<std::uint32_t> &basis) const {
    const auto n = static_cast<Eigen::Index>(basis.size());
    std::vector<std::int64_t> index(dimension(), -1);
    for (Eigen::Index i = 0; i < n; ++i) {
        index[basis[static_cast<std::size_t>(i)]] = i;
    }
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::uint32_t s = basis[static_cast<std::size_t>(i)];
        M(i, i) = diag_[s];
        for (int bond = 0; bond + 1 < L_; ++bond) {
            const std::int64_t p = index[s ^ (3u << bond)];
            if (p < 0) {
                throw InvalidArgument("basis is not closed under H");
            }
            M(i, p) += flip_amplitude(s, bond);
        }
    }
    return M;
}

TimeEvolver::TimeEvolver(const ManyBodyParams &params, EvolutionMethod method,
                         double krylov_tol)
    : H_(params), method_(method), krylov_tol_(krylov_tol) {
    if (method_ == EvolutionMethod::Auto) {
        method_ = params.chain.L <= kExactMaxSites ? EvolutionMethod::Exact
                                                   : EvolutionMethod::Krylov;
    }
    KQFI_REQUIRE(krylov_tol_ > 0.0, InvalidArgument,
                 "Krylov tolerance must be positive");
    if (method_ == EvolutionMethod::Exact) {
        // H flips spins in pairs, so the two parity sectors decouple.
        for (int parity = 0; parity < 2; ++parity) {
            Sector sec;
            for (std::uint32_t s = 0; s < H_.dimension(); ++s) {
                if (std::popcount(s) % 2 == parity) {
                    sec.basis.push_back(s);
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H_.block(sec.basis));
            if (es.info() != Eigen::Success) {
                throw NumericalError("many-body diagonalisation failed for " +
                                     params.chain.describe());
            }
            sec.energies = es.eigenvalues();
            sec.vectors = es.eigenvectors();
            sectors_.push_back(std::move(sec));
        }
    }
}

void TimeEvolver::evolve_exact(const SpinState &psi0,
                               std::span<const double> times,
                               std::vector<SpinState> &out) const {
    for (std::size_t i = 0; i < times.size(); ++i) {
        out[i].L = psi0.L;
        out[i].amplitudes = Eigen::VectorXcd::Zero(psi0.amplitudes.size());
    }
    for (const Sector &sec : sectors_) {
        const auto n = static_cast<Eigen::Index>(sec.basis.size());
        Eigen::VectorXd re(n);
        Eigen::VectorXd im(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const cplx a = psi0.amplitudes(sec.basis[static_cast<std::size_t>(i)]);
            re(i) = a.real();
            im(i) = a.imag();
        }
        if (re.squaredNorm() + im.squaredNorm() == 0.0) {
            continue;
        }
        const Eigen::VectorXd cre = sec.vectors.transpose() * re;
        const Eigen::VectorXd cim = sec.vectors.transpose() * im;
        Eigen::VectorXd pre(n);
        Eigen::VectorXd pim(n);
        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            for (Eigen::Index i = 0; i < n; ++i) {
                const cplx c = cplx(cre(i), cim(i)) *
                               std::polar(1.0, -sec.energies(i) * times[ti]);
                pre(i) = c.real();
                pim(i) = c.imag();
            }
            const Eigen::VectorXd xre = sec.vectors * pre;
            const Eigen::VectorXd xim = sec.vectors * pim;
            for (Eigen::Index i = 0; i < n; ++i) {
                out[ti].amplitudes(sec.basis[static_cast<std::size_t>(i)]) =
                    cplx(xre(i), xim(i));
            }
        }
    }
}

double TimeEvolver::krylov_step(Eigen::VectorXcd &psi, double dt_max) const {
    const double beta0 = psi.norm();
    // Keep the Krylov basis under ~256 MB.
    const Eigen::Index dim = psi.size();
    const int budget = static_cast<int>(
        std::clamp<Eigen::Index>((Eigen::Index{1} << 28) / (16 * dim), 8, 40));
    const int mmax = std::min<Eigen::Index>(budget, dim);

    std::vector<Eigen::VectorXcd> basis;
    basis.reserve(static_cast<std::size_t>(mmax) + 1);
    basis.emplace_back(psi / beta0);
    std::vector<double> alpha;
    std::vector<double> beta;
    Eigen::VectorXcd w;
    double tail = 0.0;
    bool breakdown = false;
    for (int j = 0; j < mmax; ++j) {
        H_.apply(basis.back(), w);
        alpha.push_back(basis.back().dot(w).real());
        for (const auto &vi : basis) {
            w -= vi * vi.dot(w);
        }
        for (const auto &vi : basis) {
            w -= vi * vi.dot(w);
        }
        const double b = w.norm();
        if (b < 1e-13 * (std::abs(alpha.back()) + 1.0)) {
            breakdown = true;
            break;
        }
        if (j + 1 == mmax) {
            tail = b;
            break;
        }
        beta.push_back(b);
        basis.emplace_back(w / b);
    }
    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        T(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < m) {
            T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::VectorXd q0 = es.eigenvectors().row(0).transpose();
    auto coefficients = [&](double dt) {
        Eigen::VectorXcd y(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            y(i) = std::polar(q0(i), -es.eigenvalues()(i) * dt);
        }
        return Eigen::VectorXcd(es.eigenvectors().cast<cplx>() * y);
    };
    double dt = dt_max;
    Eigen::VectorXcd y = coefficients(dt);
    if (!breakdown) {
        int halvings = 0;
        while (tail * std::abs(y(m - 1)) > krylov_tol_) {
            dt *= 0.5;
            y = coefficients(dt);
            if (++halvings > 60) {
                throw NumericalError("Krylov step size underflow");
            }
        }
    }
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
    for (Eigen::Index i = 0; i < m; ++i) {
        next += basis[static_cast<std::size_t>(i)] * y(i);
    }
    psi = beta0 * next;
    return dt;
}

SpinState TimeEvolver::evolve(const SpinState &psi0, double t) const {
    const double times[] = {t};
    return std::move(evolve(psi0, std::span<const double>(times)).front());
}

std::vector<SpinState> TimeEvolver::evolve(const SpinState &psi0,
                                           std::span<const double> times) const {
    check_state(psi0);
    KQFI_REQUIRE(psi0.L == H_.sites(), InvalidArgument,
                 "state and Hamiltonian sizes differ");
    KQFI_REQUIRE(std::is_sorted(times.begin(), times.end()), InvalidArgument,
                 "evolution times must be ascending");
    KQFI_REQUIRE(times.empty() || times.front() >= 0.0, InvalidArgument,
                 "evolution times must be non-negative");
    const double n0 = psi0.norm();
    const double e0 = H_.expectation(psi0);
    std::vector<SpinState> out(times.size());
    if (method_ == EvolutionMethod::Exact) {
        evolve_exact(psi0, times, out);
    } else {
        Eigen::VectorXcd psi = psi0.amplitudes;
        double now = 0.0;
        double dt_hint = 1.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            for (;;) {
                const double remaining = times[i] - now;
                if (remaining <= 1e-14 * std::max(1.0, times[i])) {
                    break;
                }
                const double want = std::min(remaining, 2.0 * dt_hint);
                const double took = krylov_step(psi, want);
                dt_hint = took;
                now = (took == remaining) ? times[i] : now + took;
            }
            now = times[i];
            out[i].L = psi0.L;
            out[i].amplitudes = psi;
        }
    }
    if (!out.empty()) {
        const SpinState &last = out.back();
        const double ndrift = std::abs(last.norm() - n0);
        const double edrift =
            std::abs(H_.expectation(last) / (n0 * n0) - e0 / (n0 * n0));
        if (ndrift > kNormDrift || edrift > kEnergyDrift * H_.params().chain.J) {
            throw NumericalError(
                "time evolution missed its accuracy target (norm drift " +
                std::to_string(ndrift) + ", energy drift " +
                std::to_string(edrift) + ")");
        }
    }
    return out;
}

SpinState apply_annihilator(int j, const SpinState &psi) {
    check_state(psi);
    KQFI_REQUIRE(j >= 1 && j <= psi.L, InvalidArgument, "site out of range");
    SpinState out{psi.L, Eigen::VectorXcd::Zero(psi.amplitudes.size())};
    const std::uint32_t bit = 1u << (j - 1);
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(psi.amplitudes.size()); ++s) {
        if (s & bit) {
            out.amplitudes(s ^ bit) += string_sign(s, j) * psi.amplitudes(s);
        }
    }
    return out;
}

SpinState apply_creator(int k, const SpinState &psi) {
    check_state(psi);
    KQFI_REQUIRE(k >= 1 && k <= psi.L, InvalidArgument, "site out of range");
    SpinState out{psi.L, Eigen::VectorXcd::Zero(psi.amplitudes.size())};
    const std::uint32_t bit = 1u << (k - 1);
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(psi.amplitudes.size()); ++s) {
        if (!(s & bit)) {
            out.amplitudes(s | bit) += string_sign(s, k) * psi.amplitudes(s);
        }
    }
    return out;
}

double parity_expectation(const SpinState &psi) {
    check_state(psi);
    double acc = 0.0;
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(psi.amplitudes.size()); ++s) {
        const int downs = psi.L - std::popcount(s);
        acc += ((downs % 2 == 0) ? 1.0 : -1.0) * std::norm(psi.amplitudes(s));
    }
    return acc;
}

namespace {

SpinState encoded_branch(int L, int k, EncodingChannel axis) {
    SpinState b = SpinState::all_down(L);
    b.amplitudes(0) = 0.0;
    const cplx phase = axis == EncodingChannel::Y ? cplx(-1.0, 0.0) : cplx(0.0, -1.0);
    b.amplitudes(std::uint32_t{1} << (k - 1)) = phase;
    return b;
}

// Tr_{others} |X><Y| onto the site with bit `bit`, basis (down, up).
Eigen::Matrix2cd cross_trace(const SpinState &X, const SpinState &Y, int site) {
    const std::uint32_t bit = 1u << (site - 1);
    Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(X.amplitudes.size()); ++s) {
        if (s & bit) {
            continue;
        }
        const std::uint32_t t = s | bit;
        const cplx x0 = X.amplitudes(s), x1 = X.amplitudes(t);
        const cplx y0 = std::conj(Y.amplitudes(s)), y1 = std::conj(Y.amplitudes(t));
        r(0, 0) += x0 * y0;
        r(0, 1) += x0 * y1;
        r(1, 0) += x1 * y0;
        r(1, 1) += x1 * y1;
    }
    return r;
}

struct Coefficients {
    double aa, bb, cross;    // rho = aa rAA + bb rBB + cross (rAB + rBA)
    double daa, dbb, dcross; // theta-derivatives
};

Coefficients coefficients(double theta0) {
    const double c = std::cos(theta0 / 2.0);
    const double s = std::sin(theta0 / 2.0);
    return {c * c, s * s, c * s, -c * s, c * s, 0.5 * (c * c - s * s)};
}

// <X| O |Y> for the string-dressed local fermion qubit operators at site j.
struct LocalOps {
    cplx x, y, z;
};

LocalOps local_fermion_elements(const SpinState &X, const SpinState &Y, int j) {
    const std::uint32_t bit = 1u << (j - 1);
    LocalOps acc{0.0, 0.0, 0.0};
    for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(X.amplitudes.size()); ++s) {
        const cplx xs = std::conj(X.amplitudes(s));
        if (xs == cplx(0.0, 0.0)) {
            continue;
        }
        const std::uint32_t f = s ^ bit;
        const double str = string_sign(s, j);
        // sigma^x |f> has amplitude 1 on |s>; sigma^y |f> = i z_f |s>, with
        // z_f the sign of site j in |f>.
        const double zf = (f & bit) ? 1.0 : -1.0;
        acc.x += xs * str * Y.amplitudes(f);
        acc.y += xs * (-str) * cplx(0.0, zf) * Y.amplitudes(f);
        acc.z += xs * ((s & bit) ? -1.0 : 1.0) * Y.amplitudes(s);
    }
    return acc;
}

Eigen::Matrix2cd pauli_combination(double a0, const Eigen::Vector3d &a) {
    Eigen::Matrix2cd m;
    m(0, 0) = a0 + a(2);
    m(1, 1) = a0 - a(2);
    m(0, 1) = cplx(a(0), -a(1));
    m(1, 0) = cplx(a(0), a(1));
    return m;
}

} // namespace

Branches evolve_two_branches(const ManyBodyParams &params, int k,
                             EncodingChannel axis, double t) {
    const TimeEvolver evolver(params);
    const double times[] = {t};
    return std::move(evolve_two_branches(evolver, k, axis, times).front());
}

std::vector<Branches> evolve_two_branches(const TimeEvolver &evolver, int k,
                                          EncodingChannel axis,
                                          std::span<const double> times) {
    const int L = evolver.hamiltonian().sites();
    KQFI_REQUIRE(k >= 1 && k <= L, InvalidArgument,
                 "encoding site " + std::to_string(k) + " outside 1.." +
                     std::to_string(L));
    std::vector<SpinState> a = evolver.evolve(SpinState::all_down(L), times);
    std::vector<SpinState> b = evolver.evolve(encoded_branch(L, k, axis), times);
    std::vector<Branches> out;
    out.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        out.push_back({std::move(a[i]), std::move(b[i])});
    }
    return out;
}

ReducedQubit reduced_qubit_from_branches(const SpinState &A, const SpinState &B,
                                         double theta0, int j) {
    check_pair(A, B);
    KQFI_REQUIRE(j >= 1 && j <= A.L, InvalidArgument, "readout site out of range");
    const Eigen::Matrix2cd rAA = cross_trace(A, A, j);
    const Eigen::Matrix2cd rBB = cross_trace(B, B, j);
    const Eigen::Matrix2cd rAB = cross_trace(A, B, j);
    const Eigen::Matrix2cd sym = rAB + rAB.adjoint();
    const Coefficients c = coefficients(theta0);
    return {c.aa * rAA + c.bb * rBB + c.cross * sym,
            c.daa * rAA + c.dbb * rBB + c.dcross * sym};
}

ReducedQubit fermionic_qubit_from_branches(const SpinState &A, const SpinState &B,
                                           double theta0, int j) {
    check_pair(A, B);
    KQFI_REQUIRE(j >= 1 && j <= A.L, InvalidArgument, "readout site out of range");
    const LocalOps aa = local_fermion_elements(A, A, j);
    const LocalOps bb = local_fermion_elements(B, B, j);
    const LocalOps ab = local_fermion_elements(A, B, j);
    const Coefficients c = coefficients(theta0);
    const Eigen::Vector3d eA{aa.x.real(), aa.y.real(), aa.z.real()};
    const Eigen::Vector3d eB{bb.x.real(), bb.y.real(), bb.z.real()};
    const Eigen::Vector3d eX{ab.x.real(), ab.y.real(), ab.z.real()};
    // <O> = aa <A|O|A> + bb <B|O|B> + 2 cross Re<A|O|B>
    const Eigen::Vector3d m = c.aa * eA + c.bb * eB + 2.0 * c.cross * eX;
    const Eigen::Vector3d dm = c.daa * eA + c.dbb * eB + 2.0 * c.dcross * eX;
    return {0.5 * pauli_combination(1.0, m), 0.5 * pauli_combination(0.0, dm)};
}

BlochVector bloch_of(const ReducedQubit &rq) {
    auto vec = [](const Eigen::Matrix2cd &r) {
        return Eigen::Vector3d{2.0 * r(1, 0).real(), 2.0 * r(1, 0).imag(),
                               (r(0, 0) - r(1, 1)).real()};
    };
    return {vec(rq.rho), vec(rq.drho)};
}

double qfi_spectral(const ReducedQubit &rq) {
    const Eigen::Matrix2cd rho = 0.5 * (rq.rho + rq.rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
    const Eigen::Vector2d lam = es.eigenvalues();
    const Eigen::Matrix2cd &Q = es.eigenvectors();
    const Eigen::Matrix2cd d = Q.adjoint() * rq.drho * Q;
    double f = 0.0;
    for (int n = 0; n < 2; ++n) {
        for (int m = 0; m < 2; ++m) {
            const double den = lam(n) + lam(m);
            if (den > 1e-12) {
                f += 2.0 * std::norm(d(n, m)) / den;
            }
        }
    }
    return f;
}

PropagatorElements propagator_elements(const TimeEvolver &evolver, int j, int k,
                                       double t) {
    const int L = evolver.hamiltonian().sites();
    KQFI_REQUIRE(j >= 1 && j <= L && k >= 1 && k <= L, InvalidArgument,
                 "site out of range");
    const SpinState vac = SpinState::all_down(L);
    const SpinState a = evolver.evolve(vac, t);
    const SpinState kt = evolver.evolve(apply_creator(k, vac), t);
    // <0|e^{iHt} c_j e^{-iHt}|k> and <k|e^{iHt} c_j e^{-iHt}|0>
    return {inner(a, apply_annihilator(j, kt)), inner(kt, apply_annihilator(j, a))};
}

WindowStats boundary_qfi_average(const ManyBodyParams &params,
                                 const TimeWindow &window,
                                 EvolutionMethod method) {
    window.validate();
    const TimeEvolver evolver(params, method);
    const std::vector<double> times = window.times();
    const std::vector<Branches> br =
        evolve_two_branches(evolver, 1, EncodingChannel::Y, times);
    std::vector<double> f(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        f[i] = qfi_spectral(reduced_qubit_from_branches(br[i].A, br[i].B, 0.0, 1));
    }
    return window_stats(window, f);
}

ScanRecords interaction_scan(std::span<const ManyBodyParams> base,
                             const TimeWindow &window, std::span<const int> sizes,
                             EvolutionMethod method) {
    window.validate();
    for (int L : sizes) {
        KQFI_REQUIRE(L >= 2 && L <= kMaxSites, InvalidArgument,
                     "interaction scan size " + std::to_string(L) +
                         " outside 2.." + std::to_string(kMaxSites));
    }
    std::vector<ManyBodyParams> jobs;
    for (const ManyBodyParams &b : base) {
        KQFI_REQUIRE(b.chain.uniform(), InvalidArgument,
                     "interaction scan needs a uniform field");
        for (int L : sizes) {
            ManyBodyParams p = b;
            p.chain.L = L;
            p.validate();
            jobs.push_back(p);
        }
    }
    std::vector<WindowStats> stats(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        stats[i] = boundary_qfi_average(jobs[i], window, method);
    }
    ScanRecords out;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const ManyBodyParams &p = jobs[i];
        ScanRecord r;
        r.set("L", std::int64_t{p.chain.L})
            .set("J", p.chain.J)
            .set("gamma", p.chain.gamma)
            .set("h", p.chain.h)
            .set("delta", p.delta)
            .set("t_min", window.t_min)
            .set("t_max", window.t_max)
            .set("n_samples", std::int64_t{window.n_samples})
            .set("mean_qfi", stats[i].mean)
            .set("std_qfi", stats[i].std);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace kqfi::manybody
