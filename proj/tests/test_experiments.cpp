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


#include <cmath>
#include <numbers>
#include <vector>

#include <catch_amalgamated.hpp>
#include <omp.h>

#include "kqfi/error.hpp"
#include "kqfi/experiments.hpp"

using namespace kqfi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ChainParams chain(int L, double gamma, double h) {
    ChainParams p;
    p.L = L;
    p.gamma = gamma;
    p.h = h;
    return p;
}

const TimeWindow kLate = TimeWindow::with_spacing(150, 200);

std::vector<double> grid(double a, double b, double step) {
    std::vector<double> out;
    for (int i = 0; a + i * step <= b + 1e-12; ++i) {
        out.push_back(a + i * step);
    }
    return out;
}

} // namespace

TEST_CASE("Time windows", "[records]") {
    const TimeWindow w = TimeWindow::with_spacing(150, 200, 0.25);
    CHECK(w.n_samples == 201);
    CHECK(w.spacing() == 0.25);
    CHECK(w.time(0) == 150.0);
    CHECK(w.time(200) == 200.0);
    const TimeWindow odd = TimeWindow::with_spacing(0, 1, 0.3);
    CHECK(odd.n_samples == 5);
    CHECK(odd.spacing() <= 0.3);
    CHECK(w.refined().n_samples == 401);
    double total = 0.0;
    for (double x : w.weights()) {
        total += x;
    }
    CHECK_THAT(total, WithinAbs(1.0, 1e-14));
    CHECK_THROWS_AS(TimeWindow::with_spacing(2, 1), InvalidArgument);
    CHECK_THROWS_AS((TimeWindow{0, 1, 1}.validate()), InvalidArgument);

    const WindowStats flat = window_stats(TimeWindow{0, 1, 4}, {2, 2, 2, 2});
    CHECK_THAT(flat.mean, WithinAbs(2.0, 1e-15));
    CHECK_THAT(flat.std, WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(window_stats(TimeWindow{0, 1, 4}, {1, 2}), InvalidArgument);
}

TEST_CASE("Scan records", "[records]") {
    ScanRecord r;
    r.set("L", std::int64_t{10}).set("h", 0.5).set("channel", std::string("Y"));
    r.set("h", 0.25);
    REQUIRE(r.fields().size() == 3);
    CHECK(r.fields()[1].first == "h");
    CHECK(r.number("h") == 0.25);
    CHECK(r.number("L") == 10.0);
    CHECK(r.text("channel") == "Y");
    CHECK(r.has("L"));
    CHECK_FALSE(r.has("gamma"));
    CHECK_THROWS_AS(r.at("gamma"), InvalidArgument);
    CHECK_THROWS_AS(r.number("channel"), InvalidArgument);
}

TEST_CASE("Time-averaged QFI", "[experiments]") {
    SECTION("topological plateau with bulk remnant") {
        const ChainParams p = chain(100, 0.3, 0.5);
        const BdgSpectrum s = build_bdg_spectrum(p);
        const double plateau = plateau_prediction(zero_mode(s), 1, 1);
        const double mean =
            time_average_qfi(s, 1, 1, EncodingChannel::Y, 0.0, kLate).mean;
        CHECK(mean >= 0.8 * plateau);
        CHECK(mean <= 1.3 * plateau);
    }
    SECTION("trivial phase dephases") {
        CHECK(time_average_qfi(chain(100, 0.8, 1.8), 1, 1, EncodingChannel::Y, 0.0,
                               kLate)
                  .mean < 0.05);
    }
    SECTION("sweet spot") {
        const WindowStats s = time_average_qfi(chain(40, 1.0, 0.0), 1, 1,
                                               EncodingChannel::Y, 0.0, kLate);
        CHECK_THAT(s.mean, WithinAbs(1.0, 1e-10));
        CHECK_THAT(s.std, WithinAbs(0.0, 1e-10));
    }
    SECTION("window halving") {
        const BdgSpectrum s = build_bdg_spectrum(chain(60, 0.4, 0.7));
        const double full =
            time_average_qfi(s, 1, 1, EncodingChannel::Y, 0.0, kLate).mean;
        const double a = time_average_qfi(s, 1, 1, EncodingChannel::Y, 0.0,
                                          TimeWindow::with_spacing(150, 175))
                             .mean;
        const double b = time_average_qfi(s, 1, 1, EncodingChannel::Y, 0.0,
                                          TimeWindow::with_spacing(175, 200))
                             .mean;
        CHECK_THAT(0.5 * (a + b), WithinAbs(full, 1e-12));
    }
}

TEST_CASE("Sampling self-check", "[experiments]") {
    const BdgSpectrum s = build_bdg_spectrum(chain(100, 0.3, 0.5));
    const auto mean_of = [&](const TimeWindow &w) {
        return time_average_qfi(s, 1, 1, EncodingChannel::Y, 0.0, w).mean;
    };
    const SamplingCheck ok = check_sampling(mean_of, kLate);
    CHECK(ok.change < kSamplingTolerance);
    CHECK(ok.window.n_samples >= kLate.n_samples);

    int calls = 0;
    const auto coarse = [&](const TimeWindow &w) {
        ++calls;
        return w.n_samples < 17 ? 1.0 / w.n_samples : 0.0;
    };
    const SamplingCheck refined = check_sampling(coarse, TimeWindow{0, 1, 3});
    CHECK(refined.refinements == 3);
    CHECK(refined.window.n_samples == 17);

    const auto never = [](const TimeWindow &w) { return double(w.n_samples); };
    CHECK_THROWS_AS(check_sampling(never, TimeWindow{0, 1, 3}), NumericalError);
}

TEST_CASE("Phase-diagram scan", "[experiments]") {
    ChainParams base = chain(100, 0.0, 0.0);
    const std::vector<double> hs = grid(0.0, 2.0, 0.4);
    const double g0[] = {0.0};
    const ScanOutput row = phase_diagram_scan(hs, g0, base, kLate);
    REQUIRE(row.records.size() == hs.size());
    for (const ScanRecord &r : row.records) {
        CHECK(r.text("error").empty());
        CHECK(r.number("mean_qfi") < 0.05);
    }

    const double one_h[] = {0.5};
    const double one_g[] = {0.3};
    const ScanOutput single = phase_diagram_scan(one_h, one_g, base, kLate);
    const double direct = time_average_qfi(chain(100, 0.3, 0.5), 1, 1,
                                           EncodingChannel::Y, 0.0,
                                           single.sampling.window)
                              .mean;
    CHECK(single.records.front().number("mean_qfi") == direct);
    CHECK(single.records.front().number("gamma") == 0.3);
    CHECK(single.records.front().number("n_samples") ==
          single.sampling.window.n_samples);

    const double bad_h[] = {0.5, std::nan("")};
    const ScanOutput partial =
        phase_diagram_scan(bad_h, one_g, base, kLate, false);
    CHECK(partial.records[0].text("error").empty());
    CHECK_FALSE(partial.records[1].text("error").empty());
    CHECK(std::isnan(partial.records[1].number("mean_qfi")));

    CHECK_THROWS_AS(phase_diagram_scan({}, one_g, base, kLate), InvalidArgument);
}

TEST_CASE("Scans do not depend on the thread count", "[experiments][property]") {
    const std::vector<double> hs = {0.2, 0.9, 1.4};
    const std::vector<double> gs = {0.3, 1.0};
    const ChainParams base = chain(40, 0.0, 0.0);
    const TimeWindow w = TimeWindow::with_spacing(50, 60);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const ScanOutput one = phase_diagram_scan(hs, gs, base, w);
    const EncodingChannel both[] = {EncodingChannel::Y, EncodingChannel::X};
    const DisorderResult d1 =
        disorder_ensemble(chain(30, 1.0, 0.5), DisorderSpec{0.7, 12, 77}, w, both);
    omp_set_num_threads(3);
    const ScanOutput three = phase_diagram_scan(hs, gs, base, w);
    const DisorderResult d3 =
        disorder_ensemble(chain(30, 1.0, 0.5), DisorderSpec{0.7, 12, 77}, w, both);
    omp_set_num_threads(saved);
    CHECK(one.records == three.records);
    for (std::size_t c = 0; c < 2; ++c) {
        CHECK(d1.channels[c].mean == d3.channels[c].mean);
        CHECK(d1.channels[c].std == d3.channels[c].std);
    }
}

TEST_CASE("Space-time map", "[experiments]") {
    const double t0[] = {0.0};
    const Eigen::MatrixXd start = spacetime_map(chain(20, 0.6, 0.3), 4, t0,
                                                EncodingChannel::Y);
    for (int j = 1; j <= 20; ++j) {
        CHECK_THAT(start(j - 1, 0), WithinAbs(j == 4 ? 1.0 : 0.0, 1e-12));
    }
    const double unsorted[] = {1.0, 0.5};
    CHECK_THROWS_AS(spacetime_map(chain(5, 1, 0), 1, unsorted, EncodingChannel::Y),
                    InvalidArgument);

    SECTION("ballistic front in the topological phase") {
        const ChainParams p = chain(100, 0.3, 0.5);
        const std::vector<double> ts = grid(0.0, 60.0, 0.5);
        const Eigen::MatrixXd map = spacetime_map(p, 1, ts, EncodingChannel::Y);
        CHECK_THAT(wavefront_velocity(map, ts, 1).velocity,
                   WithinRel(max_group_velocity(p), 0.10));
    }
    SECTION("trivial boundary column stays dephased until the echo") {
        // The far-end reflection returns at 2 (L - 1) / v_max.
        const ChainParams p = chain(100, 0.8, 1.8);
        const double echo = 2.0 * (p.L - 1) / max_group_velocity(p);
        const std::vector<double> ts = grid(50.0, echo - 5.0, 0.25);
        const Eigen::MatrixXd map = spacetime_map(p, 1, ts, EncodingChannel::Y);
        CHECK(map.row(0).maxCoeff() < 0.05);
    }
}

TEST_CASE("Encoding-site scan", "[experiments]") {
    SECTION("decay resolves the localization length") {
        const ChainParams p = chain(100, 1.0, 0.1);
        std::vector<int> ks;
        for (int k = 1; k <= 12; ++k) {
            ks.push_back(k);
        }
        const SiteScan scan = encoding_site_scan(p, 1, ks, EncodingChannel::Y, kLate);
        const double xi = localization_length(p).xi;
        CHECK_THAT(scan.fit.slope, WithinRel(-2.0 / xi, 0.05));
        CHECK(scan.fit_sites.size() >= 2);
        CHECK(scan.fit_sites.front() == 1);
        const double direct = time_average_qfi(p, 1, 1, EncodingChannel::Y, 0.0,
                                               scan.output.sampling.window)
                                  .mean;
        CHECK_THAT(scan.output.records.front().number("mean_qfi"),
                   WithinAbs(direct, 1e-15));
    }
    SECTION("sweet spot") {
        const int ks[] = {1, 2, 3};
        const SiteScan scan =
            encoding_site_scan(chain(30, 1.0, 0.0), 1, ks, EncodingChannel::Y, kLate);
        CHECK_THAT(scan.output.records[0].number("mean_qfi"), WithinAbs(1.0, 1e-10));
        CHECK(scan.output.records[2].number("mean_qfi") < 1e-10);
        // The neighbouring site shares a decoupled bond with the edge and
        // beats at the single frequency 2J: F = sin^2(2Jt), no dephasing.
        const BdgSpectrum s = build_bdg_spectrum(chain(30, 1.0, 0.0));
        const std::vector<double> ts = grid(0.0, 20.0, 0.37);
        const std::vector<double> f = qfi_series(s, 1, 2, EncodingChannel::Y, 0.0, ts);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            CHECK_THAT(f[i], WithinAbs(std::pow(std::sin(2 * ts[i]), 2), 1e-10));
        }
        CHECK_THAT(scan.output.records[1].number("mean_qfi"), WithinAbs(0.5, 0.01));
    }
    const int outside[] = {0};
    CHECK_THROWS_AS(encoding_site_scan(chain(10, 1, 0), 1, outside,
                                       EncodingChannel::Y, kLate),
                    InvalidArgument);
}

TEST_CASE("Axis asymmetry", "[experiments]") {
    const AxisAsymmetry topo = axis_asymmetry(chain(100, 1.0, 0.1), kLate);
    const double plateau = plateau_prediction(
        zero_mode(build_bdg_spectrum(chain(100, 1.0, 0.1))), 1, 1);
    CHECK(topo.y.mean > 0.9);
    CHECK_THAT(topo.y.mean, WithinAbs(plateau, 1e-3));
    CHECK(topo.x.mean < 1e-4 * topo.y.mean);

    const AxisAsymmetry trivial = axis_asymmetry(chain(100, 0.8, 1.8), kLate);
    CHECK(trivial.y.mean < 0.05);
    CHECK(trivial.x.mean < 0.05);
    CHECK(std::abs(trivial.y.mean - trivial.x.mean) < 0.02);

    ChainParams flipped = chain(100, -1.0, 0.1);
    const BdgSpectrum fs = build_bdg_spectrum(flipped);
    CHECK_THAT(time_average_qfi(fs, 1, 1, EncodingChannel::X, 0.0, kLate).mean,
               WithinAbs(topo.y.mean, 1e-10));
    CHECK_THAT(time_average_qfi(fs, 1, 1, EncodingChannel::Y, 0.0, kLate).mean,
               WithinAbs(topo.x.mean, 1e-10));
    CHECK_THROWS_AS(axis_asymmetry(flipped, kLate), InvalidArgument);
}

TEST_CASE("Disorder ensembles", "[experiments]") {
    const ChainParams p = chain(60, 1.0, 0.5);
    const TimeWindow w = TimeWindow::with_spacing(100, 130);
    SECTION("fields and determinism") {
        const DisorderSpec spec{0.4, 5, 123};
        const std::vector<double> a = disorder_fields(p, spec, 2);
        CHECK(a == disorder_fields(p, spec, 2));
        CHECK(a != disorder_fields(p, spec, 3));
        CHECK(a != disorder_fields(p, DisorderSpec{0.4, 5, 124}, 2));
        for (double f : a) {
            CHECK(f >= 0.1);
            CHECK(f <= 0.9);
        }
        CHECK_THROWS_AS(disorder_fields(p, DisorderSpec{-1.0, 5, 1}, 0),
                        InvalidArgument);
        CHECK_THROWS_AS(disorder_fields(p, DisorderSpec{0.1, 0, 1}, 0),
                        InvalidArgument);
    }
    SECTION("W = 0 is the clean chain") {
        const EnsembleStats s =
            disorder_ensemble(p, DisorderSpec{0.0, 4, 9}, w, EncodingChannel::Y);
        const double clean = time_average_qfi(p, 1, 1, EncodingChannel::Y, 0.0, w).mean;
        CHECK(s.mean == clean);
        CHECK(s.std == 0.0);
        CHECK(s.n_used == 4);
    }
    SECTION("weak disorder keeps the plateau") {
        const double clean = time_average_qfi(p, 1, 1, EncodingChannel::Y, 0.0, w).mean;
        const EnsembleStats s =
            disorder_ensemble(p, DisorderSpec{0.2, 20, 5}, w, EncodingChannel::Y);
        CHECK_THAT(s.mean, WithinRel(clean, 0.15));
    }
}

TEST_CASE("Wavefront velocity", "[experiments]") {
    SECTION("light-cone speeds") {
        for (const auto &[gamma, v] : {std::pair{0.0, 2.0}, std::pair{1.0, 1.0}}) {
            const ChainParams p = chain(200, gamma, 0.5);
            const std::vector<double> ts = grid(0.0, 0.85 * 199 / v, 0.5);
            const Eigen::MatrixXd map = spacetime_map(p, 1, ts, EncodingChannel::Y);
            const double base = wavefront_velocity(map, ts, 1).velocity;
            CHECK_THAT(base, WithinRel(v, 0.10));
            const double lo = wavefront_velocity(map, ts, 1, 0.01).velocity;
            const double hi = wavefront_velocity(map, ts, 1, 0.1).velocity;
            CHECK_THAT(hi, WithinRel(lo, 0.05));
        }
    }
    SECTION("errors") {
        const double ts[] = {0.0, 0.1, 0.2};
        const Eigen::MatrixXd flat = Eigen::MatrixXd::Zero(50, 3);
        CHECK_THROWS_AS(wavefront_velocity(flat, ts, 1), NumericalError);
        CHECK_THROWS_AS(wavefront_velocity(flat, ts, 1, 1.5), InvalidArgument);
        CHECK_THROWS_AS(wavefront_velocity(flat, ts, 51), InvalidArgument);
        const double two[] = {0.0, 1.0};
        CHECK_THROWS_AS(wavefront_velocity(flat, two, 1), InvalidArgument);
    }
}

TEST_CASE("Finite-size revival", "[experiments]") {
    const auto dips = [](int L, double t_end) {
        const ChainParams p = chain(L, 1.0, 0.6);
        const BdgSpectrum s = build_bdg_spectrum(p);
        const double plateau = plateau_prediction(zero_mode(s), 1, 1);
        const std::vector<double> ts = TimeWindow::with_spacing(0, t_end, 0.5).times();
        const std::vector<double> f = qfi_series(s, 1, 1, EncodingChannel::Y, 0.0, ts);
        return *std::min_element(f.begin(), f.end()) < 0.1 * plateau;
    };
    const double eps0 = zero_mode(build_bdg_spectrum(chain(20, 1.0, 0.6))).eps0;
    CHECK(dips(20, 2 * std::numbers::pi / eps0));
    CHECK_FALSE(dips(100, 200.0));
}
