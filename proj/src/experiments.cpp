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


#include "kqfi/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "kqfi/error.hpp"

namespace kqfi {

namespace {

double qfi_value(const QfiInputs &inp) {
    return inp.theta0 == 0.0 ? std::norm(inp.W) : qfi_closed_form(inp);
}

// values[t][i] = F_Q(j, ks[i]) at times[t].
std::vector<std::vector<double>> qfi_series_many(const BdgSpectrum &spec, int j,
                                                 std::span<const int> ks,
                                                 EncodingChannel channel,
                                                 double theta0,
                                                 std::span<const double> times) {
    check_site(spec.params, j, "readout site");
    for (int k : ks) {
        check_site(spec.params, k, "encoding site");
    }
    std::vector<std::vector<double>> out(times.size(),
                                         std::vector<double>(ks.size()));
    const auto n = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        const PropagatorRow row =
            propagator_row(spec, times[static_cast<std::size_t>(t)], j);
        for (std::size_t i = 0; i < ks.size(); ++i) {
            out[static_cast<std::size_t>(t)][i] =
                qfi_value(qfi_inputs(row, ks[i], channel, theta0));
        }
    }
    return out;
}

const char *failure_text = "";

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

} // namespace

std::vector<double> qfi_series(const BdgSpectrum &spec, int j, int k,
                               EncodingChannel channel, double theta0,
                               std::span<const double> times) {
    const int ks[] = {k};
    const auto many = qfi_series_many(spec, j, ks, channel, theta0, times);
    std::vector<double> out(times.size());
    for (std::size_t t = 0; t < times.size(); ++t) {
        out[t] = many[t][0];
    }
    return out;
}

WindowStats time_average_qfi(const BdgSpectrum &spec, int j, int k,
                             EncodingChannel channel, double theta0,
                             const TimeWindow &window) {
    window.validate();
    const std::vector<double> times = window.times();
    return window_stats(window,
                        qfi_series(spec, j, k, channel, theta0, times));
}

WindowStats time_average_qfi(const ChainParams &params, int j, int k,
                             EncodingChannel channel, double theta0,
                             const TimeWindow &window) {
    return time_average_qfi(build_bdg_spectrum(params), j, k, channel, theta0,
                            window);
}

void echo_window(ScanRecord &record, const TimeWindow &window) {
    record.set("t_min", window.t_min)
        .set("t_max", window.t_max)
        .set("n_samples", std::int64_t{window.n_samples});
}

void echo_chain(ScanRecord &record, const ChainParams &params) {
    record.set("L", std::int64_t{params.L})
        .set("J", params.J)
        .set("gamma", params.gamma)
        .set("h", params.h);
}

SamplingCheck check_sampling(
    const std::function<double(const TimeWindow &)> &mean_of,
    const TimeWindow &window) {
    window.validate();
    SamplingCheck out;
    out.window = window;
    double current = mean_of(window);
    for (;;) {
        const TimeWindow finer = out.window.refined();
        const double next = mean_of(finer);
        out.change = std::abs(next - current);
        if (out.change < kSamplingTolerance) {
            return out;
        }
        if (out.refinements == kMaxRefinements) {
            throw NumericalError(
                "time sampling not converged: doubling the sample count "
                "still moves the mean by " + std::to_string(out.change));
        }
        out.window = finer;
        current = next;
        ++out.refinements;
    }
}

ScanOutput phase_diagram_scan(std::span<const double> hs,
                              std::span<const double> gammas,
                              const ChainParams &base,
                              const TimeWindow &window, bool self_check) {
    KQFI_REQUIRE(!hs.empty() && !gammas.empty(), InvalidArgument,
                 "phase diagram grid is empty");
    window.validate();
    std::vector<ChainParams> grid;
    for (double h : hs) {
        for (double g : gammas) {
            ChainParams p = base;
            p.h = h;
            p.gamma = g;
            p.site_fields.clear();
            grid.push_back(p);
        }
    }
    ScanOutput out;
    out.sampling.window = window;
    if (self_check) {
        const BdgSpectrum probe = build_bdg_spectrum(grid.front());
        out.sampling = check_sampling(
            [&](const TimeWindow &w) {
                return time_average_qfi(probe, 1, 1, EncodingChannel::Y, 0.0,
                                        w)
                    .mean;
            },
            window);
    }
    const TimeWindow used = out.sampling.window;
    out.records.resize(grid.size());
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const ChainParams &p = grid[static_cast<std::size_t>(i)];
        ScanRecord r;
        echo_chain(r, p);
        r.set("j", std::int64_t{1})
            .set("k", std::int64_t{1})
            .set("channel", std::string(to_string(EncodingChannel::Y)))
            .set("theta0", 0.0);
        echo_window(r, used);
        try {
            const BdgSpectrum spec = build_bdg_spectrum(p);
            const WindowStats s =
                time_average_qfi(spec, 1, 1, EncodingChannel::Y, 0.0, used);
            const MajoranaMode mode = zero_mode(spec);
            r.set("mean_qfi", s.mean)
                .set("std_qfi", s.std)
                .set("prediction", plateau_prediction(mode, 1, 1))
                .set("eps0", mode.eps0)
                .set("error", std::string(failure_text));
        } catch (const Error &e) {
            r.set("mean_qfi", nan())
                .set("std_qfi", nan())
                .set("prediction", nan())
                .set("eps0", nan())
                .set("error", std::string(e.what()));
        }
        out.records[static_cast<std::size_t>(i)] = std::move(r);
    }
    return out;
}

Eigen::MatrixXd spacetime_map(const ChainParams &params, int k,
                              std::span<const double> times,
                              EncodingChannel channel, double theta0) {
    check_site(params, k, "encoding site");
    KQFI_REQUIRE(std::is_sorted(times.begin(), times.end()), InvalidArgument,
                 "spacetime_map needs ascending times");
    const BdgSpectrum spec = build_bdg_spectrum(params);
    const int L = params.L;
    Eigen::MatrixXd map(L, static_cast<Eigen::Index>(times.size()));
    const auto n = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        const PropagatorPair pp =
            propagators(spec, times[static_cast<std::size_t>(t)]);
        for (int j = 1; j <= L; ++j) {
            map(j - 1, t) = qfi_value(qfi_inputs(pp, j, k, channel, theta0));
        }
    }
    return map;
}

SiteScan encoding_site_scan(const ChainParams &params, int j,
                            std::span<const int> ks, EncodingChannel channel,
                            const TimeWindow &window, bool self_check) {
    KQFI_REQUIRE(!ks.empty(), InvalidArgument, "site scan needs sites");
    window.validate();
    const BdgSpectrum spec = build_bdg_spectrum(params);
    SiteScan scan;
    scan.output.sampling.window = window;
    if (self_check) {
        scan.output.sampling = check_sampling(
            [&](const TimeWindow &w) {
                return time_average_qfi(spec, j, ks.front(), channel, 0.0, w)
                    .mean;
            },
            window);
    }
    const TimeWindow used = scan.output.sampling.window;
    const std::vector<double> times = used.times();
    const auto values = qfi_series_many(spec, j, ks, channel, 0.0, times);
    std::vector<double> means(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        std::vector<double> f(times.size());
        for (std::size_t t = 0; t < times.size(); ++t) {
            f[t] = values[t][i];
        }
        const WindowStats s = window_stats(used, f);
        means[i] = s.mean;
        ScanRecord r;
        echo_chain(r, params);
        r.set("j", std::int64_t{j})
            .set("k", std::int64_t{ks[i]})
            .set("channel", std::string(to_string(channel)))
            .set("theta0", 0.0);
        echo_window(r, used);
        r.set("mean_qfi", s.mean).set("std_qfi", s.std);
        scan.output.records.push_back(std::move(r));
    }
    scan.floor = *std::min_element(means.begin(), means.end());
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (!(means[i] > kSiteScanContrast * scan.floor) || means[i] <= 0.0) {
            break;
        }
        scan.fit_sites.push_back(ks[i]);
        x.push_back(ks[i]);
        y.push_back(std::log(means[i]));
    }
    if (x.size() >= 2) {
        scan.fit = linear_fit(x, y);
    } else {
        scan.fit.slope = nan();
        scan.fit.intercept = nan();
        scan.fit.residual = nan();
    }
    return scan;
}

AxisAsymmetry axis_asymmetry(const ChainParams &params,
                             const TimeWindow &window) {
    KQFI_REQUIRE(params.gamma > 0.0, InvalidArgument,
                 "axis_asymmetry uses the gamma > 0 convention");
    const BdgSpectrum spec = build_bdg_spectrum(params);
    return {time_average_qfi(spec, 1, 1, EncodingChannel::Y, 0.0, window),
            time_average_qfi(spec, 1, 1, EncodingChannel::X, 0.0, window)};
}

void DisorderSpec::validate() const {
    KQFI_REQUIRE(std::isfinite(W) && W >= 0.0, InvalidArgument,
                 "disorder strength must be finite and >= 0");
    KQFI_REQUIRE(n_realizations >= 1, InvalidArgument,
                 "need at least one disorder realization");
}

std::vector<double> disorder_fields(const ChainParams &params,
                                    const DisorderSpec &spec,
                                    int realization) {
    spec.validate();
    KQFI_REQUIRE(params.uniform(), InvalidArgument,
                 "disorder is drawn around a uniform field");
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed),
                      static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(realization)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> dist(-spec.W, spec.W);
    std::vector<double> fields(static_cast<std::size_t>(params.L));
    for (double &f : fields) {
        f = params.h + (spec.W > 0.0 ? dist(rng) : 0.0);
    }
    return fields;
}

DisorderResult disorder_ensemble(const ChainParams &params,
                                 const DisorderSpec &spec,
                                 const TimeWindow &window,
                                 std::span<const EncodingChannel> channels) {
    spec.validate();
    window.validate();
    KQFI_REQUIRE(!channels.empty(), InvalidArgument,
                 "disorder ensemble needs a channel");
    const auto nr = static_cast<std::size_t>(spec.n_realizations);
    std::vector<std::vector<double>> means(nr,
                                           std::vector<double>(channels.size()));
    std::vector<char> ok(nr, 1);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(nr); ++r) {
        const auto ri = static_cast<std::size_t>(r);
        try {
            ChainParams p = params;
            p.site_fields = disorder_fields(params, spec, static_cast<int>(r));
            const BdgSpectrum bdg = build_bdg_spectrum(p);
            for (std::size_t c = 0; c < channels.size(); ++c) {
                means[ri][c] =
                    time_average_qfi(bdg, 1, 1, channels[c], 0.0, window).mean;
            }
        } catch (const NumericalError &) {
            ok[ri] = 0;
        }
    }
    DisorderResult out;
    for (std::size_t r = 0; r < nr; ++r) {
        if (!ok[r]) {
            out.failed.push_back(static_cast<int>(r));
        }
    }
    if (static_cast<double>(out.failed.size()) > 0.01 * static_cast<double>(nr)) {
        throw NumericalError(std::to_string(out.failed.size()) + " of " +
                             std::to_string(nr) +
                             " disorder realizations failed");
    }
    for (std::size_t c = 0; c < channels.size(); ++c) {
        EnsembleStats s;
        s.channel = channels[c];
        double sum = 0.0;
        for (std::size_t r = 0; r < nr; ++r) {
            if (ok[r]) {
                sum += means[r][c];
                ++s.n_used;
            }
        }
        s.mean = sum / s.n_used;
        double var = 0.0;
        for (std::size_t r = 0; r < nr; ++r) {
            if (ok[r]) {
                var += (means[r][c] - s.mean) * (means[r][c] - s.mean);
            }
        }
        s.std = std::sqrt(var / s.n_used);
        out.channels.push_back(s);
    }
    return out;
}

EnsembleStats disorder_ensemble(const ChainParams &params,
                                const DisorderSpec &spec,
                                const TimeWindow &window,
                                EncodingChannel channel) {
    const EncodingChannel one[] = {channel};
    return disorder_ensemble(params, spec, window, one).channels.front();
}

Wavefront wavefront_velocity(const Eigen::MatrixXd &map,
                             std::span<const double> times, int origin,
                             double threshold) {
    KQFI_REQUIRE(threshold > 0.0 && threshold < 1.0, InvalidArgument,
                 "front threshold must lie in (0, 1)");
    KQFI_REQUIRE(map.cols() == static_cast<Eigen::Index>(times.size()),
                 InvalidArgument, "map and time grid disagree");
    const auto L = static_cast<int>(map.rows());
    KQFI_REQUIRE(origin >= 1 && origin <= L, InvalidArgument,
                 "front origin outside the chain");
    const double lo = 0.1 * (L - 1);
    const double hi = 0.8 * (L - 1);
    Wavefront out;
    std::vector<double> x;
    std::vector<double> y;
    for (Eigen::Index t = 0; t < map.cols(); ++t) {
        double peak = 0.0;
        for (int j = 1; j <= L; ++j) {
            if (j != origin) {
                peak = std::max(peak, map(j - 1, t));
            }
        }
        if (peak <= 0.0) {
            continue;
        }
        int front = origin;
        for (int j = 1; j <= L; ++j) {
            if (j != origin && map(j - 1, t) > threshold * peak &&
                std::abs(j - origin) > std::abs(front - origin)) {
                front = j;
            }
        }
        const double d = std::abs(front - origin);
        if (d >= lo && d <= hi) {
            out.times.push_back(times[static_cast<std::size_t>(t)]);
            out.fronts.push_back(front);
            x.push_back(times[static_cast<std::size_t>(t)]);
            y.push_back(d);
        }
    }
    if (x.size() < 3) {
        throw NumericalError("wavefront not detected in the ballistic range");
    }
    out.fit = linear_fit(x, y);
    out.velocity = out.fit.slope;
    return out;
}

} // namespace kqfi
