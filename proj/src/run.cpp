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


#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>

#include <omp.h>

#include "kqfi/cli.hpp"
#include "kqfi/error.hpp"
#include "kqfi/experiments.hpp"
#include "kqfi/majorana.hpp"
#include "kqfi/manybody.hpp"
#include "kqfi/verify.hpp"

#ifndef KQFI_VERSION
#define KQFI_VERSION "0.0.0"
#endif

namespace kqfi::cli {

namespace {

double to_double(const std::string &key, const std::string &text) {
    double v = 0.0;
    const char *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    KQFI_REQUIRE(res.ec == std::errc{} && res.ptr == end && std::isfinite(v),
                 InvalidArgument,
                 "parameter " + key + ": expected a number, got '" + text +
                     "'");
    return v;
}

int to_int(const std::string &key, const std::string &text) {
    int v = 0;
    const char *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    KQFI_REQUIRE(res.ec == std::errc{} && res.ptr == end, InvalidArgument,
                 "parameter " + key + ": expected an integer, got '" + text +
                     "'");
    return v;
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) {
            return out;
        }
        start = pos + 1;
    }
}

// "a,b,c" or inclusive "start:stop:step".
std::vector<double> to_list(const std::string &key, const std::string &text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        KQFI_REQUIRE(parts.size() == 3, InvalidArgument,
                     "parameter " + key + ": range must be start:stop:step");
        const double a = to_double(key, parts[0]);
        const double b = to_double(key, parts[1]);
        const double s = to_double(key, parts[2]);
        KQFI_REQUIRE(s > 0.0 && b >= a, InvalidArgument,
                     "parameter " + key + ": need step > 0 and stop >= start");
        const auto n = static_cast<long>(std::floor((b - a) / s + 1e-9));
        KQFI_REQUIRE(n < 1000000, InvalidArgument,
                     "parameter " + key + ": range too long");
        for (long i = 0; i <= n; ++i) {
            out.push_back(a + static_cast<double>(i) * s);
        }
        return out;
    }
    for (const std::string &p : split(text, ',')) {
        out.push_back(to_double(key, p));
    }
    return out;
}

bool to_bool(const std::string &key, const std::string &text) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw InvalidArgument("parameter " + key + ": expected true or false");
}

struct Reader {
    const RunConfig &config;

    [[nodiscard]] double num(const std::string &k) const {
        return to_double(k, config.value(k));
    }
    [[nodiscard]] int integer(const std::string &k) const {
        return to_int(k, config.value(k));
    }
    [[nodiscard]] std::vector<double> list(const std::string &k) const {
        return to_list(k, config.value(k));
    }
    [[nodiscard]] bool flag(const std::string &k) const {
        return to_bool(k, config.value(k));
    }
    [[nodiscard]] EncodingChannel channel(const std::string &k) const {
        return parse_channel(config.value(k));
    }
    [[nodiscard]] ChainParams chain() const {
        ChainParams p;
        p.L = integer("L");
        p.J = num("J");
        p.gamma = num("gamma");
        p.h = num("h");
        p.validate();
        return p;
    }
    [[nodiscard]] TimeWindow window() const {
        return TimeWindow::with_spacing(num("t_min"), num("t_max"), num("dt"));
    }
};

std::string iso_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void note_sampling(Dataset &d, const SamplingCheck &s) {
    d.metadata.emplace_back("result.n_samples",
                            std::to_string(s.window.n_samples));
    d.metadata.emplace_back("result.sampling_refinements",
                            std::to_string(s.refinements));
    d.metadata.emplace_back("result.sampling_change", format_number(s.change));
}

void phase_diagram(const Reader &r, Dataset &d, std::ostream &log) {
    ChainParams base;
    base.L = r.integer("L");
    base.J = r.num("J");
    const auto hs = r.list("h_values");
    const auto gs = r.list("gamma_values");
    log << "phase diagram: " << hs.size() << " x " << gs.size()
        << " points at L = " << base.L << '\n';
    ScanOutput out =
        phase_diagram_scan(hs, gs, base, r.window(), r.flag("self_check"));
    note_sampling(d, out.sampling);
    d.records = std::move(out.records);
}

void spacetime(const Reader &r, Dataset &d) {
    const ChainParams p = r.chain();
    const int k = r.integer("k");
    const EncodingChannel ch = r.channel("channel");
    const double theta0 = r.num("theta0");
    const std::vector<double> times = r.window().times();
    const Eigen::MatrixXd map = spacetime_map(p, k, times, ch, theta0);
    for (std::size_t t = 0; t < times.size(); ++t) {
        for (int j = 1; j <= p.L; ++j) {
            ScanRecord rec;
            echo_chain(rec, p);
            rec.set("k", std::int64_t{k})
                .set("channel", std::string(to_string(ch)))
                .set("theta0", theta0)
                .set("j", std::int64_t{j})
                .set("t", times[t])
                .set("qfi", map(j - 1, static_cast<Eigen::Index>(t)));
            d.records.push_back(std::move(rec));
        }
    }
}

void site_scan(const Reader &r, Dataset &d) {
    const ChainParams p = r.chain();
    std::vector<int> ks;
    for (int k = r.integer("k_min"); k <= r.integer("k_max"); ++k) {
        ks.push_back(k);
    }
    const SiteScan scan =
        encoding_site_scan(p, r.integer("j"), ks, r.channel("channel"),
                           r.window(), r.flag("self_check"));
    note_sampling(d, scan.output.sampling);
    d.metadata.emplace_back("result.slope", format_number(scan.fit.slope));
    d.metadata.emplace_back("result.floor", format_number(scan.floor));
    d.metadata.emplace_back("result.fit_points",
                            std::to_string(scan.fit_sites.size()));
    if (p.gamma != -1.0) {
        const Localization loc = localization_length(p);
        d.metadata.emplace_back("result.xi", format_number(loc.xi));
        d.metadata.emplace_back("result.predicted_slope",
                                format_number(-2.0 / loc.xi));
    }
    d.records = scan.output.records;
}

void asymmetry(const Reader &r, Dataset &d) {
    const ChainParams p = r.chain();
    const TimeWindow w = r.window();
    const AxisAsymmetry a = axis_asymmetry(p, w);
    for (const auto &[ch, s] :
         {std::pair{EncodingChannel::Y, a.y}, std::pair{EncodingChannel::X, a.x}}) {
        ScanRecord rec;
        echo_chain(rec, p);
        rec.set("channel", std::string(to_string(ch)));
        echo_window(rec, w);
        rec.set("mean_qfi", s.mean).set("std_qfi", s.std);
        d.records.push_back(std::move(rec));
    }
}

void scaling(const Reader &r, Dataset &d, std::ostream &log) {
    ChainParams p;
    p.L = r.integer("L");
    p.J = r.num("J");
    p.gamma = r.num("gamma");
    const TimeWindow w = r.window();
    std::vector<ScalingPoint> dyn;
    std::vector<ScalingPoint> pred;
    for (double h : r.list("h_values")) {
        p.h = h;
        log << "scaling: h = " << format_number(h) << '\n';
        const BdgSpectrum spec = build_bdg_spectrum(p);
        const WindowStats s =
            time_average_qfi(spec, 1, 1, EncodingChannel::Y, 0.0, w);
        const double plateau = plateau_prediction(zero_mode(spec), 1, 1);
        dyn.push_back({h, s.mean});
        pred.push_back({h, plateau});
        ScanRecord rec;
        echo_chain(rec, p);
        echo_window(rec, w);
        rec.set("mean_qfi", s.mean).set("std_qfi", s.std).set("prediction",
                                                                plateau);
        d.records.push_back(std::move(rec));
    }
    const ScalingFit f = critical_scaling_fit(dyn, p.J);
    const ScalingFit g = critical_scaling_fit(pred, p.J);
    d.metadata.emplace_back("result.exponent", format_number(f.exponent));
    d.metadata.emplace_back("result.amplitude", format_number(f.amplitude));
    d.metadata.emplace_back("result.residual", format_number(f.residual));
    d.metadata.emplace_back("result.prediction_exponent",
                            format_number(g.exponent));
}

void disorder(const Reader &r, Dataset &d, std::ostream &log,
              std::uint64_t seed) {
    const ChainParams p = r.chain();
    const TimeWindow w = r.window();
    std::vector<EncodingChannel> channels;
    for (const std::string &c : split(r.config.value("channels"), ',')) {
        channels.push_back(parse_channel(c));
    }
    const int n = r.integer("realizations");
    for (double W : r.list("W_values")) {
        log << "disorder: W = " << format_number(W) << '\n';
        const DisorderResult res =
            disorder_ensemble(p, DisorderSpec{W, n, seed}, w, channels);
        for (const EnsembleStats &s : res.channels) {
            ScanRecord rec;
            echo_chain(rec, p);
            rec.set("W", W)
                .set("realizations", std::int64_t{n})
                .set("seed", std::to_string(seed))
                .set("channel", std::string(to_string(s.channel)));
            echo_window(rec, w);
            rec.set("mean_qfi", s.mean)
                .set("std_qfi", s.std)
                .set("n_used", std::int64_t{s.n_used})
                .set("n_failed", static_cast<std::int64_t>(res.failed.size()));
            d.records.push_back(std::move(rec));
        }
    }
}

manybody::EvolutionMethod parse_method(const std::string &text) {
    if (text == "auto") {
        return manybody::EvolutionMethod::Auto;
    }
    if (text == "exact") {
        return manybody::EvolutionMethod::Exact;
    }
    if (text == "krylov") {
        return manybody::EvolutionMethod::Krylov;
    }
    throw InvalidArgument("parameter method: expected auto, exact or krylov");
}

void interacting(const Reader &r, Dataset &d) {
    std::vector<int> sizes;
    for (double L : r.list("L_values")) {
        KQFI_REQUIRE(L == std::floor(L), InvalidArgument,
                     "parameter L_values: sizes must be integers");
        sizes.push_back(static_cast<int>(L));
    }
    std::vector<manybody::ManyBodyParams> base;
    for (double g : r.list("gamma_values")) {
        for (double h : r.list("h_values")) {
            for (double delta : r.list("delta_values")) {
                manybody::ManyBodyParams mp;
                mp.chain.L = sizes.front();
                mp.chain.J = r.num("J");
                mp.chain.gamma = g;
                mp.chain.h = h;
                mp.delta = delta;
                base.push_back(mp);
            }
        }
    }
    d.records = manybody::interaction_scan(base, r.window(), sizes,
                                           parse_method(r.config.value("method")));
}

void velocity(const Reader &r, Dataset &d) {
    const ChainParams p = r.chain();
    const int k = r.integer("k");
    const EncodingChannel ch = r.channel("channel");
    const double vmax = max_group_velocity(p);
    const std::string tm = r.config.value("t_max");
    const double t_max = tm == "auto" ? 0.85 * (p.L - 1) / vmax
                                      : to_double("t_max", tm);
    const TimeWindow w = TimeWindow::with_spacing(0.0, t_max, r.num("dt"));
    const std::vector<double> times = w.times();
    const double threshold = r.num("threshold");
    const Wavefront front = wavefront_velocity(
        spacetime_map(p, k, times, ch, 0.0), times, k, threshold);
    ScanRecord rec;
    echo_chain(rec, p);
    rec.set("k", std::int64_t{k})
        .set("channel", std::string(to_string(ch)))
        .set("threshold", threshold)
        .set("t_max", t_max)
        .set("n_samples", std::int64_t{w.n_samples})
        .set("velocity", front.velocity)
        .set("v_max", vmax)
        .set("fit_points", static_cast<std::int64_t>(front.times.size()));
    d.records.push_back(std::move(rec));
}

bool verify(const Reader &r, Dataset &d, std::ostream &log,
            std::uint64_t seed) {
    VerifyOptions opt;
    opt.seed = seed;
    opt.oracle_draws = r.integer("oracle_draws");
    opt.invariant_draws = r.integer("invariant_draws");
    bool all = true;
    for (const GateResult &g : run_verification(opt)) {
        log << (g.passed ? "PASS " : "FAIL ") << g.name << "  checks="
            << g.checks << "  worst=" << format_number(g.worst)
            << "  tol=" << format_number(g.tolerance) << '\n';
        all = all && g.passed;
        ScanRecord rec;
        rec.set("gate", g.name)
            .set("passed", std::int64_t{g.passed ? 1 : 0})
            .set("checks", std::int64_t{g.checks})
            .set("worst", g.worst)
            .set("tolerance", g.tolerance);
        d.records.push_back(std::move(rec));
    }
    return all;
}

bool build(const RunConfig &config, Dataset &d, std::ostream &log) {
    config.validate();
    d.metadata = {{"tool", "kqfi"},
                  {"version", KQFI_VERSION},
                  {"subcommand", std::string(to_string(*config.subcommand))},
                  {"timestamp", iso_timestamp()},
                  {"seed", std::to_string(config.seed)},
                  {"threads", std::to_string(omp_get_max_threads())}};
    for (const auto &[key, value] : config.effective_parameters()) {
        d.metadata.emplace_back("param." + key, value);
    }
    const Reader r{config};
    switch (*config.subcommand) {
    case Subcommand::PhaseDiagram:
        phase_diagram(r, d, log);
        break;
    case Subcommand::Spacetime:
        spacetime(r, d);
        break;
    case Subcommand::SiteScan:
        site_scan(r, d);
        break;
    case Subcommand::Asymmetry:
        asymmetry(r, d);
        break;
    case Subcommand::Scaling:
        scaling(r, d, log);
        break;
    case Subcommand::Disorder:
        disorder(r, d, log, config.seed);
        break;
    case Subcommand::Interacting:
        interacting(r, d);
        break;
    case Subcommand::Velocity:
        velocity(r, d);
        break;
    case Subcommand::Verify:
        return verify(r, d, log, config.seed);
    }
    return true;
}

} // namespace

Dataset build_dataset(const RunConfig &config, std::ostream &log) {
    Dataset d;
    build(config, d, log);
    return d;
}

int run(const RunConfig &config, std::ostream &log) {
    try {
        Dataset d;
        const bool ok = build(config, d, log);
        auto emit = [&](std::ostream &out) {
            if (config.format == OutputFormat::Csv) {
                write_csv(out, d);
            } else {
                write_json(out, d);
            }
        };
        if (config.output_path.empty()) {
            emit(std::cout);
        } else {
            std::ofstream out(config.output_path, std::ios::trunc);
            if (!out) {
                log << "error: cannot write '" << config.output_path << "'\n";
                return 1;
            }
            emit(out);
            log << "wrote " << d.records.size() << " records to "
                << config.output_path << '\n';
        }
        if (!ok) {
            log << "verification failed\n";
            return 1;
        }
        return 0;
    } catch (const InvalidArgument &e) {
        log << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error &e) {
        log << "numerical error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace kqfi::cli
