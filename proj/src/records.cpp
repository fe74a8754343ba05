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

#include "kqfi/records.hpp"

#include <algorithm>
#include <cmath>

#include "kqfi/error.hpp"

namespace kqfi {

TimeWindow TimeWindow::with_spacing(double t_min, double t_max,
                                    double max_spacing) {
    KQFI_REQUIRE(max_spacing > 0.0, InvalidArgument,
                 "time spacing must be positive");
    KQFI_REQUIRE(t_max > t_min, InvalidArgument,
                 "time window needs t_min < t_max");
    const int intervals =
        static_cast<int>(std::ceil((t_max - t_min) / max_spacing - 1e-9));
    return {t_min, t_max, std::max(intervals, 1) + 1};
}

void TimeWindow::validate() const {
    KQFI_REQUIRE(std::isfinite(t_min) && std::isfinite(t_max) && t_min < t_max,
                 InvalidArgument,
                 "time window needs finite t_min < t_max, got [" +
                     std::to_string(t_min) + ", " + std::to_string(t_max) + "]");
    KQFI_REQUIRE(n_samples >= 2, InvalidArgument,
                 "time window needs at least 2 samples");
}

double TimeWindow::spacing() const { return (t_max - t_min) / (n_samples - 1); }

double TimeWindow::time(int i) const {
    if (i == n_samples - 1) {
        return t_max;
    }
    return t_min + (t_max - t_min) * static_cast<double>(i) / (n_samples - 1);
}

std::vector<double> TimeWindow::times() const {
    std::vector<double> out(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        out[static_cast<std::size_t>(i)] = time(i);
    }
    return out;
}

std::vector<double> TimeWindow::weights() const {
    const double inner = 1.0 / (n_samples - 1);
    std::vector<double> w(static_cast<std::size_t>(n_samples), inner);
    w.front() = 0.5 * inner;
    w.back() = 0.5 * inner;
    return w;
}

TimeWindow TimeWindow::refined() const {
    return {t_min, t_max, 2 * n_samples - 1};
}

WindowStats window_stats(const TimeWindow &window,
                         const std::vector<double> &samples) {
    window.validate();
    KQFI_REQUIRE(samples.size() == static_cast<std::size_t>(window.n_samples),
                 InvalidArgument, "sample count does not match time window");
    const std::vector<double> w = window.weights();
    double mean = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        mean += w[i] * samples[i];
    }
    double var = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double d = samples[i] - mean;
        var += w[i] * d * d;
    }
    return {mean, std::sqrt(var)};
}

ScanRecord &ScanRecord::set(std::string key, RecordValue value) {
    for (auto &kv : fields_) {
        if (kv.first == key) {
            kv.second = std::move(value);
            return *this;
        }
    }
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
}

bool ScanRecord::has(const std::string &key) const {
    return std::any_of(fields_.begin(), fields_.end(),
                       [&](const auto &kv) { return kv.first == key; });
}

const RecordValue &ScanRecord::at(const std::string &key) const {
    for (const auto &kv : fields_) {
        if (kv.first == key) {
            return kv.second;
        }
    }
    throw InvalidArgument("record has no field '" + key + "'");
}

double ScanRecord::number(const std::string &key) const {
    const RecordValue &v = at(key);
    if (const auto *d = std::get_if<double>(&v)) {
        return *d;
    }
    if (const auto *i = std::get_if<std::int64_t>(&v)) {
        return static_cast<double>(*i);
    }
    throw InvalidArgument("record field '" + key + "' is not numeric");
}

std::string ScanRecord::text(const std::string &key) const {
    const RecordValue &v = at(key);
    if (const auto *s = std::get_if<std::string>(&v)) {
        return *s;
    }
    throw InvalidArgument("record field '" + key + "' is not text");
}

} // namespace kqfi
