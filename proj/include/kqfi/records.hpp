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
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kqfi {

/**
 * Uniform time grid t_min, t_min + dt, ..., t_max (endpoints included).
 *
 * Window averages use trapezoidal weights (half weight on the two endpoints),
 * i.e. they estimate (1/T) * integral f(t) dt. With that estimator the mean
 * over [a, b] is exactly the average of the means over [a, c] and [c, b]
 * whenever c is a grid point.
 */
struct TimeWindow {
    double t_min = 0.0;
    double t_max = 1.0;
    int n_samples = 2;

    /// Smallest grid with spacing <= max_spacing.
    [[nodiscard]] static TimeWindow with_spacing(double t_min, double t_max,
                                                 double max_spacing = 0.25);

    void validate() const;
    [[nodiscard]] double spacing() const;
    [[nodiscard]] double time(int i) const;
    [[nodiscard]] std::vector<double> times() const;
    [[nodiscard]] std::vector<double> weights() const;

    /// Same window with 2 n_samples - 1 points (every old point is kept).
    [[nodiscard]] TimeWindow refined() const;
};

struct WindowStats {
    double mean = 0.0;
    double std = 0.0;
};

/// Trapezoid-weighted mean and standard deviation of samples on `window`.
[[nodiscard]] WindowStats window_stats(const TimeWindow &window,
                                       const std::vector<double> &samples);

using RecordValue = std::variant<std::int64_t, double, std::string>;

/// One row of a scan: coordinates first, outputs after, in insertion order.
class ScanRecord {
  public:
    ScanRecord &set(std::string key, RecordValue value);
    [[nodiscard]] const std::vector<std::pair<std::string, RecordValue>> &
    fields() const {
        return fields_;
    }
    [[nodiscard]] bool has(const std::string &key) const;
    [[nodiscard]] const RecordValue &at(const std::string &key) const;
    [[nodiscard]] double number(const std::string &key) const;
    [[nodiscard]] std::string text(const std::string &key) const;

    bool operator==(const ScanRecord &) const = default;

  private:
    std::vector<std::pair<std::string, RecordValue>> fields_;
};

using ScanRecords = std::vector<ScanRecord>;

} // namespace kqfi
