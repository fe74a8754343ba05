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
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kqfi/bdg.hpp"
#include "kqfi/fit.hpp"
#include "kqfi/majorana.hpp"
#include "kqfi/qfi.hpp"
#include "kqfi/records.hpp"

namespace kqfi {

/// QFI at readout site j for encoding site k, one value per time.
[[nodiscard]] std::vector<double> qfi_series(const BdgSpectrum &spec, int j,
                                             int k, EncodingChannel channel,
                                             double theta0,
                                             std::span<const double> times);

/// Window mean and standard deviation of the single-site QFI.
[[nodiscard]] WindowStats time_average_qfi(const ChainParams &params, int j,
                                           int k, EncodingChannel channel,
                                           double theta0,
                                           const TimeWindow &window);
[[nodiscard]] WindowStats time_average_qfi(const BdgSpectrum &spec, int j,
                                           int k, EncodingChannel channel,
                                           double theta0,
                                           const TimeWindow &window);

/// One record field per scan coordinate and output.
void echo_window(ScanRecord &record, const TimeWindow &window);
void echo_chain(ScanRecord &record, const ChainParams &params);

/// Outcome of the sampling self-check: the window is refined (sample count
/// doubled) until the mean of a probe point moves by less than
/// kSamplingTolerance, at most kMaxRefinements times.
struct SamplingCheck {
    TimeWindow window;
    int refinements = 0;
    double change = 0.0;
};

inline constexpr double kSamplingTolerance = 1e-4;
inline constexpr int kMaxRefinements = 3;

/// Throws NumericalError if the tolerance is still missed after the last
/// refinement.
[[nodiscard]] SamplingCheck check_sampling(
    const std::function<double(const TimeWindow &)> &mean_of,
    const TimeWindow &window);

struct ScanOutput {
    ScanRecords records;
    SamplingCheck sampling;
};

/// Boundary QFI (j = k = 1, Y, theta0 = 0) on the grid hs x gammas.
/// Records are ordered with gamma varying fastest. A point that throws gets
/// an "error" field and NaN outputs; the scan continues.
[[nodiscard]] ScanOutput phase_diagram_scan(std::span<const double> hs,
                                            std::span<const double> gammas,
                                            const ChainParams &base,
                                            const TimeWindow &window,
                                            bool self_check = true);

/// L x times.size() array of F_Q at every readout site j (row j-1).
[[nodiscard]] Eigen::MatrixXd spacetime_map(const ChainParams &params, int k,
                                            std::span<const double> times,
                                            EncodingChannel channel,
                                            double theta0 = 0.0);

struct SiteScan {
    ScanOutput output;
    /// Fit of ln(mean) against k over the leading points that sit more than
    /// kSiteScanContrast above the smallest mean of the scan.
    LinearFit fit;
    std::vector<int> fit_sites;
    double floor = 0.0;
};

inline constexpr double kSiteScanContrast = 10.0;

[[nodiscard]] SiteScan encoding_site_scan(const ChainParams &params, int j,
                                          std::span<const int> ks,
                                          EncodingChannel channel,
                                          const TimeWindow &window,
                                          bool self_check = true);

struct AxisAsymmetry {
    WindowStats y;
    WindowStats x;
};

/// Boundary QFI (j = k = 1, theta0 = 0) in both channels. Needs gamma > 0.
[[nodiscard]] AxisAsymmetry axis_asymmetry(const ChainParams &params,
                                           const TimeWindow &window);

struct DisorderSpec {
    double W = 0.0;
    int n_realizations = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Site fields h + dh_j, dh_j uniform on [-W, W]. Realization r draws from
/// its own generator seeded with (seed, r).
[[nodiscard]] std::vector<double> disorder_fields(const ChainParams &params,
                                                  const DisorderSpec &spec,
                                                  int realization);

struct EnsembleStats {
    EncodingChannel channel = EncodingChannel::Y;
    double mean = 0.0;
    double std = 0.0;
    int n_used = 0;
};

struct DisorderResult {
    std::vector<EnsembleStats> channels;
    /// Realizations excluded after a numerical failure.
    std::vector<int> failed;
};

/// Disorder average of the window-averaged boundary QFI (j = k = 1,
/// theta0 = 0). All channels share the same realizations. More than 1% of
/// failed realizations throws NumericalError.
[[nodiscard]] DisorderResult disorder_ensemble(
    const ChainParams &params, const DisorderSpec &spec,
    const TimeWindow &window, std::span<const EncodingChannel> channels);
[[nodiscard]] EnsembleStats disorder_ensemble(const ChainParams &params,
                                              const DisorderSpec &spec,
                                              const TimeWindow &window,
                                              EncodingChannel channel);

struct Wavefront {
    double velocity = 0.0;
    LinearFit fit;
    std::vector<double> times;
    std::vector<int> fronts;
};

inline constexpr double kDefaultFrontThreshold = 0.02;

/**
 * Ballistic front of a space-time map started at site `origin`.
 *
 * At each time the front is the site farthest from `origin` whose QFI is
 * above threshold * (largest QFI at that time, excluding the origin's own
 * column entry). The velocity is the slope of |front - origin| against t,
 * fitted over the times where the displacement lies in
 * [0.1 (L-1), 0.8 (L-1)]. Throws NumericalError when fewer than three times
 * qualify.
 */
[[nodiscard]] Wavefront wavefront_velocity(const Eigen::MatrixXd &map,
                                           std::span<const double> times,
                                           int origin,
                                           double threshold =
                                               kDefaultFrontThreshold);

} // namespace kqfi
