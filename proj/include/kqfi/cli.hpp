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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kqfi/records.hpp"

namespace kqfi::cli {

enum class Subcommand {
    PhaseDiagram,
    Spacetime,
    SiteScan,
    Asymmetry,
    Scaling,
    Disorder,
    Interacting,
    Velocity,
    Verify,
};

enum class OutputFormat { Csv, Json };

[[nodiscard]] std::string_view to_string(Subcommand s);
[[nodiscard]] std::string_view to_string(OutputFormat f);
[[nodiscard]] Subcommand parse_subcommand(std::string_view text);
[[nodiscard]] OutputFormat parse_format(std::string_view text);
[[nodiscard]] const std::vector<Subcommand> &all_subcommands();

struct ParamSpec {
    std::string key;
    std::string default_value;
    std::string help;
};

/// Parameters accepted by a subcommand, with their defaults.
[[nodiscard]] const std::vector<ParamSpec> &parameter_specs(Subcommand s);

/// Every parameter key used by any subcommand.
[[nodiscard]] std::vector<std::string> all_parameter_keys();

/**
 * A fully described run.
 *
 * Configuration text is a list of `key = value` lines; `#` starts a comment
 * and blank lines are ignored. The reserved keys `subcommand`, `seed`,
 * `output` and `format` fill the matching fields, every other key goes to
 * `parameters`.
 */
struct RunConfig {
    std::optional<Subcommand> subcommand;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;

    /// Throws InvalidArgument when no subcommand is set or a parameter key is
    /// unknown to it.
    void validate() const;

    /// Explicit value or the subcommand default.
    [[nodiscard]] std::string value(const std::string &key) const;
    /// Every parameter of the subcommand with defaults filled in.
    [[nodiscard]] std::vector<std::pair<std::string, std::string>>
    effective_parameters() const;

    bool operator==(const RunConfig &) const = default;
};

/// Throws InvalidArgument naming `origin` and the line on syntax errors,
/// duplicate keys, and unknown keys. Keys are checked against the
/// subcommand named in the text, or `expected` when the text names none; a
/// text naming a different subcommand than `expected` is rejected. The
/// result carries the subcommand only if the text names one.
[[nodiscard]] RunConfig parse_config(
    std::string_view text, const std::string &origin = "<config>",
    std::optional<Subcommand> expected = std::nullopt);
[[nodiscard]] RunConfig load_config(
    const std::string &path,
    std::optional<Subcommand> expected = std::nullopt);

/// Inverse of parse_config: parse_config(serialize_config(c)) == c.
[[nodiscard]] std::string serialize_config(const RunConfig &config);

/// Apply `key=value` overrides on top of `config` (later entries win).
void apply_overrides(RunConfig &config,
                     const std::vector<std::pair<std::string, std::string>>
                         &overrides);

/// Header block plus records. Metadata values are already formatted.
struct Dataset {
    std::vector<std::pair<std::string, std::string>> metadata;
    ScanRecords records;
};

/// 17 significant digits, '.' decimal point, independent of the locale.
[[nodiscard]] std::string format_number(double value);

/// "# key = value" header lines, one CSV header row, then one row per record.
/// Column order is the field order of the first record; every record must
/// carry the same keys.
void write_csv(std::ostream &out, const Dataset &data);
/// {"metadata": {...}, "records": [{...}, ...]}.
void write_json(std::ostream &out, const Dataset &data);

[[nodiscard]] Dataset build_dataset(const RunConfig &config,
                                    std::ostream &log);

/// Execute the run, write the dataset, and report progress to `log`.
/// Returns 0 on success, 1 on numerical failure or a failed verify gate,
/// 2 on an invalid configuration.
int run(const RunConfig &config, std::ostream &log);

} // namespace kqfi::cli
