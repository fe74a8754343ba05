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


#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "kqfi/cli.hpp"
#include "kqfi/error.hpp"

namespace kqfi::cli {

namespace {

struct Named {
    Subcommand value;
    std::string_view name;
};

constexpr Named kSubcommands[] = {
    {Subcommand::PhaseDiagram, "phase-diagram"},
    {Subcommand::Spacetime, "spacetime"},
    {Subcommand::SiteScan, "site-scan"},
    {Subcommand::Asymmetry, "asymmetry"},
    {Subcommand::Scaling, "scaling"},
    {Subcommand::Disorder, "disorder"},
    {Subcommand::Interacting, "interacting"},
    {Subcommand::Velocity, "velocity"},
    {Subcommand::Verify, "verify"},
};

std::vector<ParamSpec> with_window(std::vector<ParamSpec> specs,
                                   const char *t_min, const char *t_max,
                                   const char *dt) {
    specs.push_back({"t_min", t_min, "start of the time window (1/J)"});
    specs.push_back({"t_max", t_max, "end of the time window (1/J)"});
    specs.push_back({"dt", dt, "largest sample spacing (1/J)"});
    return specs;
}

std::vector<ParamSpec> chain(const char *L, const char *gamma, const char *h) {
    return {{"L", L, "number of sites"},
            {"J", "1", "hopping energy"},
            {"gamma", gamma, "anisotropy"},
            {"h", h, "transverse field"}};
}

std::vector<ParamSpec> make_specs(Subcommand s) {
    std::vector<ParamSpec> p;
    switch (s) {
    case Subcommand::PhaseDiagram:
        p = {{"L", "100", "number of sites"},
             {"J", "1", "hopping energy"},
             {"h_values", "0:2:0.05", "field grid (list or start:stop:step)"},
             {"gamma_values", "0:1:0.05", "anisotropy grid"},
             {"self_check", "true", "run the sampling self-check"}};
        return with_window(p, "150", "200", "0.25");
    case Subcommand::Spacetime:
        p = chain("100", "0.3", "0.5");
        p.push_back({"k", "1", "encoding site"});
        p.push_back({"channel", "Y", "encoding axis (Y or X)"});
        p.push_back({"theta0", "0", "operating angle (rad)"});
        return with_window(p, "0", "200", "0.5");
    case Subcommand::SiteScan:
        p = chain("100", "1", "0.1");
        p.push_back({"j", "1", "readout site"});
        p.push_back({"k_min", "1", "first encoding site"});
        p.push_back({"k_max", "12", "last encoding site"});
        p.push_back({"channel", "Y", "encoding axis (Y or X)"});
        p.push_back({"self_check", "true", "run the sampling self-check"});
        return with_window(p, "150", "200", "0.25");
    case Subcommand::Asymmetry:
        return with_window(chain("100", "1", "0.1"), "150", "200", "0.25");
    case Subcommand::Scaling:
        p = {{"L", "400", "number of sites"},
             {"J", "1", "hopping energy"},
             {"gamma", "1", "anisotropy"},
             {"h_values", "0.5:0.9:0.1", "field grid"}};
        return with_window(p, "150", "200", "0.25");
    case Subcommand::Disorder:
        p = chain("200", "1", "0.5");
        p.push_back({"W_values", "0,0.2,0.5,1,2,3", "disorder strengths"});
        p.push_back({"realizations", "100", "realizations per strength"});
        p.push_back({"channels", "Y,X", "encoding axes"});
        return with_window(p, "150", "200", "0.25");
    case Subcommand::Interacting:
        p = {{"L_values", "12", "system sizes"},
             {"J", "1", "hopping energy"},
             {"gamma_values", "1", "anisotropies"},
             {"h_values", "0", "fields"},
             {"delta_values", "0:0.8:0.1", "Ising interaction strengths"},
             {"method", "auto", "evolution method (auto, exact, krylov)"}};
        return with_window(p, "25", "50", "0.25");
    case Subcommand::Velocity:
        p = chain("200", "0", "0.5");
        p.push_back({"k", "1", "encoding site"});
        p.push_back({"channel", "Y", "encoding axis (Y or X)"});
        p.push_back({"threshold", "0.02", "relative front threshold"});
        p.push_back({"t_max", "auto",
                     "end of the map; auto = 0.85 (L-1) / v_max"});
        p.push_back({"dt", "0.5", "time step of the map (1/J)"});
        return p;
    case Subcommand::Verify:
        return {{"oracle_draws", "50", "statevector comparisons"},
                {"invariant_draws", "100", "random propagator checks"}};
    }
    return p;
}

std::string trim(std::string_view s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
        ++a;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        --b;
    }
    return std::string(s.substr(a, b - a));
}

bool valid_key(const std::string &key) {
    return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::uint64_t parse_seed(const std::string &text, const std::string &where) {
    std::uint64_t v = 0;
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw InvalidArgument(where + "seed must be a non-negative integer, "
                                      "got '" + text + "'");
    }
    return v;
}

bool is_reserved(const std::string &key) {
    return key == "subcommand" || key == "seed" || key == "output" ||
           key == "format";
}

void set_reserved(RunConfig &c, const std::string &key,
                  const std::string &value, const std::string &where) {
    try {
        if (key == "subcommand") {
            c.subcommand = parse_subcommand(value);
        } else if (key == "seed") {
            c.seed = parse_seed(value, "");
        } else if (key == "output") {
            c.output_path = value;
        } else {
            c.format = parse_format(value);
        }
    } catch (const InvalidArgument &e) {
        throw InvalidArgument(where + e.what());
    }
}

bool known_key(Subcommand s, const std::string &key) {
    const auto &specs = parameter_specs(s);
    return std::any_of(specs.begin(), specs.end(),
                       [&](const ParamSpec &p) { return p.key == key; });
}

} // namespace

std::string_view to_string(Subcommand s) {
    for (const Named &n : kSubcommands) {
        if (n.value == s) {
            return n.name;
        }
    }
    return "?";
}

std::string_view to_string(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "json";
}

Subcommand parse_subcommand(std::string_view text) {
    for (const Named &n : kSubcommands) {
        if (n.name == text) {
            return n.value;
        }
    }
    throw InvalidArgument("unknown subcommand '" + std::string(text) + "'");
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "json") {
        return OutputFormat::Json;
    }
    throw InvalidArgument("unknown output format '" + std::string(text) +
                          "' (expected csv or json)");
}

const std::vector<Subcommand> &all_subcommands() {
    static const std::vector<Subcommand> all = [] {
        std::vector<Subcommand> v;
        for (const Named &n : kSubcommands) {
            v.push_back(n.value);
        }
        return v;
    }();
    return all;
}

const std::vector<ParamSpec> &parameter_specs(Subcommand s) {
    static const std::map<Subcommand, std::vector<ParamSpec>> table = [] {
        std::map<Subcommand, std::vector<ParamSpec>> t;
        for (const Named &n : kSubcommands) {
            t[n.value] = make_specs(n.value);
        }
        return t;
    }();
    return table.at(s);
}

std::vector<std::string> all_parameter_keys() {
    std::set<std::string> keys;
    for (Subcommand s : all_subcommands()) {
        for (const ParamSpec &p : parameter_specs(s)) {
            keys.insert(p.key);
        }
    }
    return {keys.begin(), keys.end()};
}

void RunConfig::validate() const {
    KQFI_REQUIRE(subcommand.has_value(), InvalidArgument,
                 "no subcommand given");
    for (const auto &[key, value] : parameters) {
        KQFI_REQUIRE(known_key(*subcommand, key), InvalidArgument,
                     "unknown key '" + key + "' for subcommand " +
                         std::string(to_string(*subcommand)));
    }
}

std::string RunConfig::value(const std::string &key) const {
    if (auto it = parameters.find(key); it != parameters.end()) {
        return it->second;
    }
    KQFI_REQUIRE(subcommand.has_value(), InvalidArgument,
                 "no subcommand given");
    for (const ParamSpec &p : parameter_specs(*subcommand)) {
        if (p.key == key) {
            return p.default_value;
        }
    }
    throw InvalidArgument("unknown key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>>
RunConfig::effective_parameters() const {
    validate();
    std::vector<std::pair<std::string, std::string>> out;
    for (const ParamSpec &p : parameter_specs(*subcommand)) {
        out.emplace_back(p.key, value(p.key));
    }
    return out;
}

RunConfig parse_config(std::string_view text, const std::string &origin,
                       std::optional<Subcommand> expected) {
    RunConfig c;
    std::map<std::string, int> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string where = origin + ":" + std::to_string(line) + ": ";
        std::string_view body = raw;
        if (auto hash = body.find('#'); hash != std::string_view::npos) {
            body = body.substr(0, hash);
        }
        const std::string stripped = trim(body);
        if (stripped.empty()) {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument(where + "expected key = value");
        }
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value =
            trim(std::string_view(stripped).substr(eq + 1));
        if (!valid_key(key)) {
            throw InvalidArgument(where + "invalid key '" + key + "'");
        }
        if (auto it = seen.find(key); it != seen.end()) {
            throw InvalidArgument(where + "duplicate key '" + key +
                                  "' (first set on line " +
                                  std::to_string(it->second) + ")");
        }
        seen[key] = line;
        if (is_reserved(key)) {
            set_reserved(c, key, value, where);
        } else {
            c.parameters[key] = value;
        }
    }
    if (c.subcommand && expected && *c.subcommand != *expected) {
        throw InvalidArgument(origin + ":" +
                              std::to_string(seen["subcommand"]) +
                              ": file is for subcommand " +
                              std::string(to_string(*c.subcommand)) +
                              ", not " + std::string(to_string(*expected)));
    }
    if (const auto check = c.subcommand ? c.subcommand : expected) {
        for (const auto &[key, value] : c.parameters) {
            if (!known_key(*check, key)) {
                throw InvalidArgument(
                    origin + ":" + std::to_string(seen[key]) +
                    ": unknown key '" + key + "' for subcommand " +
                    std::string(to_string(*check)));
            }
        }
    }
    return c;
}

RunConfig load_config(const std::string &path,
                      std::optional<Subcommand> expected) {
    std::ifstream in(path);
    KQFI_REQUIRE(in.good(), InvalidArgument,
                 "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path, expected);
}

std::string serialize_config(const RunConfig &config) {
    std::ostringstream out;
    if (config.subcommand) {
        out << "subcommand = " << to_string(*config.subcommand) << '\n';
    }
    out << "seed = " << config.seed << '\n';
    out << "format = " << to_string(config.format) << '\n';
    if (!config.output_path.empty()) {
        out << "output = " << config.output_path << '\n';
    }
    for (const auto &[key, value] : config.parameters) {
        out << key << " = " << value << '\n';
    }
    return out.str();
}

void apply_overrides(
    RunConfig &config,
    const std::vector<std::pair<std::string, std::string>> &overrides) {
    for (const auto &[key, value] : overrides) {
        KQFI_REQUIRE(valid_key(key), InvalidArgument,
                     "invalid key '" + key + "'");
        if (is_reserved(key)) {
            set_reserved(config, key, value, "");
        } else {
            config.parameters[key] = value;
        }
    }
}

} // namespace kqfi::cli
