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


#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "kqfi/cli.hpp"
#include "kqfi/error.hpp"

namespace {

// KQFI_THREADS overrides the OpenMP default (machine parallelism).
int configure_threads() {
    const char *env = std::getenv("KQFI_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    char *end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) {
        std::cerr << "error: KQFI_THREADS must be a positive integer, got '"
                  << env << "'\n";
        return 2;
    }
    omp_set_num_threads(static_cast<int>(n));
    return 0;
}

struct SubcommandArgs {
    CLI::App *app = nullptr;
    std::string config_path;
    std::string seed;
    std::string output;
    std::string format;
    std::map<std::string, std::string> values;
};

} // namespace

int main(int argc, char **argv) {
    namespace kc = kqfi::cli;
    if (const int rc = configure_threads(); rc != 0) {
        return rc;
    }
    CLI::App app{"Single-site quantum Fisher information dynamics of the "
                 "open XY / Kitaev chain"};
    // -h would clash with the field option --h.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    std::vector<std::pair<kc::Subcommand, SubcommandArgs>> subs;
    subs.reserve(kc::all_subcommands().size());
    for (kc::Subcommand s : kc::all_subcommands()) {
        subs.emplace_back(s, SubcommandArgs{});
        SubcommandArgs &a = subs.back().second;
        a.app = app.add_subcommand(std::string(kc::to_string(s)));
        a.app->add_option("-c,--config", a.config_path,
                          "key = value configuration file");
        a.app->add_option("--seed", a.seed, "random seed");
        a.app->add_option("-o,--output", a.output,
                          "dataset path (default: stdout)");
        a.app->add_option("--format", a.format, "csv or json");
        for (const kc::ParamSpec &p : kc::parameter_specs(s)) {
            a.app->add_option("--" + p.key, a.values[p.key],
                              p.help + " [" + p.default_value + "]");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    for (auto &[s, a] : subs) {
        if (!a.app->parsed()) {
            continue;
        }
        kc::RunConfig config;
        try {
            if (!a.config_path.empty()) {
                config = kc::load_config(a.config_path, s);
            }
            std::vector<std::pair<std::string, std::string>> overrides;
            overrides.emplace_back("subcommand", std::string(kc::to_string(s)));
            for (const auto &[key, opt] :
                 {std::pair{"seed", &a.seed}, std::pair{"output", &a.output},
                  std::pair{"format", &a.format}}) {
                if (a.app->count(std::string("--") + key) > 0) {
                    overrides.emplace_back(key, *opt);
                }
            }
            for (const auto &[key, value] : a.values) {
                if (a.app->count("--" + key) > 0) {
                    overrides.emplace_back(key, value);
                }
            }
            kc::apply_overrides(config, overrides);
            config.validate();
        } catch (const kqfi::Error &e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
        return kc::run(config, std::cerr);
    }
    return 2;
}
